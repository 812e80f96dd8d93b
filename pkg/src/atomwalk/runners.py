"""Experiment drivers: one function per command, shared by the HTTP
service and the CLI so both produce identical results for identical
requests."""

from __future__ import annotations

import numpy as np

from . import __version__
from .collisions import loss_vs_time_series
from .decoherence import NoiseModel, evolve_density, evolve_trajectory, trajectory_rng
from .leggett_garg import LGProtocolConfig, MeasurementMode, theta_scan
from .measurement import PositionDistribution, position_distribution, rms_width
from .states import PureState, Spin, new_localized, to_density
from .two_particle import (
    DetectionModel,
    DistinguishabilityModel,
    hom_run,
    hom_significance,
)
from .walk import CoinParams, StepConfig, evolve
from .schemas import (
    CollideRequest,
    CollideResponse,
    CollideRow,
    DistributionRow,
    ElectricRequest,
    ElectricResponse,
    HomCounts,
    HomRequest,
    HomResponse,
    LGRequest,
    LGResponse,
    LGRow,
    WalkRequest,
    WalkResponse,
    WidthRow,
    WidthScanRequest,
    WidthScanResponse,
)

__all__ = [
    "run_walk",
    "run_widthscan",
    "run_electric",
    "run_lg",
    "run_hom",
    "run_collide",
    "trajectory_histogram",
]

_LG_MODES = {
    "negative": MeasurementMode.NEGATIVE_MEASUREMENT,
    "projective": MeasurementMode.PROJECTIVE,
    "none": MeasurementMode.NONE,
}


def _auto_half_width(steps: int, override: int | None) -> int:
    return override if override is not None else max(steps + 1, 1)


def _distribution_rows(dist: PositionDistribution) -> list[DistributionRow]:
    return [
        DistributionRow(x=int(x), probability=float(p))
        for x, p in zip(dist.sites(), dist.probs)
    ]


def trajectory_histogram(
    psi0: PureState,
    cfg: StepConfig,
    noise: NoiseModel,
    steps: int,
    n_trajectories: int,
    seed: int,
) -> PositionDistribution:
    """Mean trajectory position distribution, one RNG stream per index."""
    acc = np.zeros(2 * psi0.half_width + 1)
    for i in range(n_trajectories):
        final = evolve_trajectory(psi0, cfg, noise, steps, trajectory_rng(seed, i))
        acc += np.sum(np.abs(final.by_site()) ** 2, axis=1)
    return PositionDistribution(psi0.half_width, acc / n_trajectories)


def run_walk(req: WalkRequest) -> WalkResponse:
    half_width = _auto_half_width(req.steps, req.half_width)
    cfg = StepConfig(coin=CoinParams(req.theta, req.alpha, req.beta))
    noise = NoiseModel(p_spin=req.p_spin, p_pos=req.p_pos)
    psi0 = new_localized(half_width, 0, Spin.UP)
    if req.trajectories is not None:
        dist = trajectory_histogram(
            psi0, cfg, noise, req.steps, req.trajectories, req.seed
        )
    else:
        rho = evolve_density(to_density(psi0), cfg, noise, req.steps)
        dist = position_distribution(rho)
    return WalkResponse(
        version=__version__,
        command="walk",
        config=req,
        distribution=_distribution_rows(dist),
        rms_width=rms_width(dist),
    )


def run_widthscan(req: WidthScanRequest) -> WidthScanResponse:
    half_width = req.max_steps + 1
    cfg = StepConfig(coin=CoinParams(req.theta))
    noise = NoiseModel(p_spin=req.p_spin)
    rho = to_density(new_localized(half_width, 0, Spin.UP))
    rows = [WidthRow(n=0, rms=rms_width(position_distribution(rho)))]
    for n in range(1, req.max_steps + 1):
        rho = evolve_density(rho, cfg, noise, 1)
        rows.append(WidthRow(n=n, rms=rms_width(position_distribution(rho))))
    return WidthScanResponse(
        version=__version__, command="widthscan", config=req, rows=rows
    )


def run_electric(req: ElectricRequest) -> ElectricResponse:
    half_width = _auto_half_width(req.steps, req.half_width)
    cfg = StepConfig(coin=CoinParams(req.theta), electric_phase=req.phi)
    final = evolve(new_localized(half_width, 0, Spin.UP), cfg, req.steps)
    dist = position_distribution(final)
    return ElectricResponse(
        version=__version__,
        command="electric",
        config=req,
        distribution=_distribution_rows(dist),
        rms_width=rms_width(dist),
    )


def run_lg(req: LGRequest) -> LGResponse:
    cfg = LGProtocolConfig(
        coin=CoinParams(theta=0.0),
        mode=_LG_MODES[req.mode],
        noise=NoiseModel(p_spin=req.p_spin, p_pos=req.p_pos),
    )
    rows = [
        LGRow(theta=r.theta, c21=r.c21, c32=r.c32, c31=r.c31, k=r.k)
        for r in theta_scan(req.thetas, cfg)
    ]
    return LGResponse(version=__version__, command="lg", config=req, rows=rows)


def run_hom(req: HomRequest) -> HomResponse:
    det = DetectionModel(
        survival=req.survival,
        parity_projection=True,
        pair_loss_efficiency=req.parity_eff,
    )
    outcome = hom_run(
        DistinguishabilityModel(overlap=req.overlap),
        det,
        req.events,
        np.random.default_rng(req.seed),
    )
    return HomResponse(
        version=__version__,
        command="hom",
        config=req,
        p_same_site=outcome.p_same_site,
        p_diff_site=outcome.p_diff_site,
        counts=HomCounts(
            both_seen=outcome.counts.both_seen,
            one_seen=outcome.counts.one_seen,
            none_seen=outcome.counts.none_seen,
            anti_bunched_seen=outcome.counts.anti_bunched_seen,
        ),
        z_score=hom_significance(outcome.counts, det),
    )


def run_collide(req: CollideRequest) -> CollideResponse:
    points = loss_vs_time_series(
        req.pcoll,
        req.p,
        req.events,
        np.random.default_rng(req.seed),
        p_known=req.p_known,
    )
    rows = [
        CollideRow(
            point=pt.index,
            true_pcoll=pt.true_p_coll,
            estimate=pt.estimate,
            ci_low=pt.ci_low,
            ci_high=pt.ci_high,
        )
        for pt in points
    ]
    return CollideResponse(version=__version__, command="collide", config=req, rows=rows)
