"""Temporal-correlation protocol on a short walk.

Three dichotomic readouts are taken along a four-step walk launched from
site 0: Q1 = +1 at preparation, Q2 = +1 after the first step regardless of
where the walker sits (what matters is that the measurement happens at
all), and Q3 = sign of position after the last step.  The figure of merit

    K = <Q2 Q1> + <Q3 Q2> - <Q3 Q1>

is bounded by 1 for any theory in which the walker follows a definite
trajectory and can be measured without disturbance.  <Q3 Q2> is evaluated
with an intermediate measurement implemented as spin-selective removal:
spin and position are perfectly correlated after the first step, so
removing one spin species and keeping the surviving branch realizes an
interaction-free position readout, and summing the two removal variants
(weighted by their survival probabilities) accounts for every walker.
<Q3 Q1> is evaluated with no intermediate measurement at all, which is
what allows K to exceed 1 for a coherent walker.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .decoherence import NoiseModel, channel_spin_project, evolve_density
from .measurement import PositionDistribution, position_distribution, remove_spin
from .states import DensityOperator, PureState, Spin, from_spinor, new_localized, to_density
from .walk import CoinParams, StepConfig, evolve

__all__ = [
    "MeasurementMode",
    "LGProtocolConfig",
    "LGResult",
    "correlator_c21",
    "run_without_t2",
    "run_with_t2",
    "t2_branches",
    "k_value",
    "theta_scan",
]

_BRANCH_CONSISTENCY_TOL = 1e-12


class MeasurementMode(Enum):
    """How (and whether) the intermediate readout is carried out."""

    NEGATIVE_MEASUREMENT = "negative"
    PROJECTIVE = "projective"
    NONE = "none"


@dataclass(frozen=True)
class LGProtocolConfig:
    """Protocol parameters; defaults reproduce the four-step walk with the
    intermediate readout after the first step."""

    coin: CoinParams
    n_total: int = 4
    t2_after_step: int = 1
    initial_spin: Spin | tuple[complex, complex] = Spin.UP
    mode: MeasurementMode = MeasurementMode.NEGATIVE_MEASUREMENT
    noise: NoiseModel = NoiseModel()

    def __post_init__(self) -> None:
        if not 1 <= self.t2_after_step < self.n_total:
            raise ValueError(
                "t2_after_step must satisfy 1 <= t2_after_step < n_total"
            )

    def initial_state(self, half_width: int) -> PureState:
        if isinstance(self.initial_spin, Spin):
            return new_localized(half_width, 0, self.initial_spin)
        up, down = self.initial_spin
        return from_spinor(half_width, 0, up, down)

    def step_config(self) -> StepConfig:
        return StepConfig(coin=self.coin)

    def half_width(self) -> int:
        return self.n_total + 1


@dataclass(frozen=True)
class LGResult:
    """The three two-time correlators and their combination K."""

    theta: float
    c21: float
    c32: float
    c31: float
    k: float


def _q3_expectation(dist: PositionDistribution) -> float:
    signs = np.where(dist.sites() > 0, 1.0, -1.0)
    return float(np.dot(signs, dist.probs))


def correlator_c21() -> float:
    """Both early readouts are +1 by definition, so <Q2 Q1> = 1 exactly."""
    return 1.0


def run_without_t2(cfg: LGProtocolConfig) -> float:
    """<Q3 Q1>: evolve the full walk with no intermediate measurement."""
    half_width = cfg.half_width()
    psi = cfg.initial_state(half_width)
    if cfg.noise.is_noiseless:
        final = evolve(psi, cfg.step_config(), cfg.n_total)
        return _q3_expectation(position_distribution(final))
    rho = evolve_density(to_density(psi), cfg.step_config(), cfg.noise, cfg.n_total)
    return _q3_expectation(position_distribution(rho))


def t2_branches(cfg: LGProtocolConfig) -> list[tuple[float, float]]:
    """Survival weight and final <Q3> for each removal variant.

    The first entry keeps the spin-up branch (spin-down removed), the
    second the spin-down branch.  Weights sum to 1 for a normalized input.
    """
    half_width = cfg.half_width()
    remaining = cfg.n_total - cfg.t2_after_step
    step_cfg = cfg.step_config()
    branches: list[tuple[float, float]] = []
    if cfg.noise.is_noiseless:
        psi = evolve(cfg.initial_state(half_width), step_cfg, cfg.t2_after_step)
        for kept in (Spin.UP, Spin.DOWN):
            removed = Spin.DOWN if kept is Spin.UP else Spin.UP
            branch, weight = remove_spin(psi, removed)
            if weight <= 1e-300:
                branches.append((0.0, 0.0))
                continue
            renorm = PureState(half_width, branch.amplitudes / np.sqrt(weight))
            final = evolve(renorm, step_cfg, remaining)
            branches.append((weight, _q3_expectation(position_distribution(final))))
        return branches
    rho = evolve_density(
        to_density(cfg.initial_state(half_width)), step_cfg, cfg.noise, cfg.t2_after_step
    )
    n_sites = 2 * half_width + 1
    r4 = rho.matrix.reshape(n_sites, 2, n_sites, 2)
    for kept in (0, 1):
        block = np.zeros_like(r4)
        block[:, kept, :, kept] = r4[:, kept, :, kept]
        projected = block.reshape(rho.dimension, rho.dimension)
        weight = float(np.trace(projected).real)
        if weight <= 1e-300:
            branches.append((0.0, 0.0))
            continue
        normalized = DensityOperator(half_width, projected / weight)
        final = evolve_density(normalized, step_cfg, cfg.noise, remaining)
        branches.append((weight, _q3_expectation(position_distribution(final))))
    return branches


def _dephased_t2_value(cfg: LGProtocolConfig) -> float:
    """<Q3 Q2> computed by dephasing the post-t2 state in the spin basis."""
    half_width = cfg.half_width()
    step_cfg = cfg.step_config()
    rho = to_density(cfg.initial_state(half_width))
    rho = evolve_density(rho, step_cfg, cfg.noise, cfg.t2_after_step)
    rho = channel_spin_project(rho, 1.0)
    rho = evolve_density(rho, step_cfg, cfg.noise, cfg.n_total - cfg.t2_after_step)
    return _q3_expectation(position_distribution(rho))


def run_with_t2(cfg: LGProtocolConfig) -> float:
    """<Q3 Q2>: intermediate measurement per cfg.mode, then the remainder
    of the walk.  Q2 = +1 on every branch, so the correlator is the
    survival-weighted sum of the branch <Q3> values."""
    if cfg.mode is MeasurementMode.NONE:
        return run_without_t2(cfg)
    branch_value = sum(w * e for w, e in t2_branches(cfg))
    if cfg.mode is MeasurementMode.PROJECTIVE:
        dephased = _dephased_t2_value(cfg)
        if abs(dephased - branch_value) > _BRANCH_CONSISTENCY_TOL:
            raise RuntimeError(
                "projective and negative-measurement values diverged: "
                f"{dephased!r} vs {branch_value!r}"
            )
        return dephased
    return branch_value


def k_value(cfg: LGProtocolConfig) -> LGResult:
    """Assemble K = <Q2 Q1> + <Q3 Q2> - <Q3 Q1>."""
    c21 = correlator_c21()
    c32 = run_with_t2(cfg)
    c31 = run_without_t2(cfg)
    return LGResult(
        theta=cfg.coin.theta, c21=c21, c32=c32, c31=c31, k=c21 + c32 - c31
    )


def theta_scan(thetas: list[float], cfg: LGProtocolConfig) -> list[LGResult]:
    """One :func:`k_value` per coin angle, other parameters from cfg."""
    if not thetas:
        raise ValueError("theta list must be nonempty")
    results = []
    for theta in thetas:
        coin = dataclasses.replace(cfg.coin, theta=theta)
        results.append(k_value(dataclasses.replace(cfg, coin=coin)))
    return results
