"""Open-system evolution: projection channels and stochastic trajectories.

Decoherence is modeled by two phenomenological channels applied once per
step, each a convex mixture of the identity and a full projective
measurement:

* spin-coupled: rho -> (1-p) rho + p * sum_s P_s rho P_s, where P_s
  projects onto spin s at every site (kills spin coherences);
* position-coupled: rho -> (1-p) rho + p * sum_x P_x rho P_x, where P_x
  projects onto site x (kills which-path coherences).

Both are trace preserving and completely positive; the Kraus families are
exposed so the closed forms can be checked against sum_k K rho K^dagger.
The per-step order is fixed: unitary step, spin channel, position channel.

:func:`evolve_trajectory` is the Monte Carlo unraveling: per step, with
probability p the corresponding projective measurement is actually carried
out on the wavefunction (Born-rule branch choice) followed by
renormalization.  Trajectory streams derive deterministically from a
master seed and the trajectory index, so ensembles are reproducible
regardless of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import DensityOperator, PureState
from .walk import StepConfig, _step_on

__all__ = [
    "NoiseModel",
    "channel_spin_project",
    "channel_pos_project",
    "spin_projection_kraus",
    "position_projection_kraus",
    "evolve_density",
    "evolve_trajectory",
    "trajectory_rng",
]


def _check_prob(name: str, p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")


@dataclass(frozen=True)
class NoiseModel:
    """Per-step probabilities of the two decoherence classes."""

    p_spin: float = 0.0
    p_pos: float = 0.0

    def __post_init__(self) -> None:
        _check_prob("p_spin", self.p_spin)
        _check_prob("p_pos", self.p_pos)

    @property
    def is_noiseless(self) -> bool:
        return self.p_spin == 0.0 and self.p_pos == 0.0


def channel_spin_project(rho: DensityOperator, p: float) -> DensityOperator:
    """Scale every spin-off-diagonal element by (1 - p)."""
    _check_prob("p", p)
    n = 2 * rho.half_width + 1
    r4 = rho.matrix.reshape(n, 2, n, 2).copy()
    r4[:, 0, :, 1] *= 1.0 - p
    r4[:, 1, :, 0] *= 1.0 - p
    return DensityOperator(rho.half_width, r4.reshape(rho.dimension, rho.dimension))


def channel_pos_project(rho: DensityOperator, p: float) -> DensityOperator:
    """Scale every site-off-diagonal element by (1 - p)."""
    _check_prob("p", p)
    n = 2 * rho.half_width + 1
    r4 = rho.matrix.reshape(n, 2, n, 2)
    out = (1.0 - p) * r4
    idx = np.arange(n)
    out[idx, :, idx, :] = r4[idx, :, idx, :]
    return DensityOperator(rho.half_width, out.reshape(rho.dimension, rho.dimension))


def spin_projection_kraus(half_width: int, p: float) -> list[np.ndarray]:
    """Kraus family {sqrt(1-p) I, sqrt(p) P_up, sqrt(p) P_down}."""
    _check_prob("p", p)
    dim = 2 * (2 * half_width + 1)
    eye = np.eye(dim, dtype=np.complex128)
    ops = [np.sqrt(1.0 - p) * eye]
    for s in (0, 1):
        proj = np.zeros((dim, dim), dtype=np.complex128)
        proj[s::2, s::2] = np.eye(2 * half_width + 1)
        ops.append(np.sqrt(p) * proj)
    return ops


def position_projection_kraus(half_width: int, p: float) -> list[np.ndarray]:
    """Kraus family {sqrt(1-p) I} + {sqrt(p) P_x for every site x}."""
    _check_prob("p", p)
    n = 2 * half_width + 1
    dim = 2 * n
    eye = np.eye(dim, dtype=np.complex128)
    ops = [np.sqrt(1.0 - p) * eye]
    for i in range(n):
        proj = np.zeros((dim, dim), dtype=np.complex128)
        proj[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = np.eye(2)
        ops.append(np.sqrt(p) * proj)
    return ops


def _conjugate_by_step(mat: np.ndarray, half_width: int, cfg: StepConfig) -> np.ndarray:
    # U @ X is computed by running the step primitive over the columns of X.
    def left(x: np.ndarray) -> np.ndarray:
        return _step_on(x.T, half_width, cfg).T

    return left(left(mat).conj().T).conj().T


def evolve_density(
    rho: DensityOperator, cfg: StepConfig, noise: NoiseModel, n: int
) -> DensityOperator:
    """n repetitions of (unitary step, spin channel, position channel)."""
    if n < 0:
        raise ValueError("step count must be nonnegative")
    out = rho
    for _ in range(n):
        out = DensityOperator(
            rho.half_width, _conjugate_by_step(out.matrix, rho.half_width, cfg)
        )
        if noise.p_spin > 0.0:
            out = channel_spin_project(out, noise.p_spin)
        if noise.p_pos > 0.0:
            out = channel_pos_project(out, noise.p_pos)
    return out


def trajectory_rng(master_seed: int, index: int) -> np.random.Generator:
    """Independent generator for one trajectory, fixed by (seed, index)."""
    return np.random.default_rng(np.random.SeedSequence([master_seed, index]))


def _project_spin(amps: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    a = amps.reshape(-1, 2)
    weights = np.sum(np.abs(a) ** 2, axis=0)
    total = weights.sum()
    keep = 0 if rng.random() * total < weights[0] else 1
    out = np.zeros_like(a)
    out[:, keep] = a[:, keep]
    return (out / np.sqrt(weights[keep])).reshape(amps.shape)


def _project_position(amps: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    a = amps.reshape(-1, 2)
    weights = np.sum(np.abs(a) ** 2, axis=1)
    cum = np.cumsum(weights)
    site = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
    site = min(site, len(weights) - 1)
    out = np.zeros_like(a)
    out[site, :] = a[site, :]
    return (out / np.sqrt(weights[site])).reshape(amps.shape)


def evolve_trajectory(
    psi: PureState,
    cfg: StepConfig,
    noise: NoiseModel,
    n: int,
    rng: np.random.Generator,
) -> PureState:
    """One stochastic unraveling of :func:`evolve_density`.

    With zero noise no random numbers are drawn and the result is identical
    to the unitary evolution.
    """
    if n < 0:
        raise ValueError("step count must be nonnegative")
    amps = psi.amplitudes
    for _ in range(n):
        amps = _step_on(amps, psi.half_width, cfg)
        if noise.p_spin > 0.0 and rng.random() < noise.p_spin:
            amps = _project_spin(amps, rng)
        if noise.p_pos > 0.0 and rng.random() < noise.p_pos:
            amps = _project_position(amps, rng)
    return PureState(psi.half_width, amps)
