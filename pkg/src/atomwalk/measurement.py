"""Measurement primitives: position statistics, spin-selective removal,
and the sign-of-position readout."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import DensityOperator, PureState, Spin

__all__ = [
    "PositionDistribution",
    "position_distribution",
    "rms_width",
    "remove_spin",
    "q3_value",
    "distribution_csv_body",
]


@dataclass(frozen=True, eq=False)
class PositionDistribution:
    """Probabilities over sites -L..L ascending.

    Sums to 1 for an unconditioned state; for a conditioned branch the sum
    equals the branch survival weight.
    """

    half_width: int
    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.shape != (2 * self.half_width + 1,):
            raise ValueError(
                f"expected {2 * self.half_width + 1} probabilities, got {probs.shape}"
            )
        if probs.min() < -1e-10:
            raise ValueError("probabilities must be nonnegative")
        probs = np.clip(probs, 0.0, None)
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    def sites(self) -> np.ndarray:
        return np.arange(-self.half_width, self.half_width + 1)

    def total(self) -> float:
        return float(self.probs.sum())

    def probability(self, x: int) -> float:
        return float(self.probs[x + self.half_width])


def position_distribution(state: PureState | DensityOperator) -> PositionDistribution:
    """Marginal over spin of the site-resolved probabilities."""
    if isinstance(state, PureState):
        probs = np.sum(np.abs(state.by_site()) ** 2, axis=1)
    elif isinstance(state, DensityOperator):
        diag = np.real(np.diagonal(state.matrix))
        probs = diag.reshape(-1, 2).sum(axis=1)
    else:
        raise TypeError(f"unsupported state type {type(state).__name__}")
    return PositionDistribution(state.half_width, probs)


def rms_width(dist: PositionDistribution) -> float:
    """Root-mean-square width sqrt(<x^2> - <x>^2), in sites."""
    total = dist.total()
    if abs(total - 1.0) > 1e-8:
        raise ValueError(f"distribution must be normalized, sums to {total!r}")
    x = dist.sites().astype(np.float64)
    mean = float(np.dot(dist.probs, x))
    mean_sq = float(np.dot(dist.probs, x * x))
    return float(np.sqrt(max(mean_sq - mean * mean, 0.0)))


def remove_spin(state: PureState, spin: Spin) -> tuple[PureState, float]:
    """Zero all amplitudes with the given spin.

    Returns the unnormalized remainder and its survival probability (the
    remaining squared norm); the caller decides whether to renormalize.
    """
    a = state.by_site().copy()
    a[:, int(spin)] = 0.0
    survival = float(np.sum(np.abs(a) ** 2))
    return PureState(state.half_width, a.reshape(-1)), survival


def q3_value(x: int) -> int:
    """Sign-of-position readout: +1 for x > 0, -1 for x <= 0."""
    return 1 if x > 0 else -1


def distribution_csv_body(dist: PositionDistribution) -> str:
    """Canonical CSV: header ``x,probability``, one row per site ascending,
    probabilities rendered to 12 significant digits."""
    lines = ["x,probability"]
    for x, p in zip(dist.sites(), dist.probs):
        value = 0.0 if p == 0.0 else float(p)
        lines.append(f"{int(x)},{value:.12g}")
    return "\n".join(lines) + "\n"
