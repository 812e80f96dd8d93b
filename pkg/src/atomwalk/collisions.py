"""Two-atom pair-loss model: outcome probabilities, sampling, and
maximum-likelihood recovery of the pair-loss probability.

An event ends with zero, one, or two atoms remaining.  With p the
single-atom background loss probability and c the pair-loss probability
from an inelastic collision, the outcome probabilities are

    p0 = (1-p)^2 c + p^2        (no atom survives)
    p1 = 2 p (1-p)              (one atom survives)
    p2 = (1-p)^2 (1-c)          (both survive)

Note p1 carries no information about c, so the background loss is
identified by the one-survivor fraction alone and c by the split between
the zero- and two-survivor categories.  Confidence intervals come from the
profile likelihood with the chi-square(1) cutoff 3.84 for 95% coverage,
which respects the [0, 1] boundaries where a normal approximation fails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

__all__ = [
    "LossModelParams",
    "CollisionCounts",
    "PcollEstimate",
    "SeriesPoint",
    "outcome_probabilities",
    "sample_counts",
    "estimate_pcoll",
    "loss_vs_time_series",
]

_CHI2_95_CUTOFF = 3.84
_EDGE = 1e-12  # keeps profile evaluations off the exact [0, 1] boundary


def _check_prob(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class LossModelParams:
    """Background single-atom loss probability and pair-loss probability."""

    p: float
    p_coll: float

    def __post_init__(self) -> None:
        _check_prob("p", self.p)
        _check_prob("p_coll", self.p_coll)


@dataclass(frozen=True)
class CollisionCounts:
    """Events that ended with zero, one, or two surviving atoms."""

    n0: int
    n1: int
    n2: int

    def __post_init__(self) -> None:
        if min(self.n0, self.n1, self.n2) < 0:
            raise ValueError("counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.n0 + self.n1 + self.n2


@dataclass(frozen=True)
class PcollEstimate:
    """Point estimates with a 95% profile-likelihood interval for p_coll.

    ``at_boundary`` flags degenerate data (estimates pinned to a boundary
    of the parameter space) rather than raising.
    """

    p_coll: float
    ci_low: float
    ci_high: float
    p: float
    at_boundary: bool


def outcome_probabilities(params: LossModelParams) -> tuple[float, float, float]:
    """(p0, p1, p2) for zero/one/two surviving atoms; sums to 1."""
    p, c = params.p, params.p_coll
    keep = (1.0 - p) ** 2
    return keep * c + p * p, 2.0 * p * (1.0 - p), keep * (1.0 - c)


def sample_counts(
    params: LossModelParams, n_events: int, rng: np.random.Generator
) -> CollisionCounts:
    """Multinomial draw of event outcomes; deterministic per generator state."""
    if n_events <= 0:
        raise ValueError("n_events must be positive")
    n0, n1, n2 = rng.multinomial(n_events, outcome_probabilities(params))
    return CollisionCounts(n0=int(n0), n1=int(n1), n2=int(n2))


def _loglik(counts: CollisionCounts, p: float, c: float) -> float:
    total = 0.0
    for n, prob in zip(
        (counts.n0, counts.n1, counts.n2),
        outcome_probabilities(LossModelParams(p=p, p_coll=c)),
    ):
        if n == 0:
            continue
        if prob <= 0.0:
            return -np.inf
        total += n * np.log(prob)
    return total


def _profile_loglik(counts: CollisionCounts, c: float, p_known: float | None) -> float:
    """Log-likelihood at c, maximized over the background loss if unknown.

    The background loss is searched on [0, 1/2]; the one-survivor fraction
    cannot exceed 1/2 so the smaller root is the physical branch.
    """
    if p_known is not None:
        return _loglik(counts, p_known, c)
    res = optimize.minimize_scalar(
        lambda p: -_loglik(counts, p, c),
        bounds=(0.0, 0.5),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return -float(res.fun)


def _mle(counts: CollisionCounts, p_known: float | None) -> tuple[float, float, bool]:
    """Closed-form joint MLE (p_hat, c_hat, boundary_flag)."""
    total = counts.total
    boundary = False
    if p_known is not None:
        p_hat = p_known
    else:
        f1 = counts.n1 / total
        if f1 >= 0.5:
            p_hat, boundary = 0.5, True
        else:
            p_hat = float(0.5 * (1.0 - np.sqrt(1.0 - 2.0 * f1)))
    keep = (1.0 - p_hat) ** 2
    background = p_hat * p_hat
    n02 = counts.n0 + counts.n2
    if n02 == 0 or keep == 0.0:
        # No event resolves the pair-loss split; report the boundary and a
        # full-width interval downstream.
        return p_hat, 0.0, True
    c_hat = (counts.n0 * keep - counts.n2 * background) / (keep * n02)
    if not 0.0 <= c_hat <= 1.0:
        c_hat, boundary = float(np.clip(c_hat, 0.0, 1.0)), True
    return p_hat, float(c_hat), boundary


def estimate_pcoll(counts: CollisionCounts, p_known: float | None = None) -> PcollEstimate:
    """Maximum-likelihood estimate of the pair-loss probability.

    Parameters
    ----------
    counts : CollisionCounts
        Observed zero/one/two-survivor tallies.
    p_known : float, optional
        Independently measured background loss.  If omitted, the background
        is estimated jointly from the one-survivor fraction (the smaller
        root of 2p(1-p) = n1/total).

    Returns
    -------
    PcollEstimate
        Point estimates, a 95% profile-likelihood interval for the
        pair-loss probability, and a boundary flag for degenerate counts.
    """
    if counts.total <= 0:
        raise ValueError("counts must contain at least one event")
    if p_known is not None:
        _check_prob("p_known", p_known)
    p_hat, c_hat, boundary = _mle(counts, p_known)
    if counts.n0 + counts.n2 == 0 or (1.0 - p_hat) == 0.0:
        return PcollEstimate(
            p_coll=c_hat, ci_low=0.0, ci_high=1.0, p=p_hat, at_boundary=True
        )

    best = _profile_loglik(counts, c_hat, p_known)

    def deviance(c: float) -> float:
        return 2.0 * (best - _profile_loglik(counts, c, p_known))

    def crossing(lo: float, hi: float) -> float:
        return float(
            optimize.brentq(
                lambda c: deviance(c) - _CHI2_95_CUTOFF, lo, hi, xtol=1e-10
            )
        )

    ci_low = 0.0 if deviance(_EDGE) <= _CHI2_95_CUTOFF else crossing(_EDGE, c_hat)
    ci_high = (
        1.0
        if deviance(1.0 - _EDGE) <= _CHI2_95_CUTOFF
        else crossing(c_hat, 1.0 - _EDGE)
    )
    return PcollEstimate(
        p_coll=c_hat, ci_low=ci_low, ci_high=ci_high, p=p_hat, at_boundary=boundary
    )


@dataclass(frozen=True)
class SeriesPoint:
    """One interaction-time point of a loss series."""

    index: int
    true_p_coll: float
    estimate: float
    ci_low: float
    ci_high: float


def loss_vs_time_series(
    p_coll_per_point: list[float],
    p: float,
    n_events: int,
    rng: np.random.Generator,
    p_known: float | None = None,
) -> list[SeriesPoint]:
    """Sample and re-estimate the pair-loss probability point by point."""
    if not p_coll_per_point:
        raise ValueError("series must contain at least one point")
    points = []
    for i, true_c in enumerate(p_coll_per_point):
        counts = sample_counts(LossModelParams(p=p, p_coll=true_c), n_events, rng)
        est = estimate_pcoll(counts, p_known=p_known)
        points.append(
            SeriesPoint(
                index=i,
                true_p_coll=true_c,
                estimate=est.p_coll,
                ci_low=est.ci_low,
                ci_high=est.ci_high,
            )
        )
    return points
