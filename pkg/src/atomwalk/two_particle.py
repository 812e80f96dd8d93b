"""Two-boson interferometer: pair states, anti-bunching statistics, and the
detection Monte Carlo.

A pair of bosons is described by a symmetric amplitude tensor over ordered
single-particle basis pairs, A[a, b] = A[b, a], normalized so the squared
amplitudes over ordered pairs sum to 1.  The ideal sequence starts from two
atoms on one site with opposite spins, applies the balanced coin to each
atom and then the spin-conditioned shift, which interferes the two-particle
paths so both atoms exit on the same side: spin-up pairs to the right,
spin-down pairs to the left.  Events with the two atoms on different sites
are suppressed entirely for indistinguishable atoms.

Partial distinguishability is a two-sector mixture: with probability V
(the overlap) the pair interferes ideally, with probability 1 - V the
atoms behave as independent classical walkers, which exit on different
sides half the time.

Detection is modeled per event: each atom survives the sequence
independently with a given probability, and a surviving same-site pair is
removed during imaging (parity projection) with a given efficiency, so
bunched events hide in the zero-atom category.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import PureState, Spin, new_localized
from .walk import CoinParams, ShiftMap, StepConfig, _step_on

__all__ = [
    "TwoBosonState",
    "DistinguishabilityModel",
    "DetectionModel",
    "ObservedCounts",
    "HomOutcome",
    "HOM_SHIFT",
    "symmetrized_pair",
    "apply_step_both",
    "pair_overlap",
    "pair_site_probabilities",
    "hom_ideal",
    "hom_probabilities",
    "hom_run",
    "detection_mc",
    "hom_significance",
]

# The pair interferometer separates spin-up to the right so the bunched
# output ports read (right, up-up) and (left, down-down).
HOM_SHIFT = ShiftMap(up=+1, down=-1)


@dataclass(frozen=True, eq=False)
class TwoBosonState:
    """Symmetric amplitude tensor over ordered (site, spin) pairs."""

    half_width: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        dim = 2 * (2 * self.half_width + 1)
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (dim, dim):
            raise ValueError(f"expected shape {(dim, dim)}, got {amps.shape}")
        if np.max(np.abs(amps - amps.T)) > 1e-12:
            raise ValueError("two-boson amplitudes must be exchange symmetric")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def symmetrized_pair(phi1: PureState, phi2: PureState) -> TwoBosonState:
    """Normalized symmetrization of a two-atom product state."""
    if phi1.half_width != phi2.half_width:
        raise ValueError("both orbitals must share the same half_width")
    a = np.outer(phi1.amplitudes, phi2.amplitudes)
    sym = (a + a.T) / np.sqrt(2.0)
    overlap = np.vdot(phi1.amplitudes, phi2.amplitudes)
    norm_sq = (
        phi1.norm_squared() * phi2.norm_squared() + np.abs(overlap) ** 2
    )
    return TwoBosonState(phi1.half_width, sym / np.sqrt(norm_sq))


def apply_step_both(state: TwoBosonState, cfg: StepConfig) -> TwoBosonState:
    """Apply one walk step to each atom: A -> U A U^T."""

    def left(x: np.ndarray) -> np.ndarray:
        return _step_on(x.T, state.half_width, cfg).T

    return TwoBosonState(state.half_width, left(left(state.amplitudes).T).T)


def pair_overlap(a: TwoBosonState, b: TwoBosonState) -> complex:
    """Inner product <a|b> over ordered pairs."""
    if a.half_width != b.half_width:
        raise ValueError("half_width mismatch")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def pair_site_probabilities(state: TwoBosonState) -> tuple[float, float]:
    """(same-site, different-site) probabilities of the pair."""
    n = 2 * state.half_width + 1
    site_probs = (
        np.abs(state.amplitudes.reshape(n, 2, n, 2)) ** 2
    ).sum(axis=(1, 3))
    same = float(np.trace(site_probs))
    return same, float(site_probs.sum() - same)


def hom_ideal() -> TwoBosonState:
    """Ideal interferometer output for two indistinguishable atoms.

    Starts from spins up and down on site 0, applies the balanced coin to
    each atom and the spin-conditioned shift; the different-site amplitudes
    cancel and the result is the two-mode entangled superposition
    (|right, up-up> - |left, down-down>) / sqrt(2) up to a global phase.
    """
    half_width = 2
    pair = symmetrized_pair(
        new_localized(half_width, 0, Spin.UP),
        new_localized(half_width, 0, Spin.DOWN),
    )
    cfg = StepConfig(coin=CoinParams(theta=np.pi / 2.0), shift=HOM_SHIFT)
    return apply_step_both(pair, cfg)


@dataclass(frozen=True)
class DistinguishabilityModel:
    """Weight of the indistinguishable sector.

    The overlap may be set directly or derived as the product of the two
    atoms' ground-state populations, treating thermal components as fully
    distinguishable.
    """

    overlap: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.overlap <= 1.0:
            raise ValueError(f"overlap must lie in [0, 1], got {self.overlap}")

    @classmethod
    def from_ground_state_populations(cls, p1: float, p2: float) -> "DistinguishabilityModel":
        return cls(overlap=p1 * p2)


def hom_probabilities(model: DistinguishabilityModel) -> tuple[float, float]:
    """(same-site, different-site) pair probabilities before detection.

    The indistinguishable sector never yields different sites; the
    distinguishable sector does so half the time.
    """
    p_diff = (1.0 - model.overlap) * 0.5
    return 1.0 - p_diff, p_diff


@dataclass(frozen=True)
class DetectionModel:
    """Imaging imperfections applied per event."""

    survival: float = 0.91
    parity_projection: bool = True
    pair_loss_efficiency: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.survival <= 1.0:
            raise ValueError("survival must lie in [0, 1]")
        if not 0.0 <= self.pair_loss_efficiency <= 1.0:
            raise ValueError("pair_loss_efficiency must lie in [0, 1]")


@dataclass(frozen=True)
class ObservedCounts:
    """Disjoint event categories: two atoms on one site, one atom, no
    atom, and two atoms on different sites."""

    both_seen: int
    one_seen: int
    none_seen: int
    anti_bunched_seen: int

    @property
    def total(self) -> int:
        return self.both_seen + self.one_seen + self.none_seen + self.anti_bunched_seen


@dataclass(frozen=True)
class HomOutcome:
    """Physical pair probabilities plus what the camera recorded."""

    p_same_site: float
    p_diff_site: float
    counts: ObservedCounts


def hom_run(
    model: DistinguishabilityModel,
    det: DetectionModel,
    n_events: int,
    rng: np.random.Generator,
) -> HomOutcome:
    """Full pipeline: mixture probabilities, then the detection Monte Carlo."""
    p_same, p_diff = hom_probabilities(model)
    counts = detection_mc(p_diff, det, n_events, rng)
    return HomOutcome(p_same_site=p_same, p_diff_site=p_diff, counts=counts)


def detection_mc(
    p_diff: float,
    det: DetectionModel,
    n_events: int,
    rng: np.random.Generator,
) -> ObservedCounts:
    """Simulate n_events detection attempts.

    Per event: the pair is anti-bunched with probability p_diff; each atom
    survives independently; a surviving bunched pair is lost to parity
    projection with the configured efficiency and lands in the zero-atom
    category.  Deterministic for a given generator state.
    """
    if n_events <= 0:
        raise ValueError("n_events must be positive")
    if not 0.0 <= p_diff <= 1.0:
        raise ValueError("p_diff must lie in [0, 1]")
    anti = rng.random(n_events) < p_diff
    alive1 = rng.random(n_events) < det.survival
    alive2 = rng.random(n_events) < det.survival
    pair_alive = alive1 & alive2
    bunched_alive = pair_alive & ~anti
    if det.parity_projection and det.pair_loss_efficiency > 0.0:
        lost = bunched_alive & (rng.random(n_events) < det.pair_loss_efficiency)
    else:
        lost = np.zeros(n_events, dtype=bool)
    one_alive = alive1 ^ alive2
    none_alive = ~alive1 & ~alive2
    return ObservedCounts(
        both_seen=int(np.sum(bunched_alive & ~lost)),
        one_seen=int(np.sum(one_alive)),
        none_seen=int(np.sum(none_alive) + np.sum(lost)),
        anti_bunched_seen=int(np.sum(anti & pair_alive)),
    )


def hom_significance(observed: ObservedCounts, det: DetectionModel) -> float:
    """Suppression significance against the fully distinguishable baseline.

    The baseline expects anti-bunched detections at rate survival^2 / 2;
    the z-score is the deficit of observed anti-bunched events in units of
    the baseline's binomial standard error.
    """
    n = observed.total
    p_baseline = 0.5 * det.survival**2
    stderr = np.sqrt(n * p_baseline * (1.0 - p_baseline))
    if n == 0 or p_baseline == 0.0 or stderr == 0.0:
        raise ValueError("baseline expectation is degenerate (zero or certain)")
    expected = n * p_baseline
    return float((expected - observed.anti_bunched_seen) / stderr)
