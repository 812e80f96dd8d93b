import numpy as np
import pytest

from atomwalk.measurement import position_distribution
from atomwalk.states import Spin, basis_index, new_localized
from atomwalk.two_particle import (
    HOM_SHIFT,
    DetectionModel,
    DistinguishabilityModel,
    ObservedCounts,
    TwoBosonState,
    apply_step_both,
    detection_mc,
    hom_ideal,
    hom_probabilities,
    hom_run,
    hom_significance,
    pair_overlap,
    pair_site_probabilities,
    symmetrized_pair,
)
from atomwalk.walk import CoinParams, StepConfig, evolve

HALF_PI = np.pi / 2.0


def hand_built_noon(half_width: int = 2) -> TwoBosonState:
    dim = 2 * (2 * half_width + 1)
    amps = np.zeros((dim, dim), dtype=complex)
    right_up = basis_index(half_width, 1, Spin.UP)
    left_down = basis_index(half_width, -1, Spin.DOWN)
    amps[right_up, right_up] = 1 / np.sqrt(2)
    amps[left_down, left_down] = -1 / np.sqrt(2)
    return TwoBosonState(half_width, amps)


def test_ideal_output_is_the_noon_state():
    out = hom_ideal()
    assert abs(abs(pair_overlap(out, hand_built_noon())) - 1.0) < 1e-12


def test_ideal_output_suppresses_different_sites():
    same, diff = pair_site_probabilities(hom_ideal())
    assert diff < 1e-12
    assert same == pytest.approx(1.0, abs=1e-12)


def test_ideal_output_left_right_split_and_spin_content():
    out = hom_ideal()
    right_up = basis_index(out.half_width, 1, Spin.UP)
    left_down = basis_index(out.half_width, -1, Spin.DOWN)
    p_right = abs(out.amplitudes[right_up, right_up]) ** 2
    p_left = abs(out.amplitudes[left_down, left_down]) ** 2
    assert p_right == pytest.approx(0.5, abs=1e-12)
    assert p_left == pytest.approx(0.5, abs=1e-12)
    # nothing anywhere else: the two bunched components carry everything
    rest = out.norm_squared() - p_right - p_left
    assert abs(rest) < 1e-12


def test_two_boson_state_requires_symmetry():
    amps = np.zeros((10, 10), dtype=complex)
    amps[0, 1] = 1.0
    with pytest.raises(ValueError):
        TwoBosonState(2, amps)


def test_symmetrized_pair_is_normalized():
    rng = np.random.default_rng(31)
    for _ in range(5):
        a = rng.normal(size=10) + 1j * rng.normal(size=10)
        b = rng.normal(size=10) + 1j * rng.normal(size=10)
        from atomwalk.states import PureState

        phi1 = PureState(2, a / np.linalg.norm(a))
        phi2 = PureState(2, b / np.linalg.norm(b))
        pair = symmetrized_pair(phi1, phi2)
        assert abs(pair.norm_squared() - 1.0) < 1e-12


def test_two_boson_step_preserves_norm_and_symmetry():
    pair = symmetrized_pair(
        new_localized(3, 0, Spin.UP), new_localized(3, 0, Spin.DOWN)
    )
    cfg = StepConfig(coin=CoinParams(1.9, 0.4, 1.2), shift=HOM_SHIFT)
    out = apply_step_both(pair, cfg)
    assert abs(out.norm_squared() - 1.0) < 1e-12
    assert np.max(np.abs(out.amplitudes - out.amplitudes.T)) < 1e-12


def test_hom_probabilities_endpoints_and_affinity():
    assert hom_probabilities(DistinguishabilityModel(1.0)) == (1.0, 0.0)
    assert hom_probabilities(DistinguishabilityModel(0.0)) == (0.5, 0.5)
    same, diff = hom_probabilities(DistinguishabilityModel(0.36))
    assert diff == pytest.approx(0.32, abs=1e-15)
    assert same + diff == 1.0
    mid = hom_probabilities(DistinguishabilityModel(0.5))[1]
    lo = hom_probabilities(DistinguishabilityModel(0.25))[1]
    hi = hom_probabilities(DistinguishabilityModel(0.75))[1]
    assert mid == pytest.approx((lo + hi) / 2, abs=1e-15)


def test_overlap_from_ground_state_populations():
    model = DistinguishabilityModel.from_ground_state_populations(0.6, 0.6)
    assert model.overlap == pytest.approx(0.36)


def test_distinguishable_walkers_give_half_probability():
    # Two independent single-particle walks from opposite spins: the
    # different-site probability of the product distribution is exactly 1/2.
    cfg = StepConfig(coin=CoinParams(HALF_PI), shift=HOM_SHIFT)
    p1 = position_distribution(evolve(new_localized(2, 0, Spin.UP), cfg, 1)).probs
    p2 = position_distribution(evolve(new_localized(2, 0, Spin.DOWN), cfg, 1)).probs
    p_same = float(np.dot(p1, p2))
    assert abs((1.0 - p_same) - 0.5) < 1e-12


def test_detection_mc_trivial_cases():
    rng = np.random.default_rng(0)
    no_parity = detection_mc(0.0, DetectionModel(survival=1.0, parity_projection=False), 1000, rng)
    assert no_parity.anti_bunched_seen == 0
    assert no_parity.both_seen == 1000

    all_lost = detection_mc(
        0.0,
        DetectionModel(survival=1.0, parity_projection=True, pair_loss_efficiency=1.0),
        1000,
        np.random.default_rng(1),
    )
    assert all_lost.none_seen == 1000
    assert all_lost.both_seen == 0


def test_detection_mc_matches_closed_form_rate():
    det = DetectionModel(survival=0.91, parity_projection=True, pair_loss_efficiency=1.0)
    n = 100_000
    counts = detection_mc(0.32, det, n, np.random.default_rng(12345))
    rate = 0.32 * 0.91**2
    stderr = np.sqrt(n * rate * (1.0 - rate))
    assert abs(counts.anti_bunched_seen - n * rate) <= 3.0 * stderr


def test_detection_mc_is_reproducible_and_complete():
    det = DetectionModel(survival=0.8, pair_loss_efficiency=0.7)
    a = detection_mc(0.25, det, 5000, np.random.default_rng(7))
    b = detection_mc(0.25, det, 5000, np.random.default_rng(7))
    assert a == b
    assert a.total == 5000


def test_detection_mc_validation():
    with pytest.raises(ValueError):
        detection_mc(1.5, DetectionModel(), 10, np.random.default_rng(0))
    with pytest.raises(ValueError):
        detection_mc(0.5, DetectionModel(), 0, np.random.default_rng(0))
    with pytest.raises(ValueError):
        DetectionModel(survival=1.2)


def test_significance_zero_at_baseline():
    det = DetectionModel(survival=1.0, parity_projection=False)
    counts = ObservedCounts(both_seen=5000, one_seen=0, none_seen=0, anti_bunched_seen=5000)
    assert abs(hom_significance(counts, det)) < 1e-12


def test_significance_ideal_pair_closed_form():
    det = DetectionModel(survival=1.0, parity_projection=False)
    counts = ObservedCounts(both_seen=10_000, one_seen=0, none_seen=0, anti_bunched_seen=0)
    z = hom_significance(counts, det)
    assert abs(z - 100.0) < 1e-9


def test_significance_zero_baseline_rejected():
    det = DetectionModel(survival=0.0)
    counts = ObservedCounts(both_seen=0, one_seen=0, none_seen=100, anti_bunched_seen=0)
    with pytest.raises(ValueError):
        hom_significance(counts, det)


def test_hom_run_outcome_is_consistent():
    outcome = hom_run(
        DistinguishabilityModel(0.36),
        DetectionModel(survival=0.91),
        5000,
        np.random.default_rng(4),
    )
    assert outcome.p_same_site + outcome.p_diff_site == pytest.approx(1.0, abs=1e-12)
    assert outcome.p_diff_site == pytest.approx(0.32)
    assert outcome.counts.total == 5000


def test_partially_distinguishable_pipeline_is_significant():
    det = DetectionModel(survival=0.91, parity_projection=True, pair_loss_efficiency=1.0)
    _, p_diff = hom_probabilities(DistinguishabilityModel(0.36))
    hits = 0
    for seed in range(100):
        counts = detection_mc(p_diff, det, 10_000, np.random.default_rng(seed))
        if hom_significance(counts, det) > 3.0:
            hits += 1
    assert hits >= 95
