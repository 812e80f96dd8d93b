import numpy as np
import pytest

from atomwalk.decoherence import NoiseModel
from atomwalk.leggett_garg import (
    LGProtocolConfig,
    MeasurementMode,
    correlator_c21,
    k_value,
    run_with_t2,
    run_without_t2,
    t2_branches,
    theta_scan,
)
from atomwalk.walk import CoinParams

from oracles import lg_path_oracle

HALF_PI = np.pi / 2.0


def config(theta: float, **kwargs) -> LGProtocolConfig:
    return LGProtocolConfig(coin=CoinParams(theta), **kwargs)


def test_early_correlator_is_plus_one():
    assert correlator_c21() == 1.0


def test_run_without_t2_deterministic_angles():
    assert run_without_t2(config(0.0)) == pytest.approx(-1.0, abs=1e-15)
    assert run_without_t2(config(np.pi)) == pytest.approx(-1.0, abs=1e-14)


def test_run_without_t2_matches_path_oracle():
    value = run_without_t2(config(HALF_PI))
    assert value == pytest.approx(lg_path_oracle(HALF_PI)["c31"], abs=1e-12)


def test_run_with_t2_identity_coin():
    assert run_with_t2(config(0.0)) == pytest.approx(-1.0, abs=1e-15)


def test_run_with_t2_matches_branch_oracle():
    value = run_with_t2(config(HALF_PI))
    assert value == pytest.approx(lg_path_oracle(HALF_PI)["c32"], abs=1e-12)


def test_projective_mode_equals_negative_measurement():
    rng = np.random.default_rng(21)
    for theta in rng.uniform(0, 2 * np.pi, size=20):
        negative = run_with_t2(config(theta))
        projective = run_with_t2(config(theta, mode=MeasurementMode.PROJECTIVE))
        assert abs(negative - projective) < 1e-12


def test_mode_none_gives_no_violation():
    rng = np.random.default_rng(22)
    for theta in rng.uniform(0, 2 * np.pi, size=5):
        result = k_value(config(theta, mode=MeasurementMode.NONE))
        assert result.k == pytest.approx(1.0, abs=1e-14)


def test_branch_weights_sum_to_one():
    rng = np.random.default_rng(23)
    for theta in rng.uniform(0, 2 * np.pi, size=10):
        weights = [w for w, _ in t2_branches(config(theta))]
        assert abs(sum(weights) - 1.0) < 1e-12
    spinor_cfg = LGProtocolConfig(
        coin=CoinParams(1.3), initial_spin=(1 / np.sqrt(2), 1j / np.sqrt(2))
    )
    assert abs(sum(w for w, _ in t2_branches(spinor_cfg)) - 1.0) < 1e-12


def test_k_boundary_angles():
    assert k_value(config(0.0)).k == pytest.approx(1.0, abs=1e-12)
    assert k_value(config(np.pi)).k == pytest.approx(1.0, abs=1e-12)


def test_k_violation_at_balanced_coin():
    result = k_value(config(HALF_PI))
    oracle = lg_path_oracle(HALF_PI)
    assert result.k > 1.0
    assert result.k == pytest.approx(oracle["k"], abs=1e-12)
    assert result.c32 == pytest.approx(oracle["c32"], abs=1e-12)
    assert result.c31 == pytest.approx(oracle["c31"], abs=1e-12)


def test_k_assembly_and_correlator_bounds():
    for theta in np.linspace(0.0, 2 * np.pi, 9):
        r = k_value(config(theta))
        assert r.k == r.c21 + r.c32 - r.c31
        assert abs(r.c21) <= 1.0 + 1e-12
        assert abs(r.c32) <= 1.0 + 1e-12
        assert abs(r.c31) <= 1.0 + 1e-12


def test_theta_scan_consistency():
    rows = theta_scan([0.0, np.pi], config(0.0))
    assert rows[0].k == pytest.approx(1.0, abs=1e-12)
    assert rows[1].k == pytest.approx(1.0, abs=1e-12)
    single = theta_scan([HALF_PI], config(0.0))[0]
    assert single.k == k_value(config(HALF_PI)).k


def test_scan_reflection_symmetry():
    rng = np.random.default_rng(24)
    for theta in rng.uniform(0, 2 * np.pi, size=10):
        a = k_value(config(theta)).k
        b = k_value(config(2 * np.pi - theta)).k
        assert abs(a - b) < 1e-12


def test_classical_walker_respects_macrorealist_bound():
    grid = list(np.linspace(0.0, 2 * np.pi, 25))
    rows = theta_scan(grid, config(0.0, noise=NoiseModel(p_spin=1.0)))
    assert max(r.k for r in rows) <= 1.0 + 1e-10


def test_k_is_continuous_in_theta():
    delta = 0.01
    for theta in np.linspace(0.0, 2 * np.pi, 25):
        a = k_value(config(theta)).k
        b = k_value(config(theta + delta)).k
        assert abs(b - a) <= 5.0 * delta


def test_empty_scan_rejected():
    with pytest.raises(ValueError):
        theta_scan([], config(0.0))


def test_t2_placement_validation():
    with pytest.raises(ValueError):
        LGProtocolConfig(coin=CoinParams(0.0), t2_after_step=4, n_total=4)
    with pytest.raises(ValueError):
        LGProtocolConfig(coin=CoinParams(0.0), t2_after_step=0)


def test_noisy_branches_match_pure_when_noiseless_limit():
    # density-path bookkeeping agrees with the wavefunction path at p=0+
    theta = 1.1
    pure = run_with_t2(config(theta))
    noisy = run_with_t2(config(theta, noise=NoiseModel(p_spin=1e-12)))
    assert abs(pure - noisy) < 1e-9
