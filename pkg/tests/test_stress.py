import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cann.energy import N_PARAMS, CannWeights, energy, energy_derivatives
from cann.errors import DomainError
from cann.kinematics import DeformationMode, deformation_gradient, general_invariants, invariants, mode_invariants
from cann.stress import nominal_stress, p1_terms, predict_curve, stress_weight_gradient
from conftest import central_difference, random_weights, relative_error

NEO = CannWeights(lin_i1=0.25)
BLATZ_KO = CannWeights(lin_i2=0.25)
MODES = list(DeformationMode)
# keeps I1, I2 below ~40, where random exponential weights stay moderate
MAX_STRETCH = {DeformationMode.UT: 5.0, DeformationMode.ET: 2.5, DeformationMode.PS: 5.0}

stretches = st.floats(min_value=1.0, max_value=8.0)
weight_vectors = st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=N_PARAMS, max_size=N_PARAMS)


def cauchy_oracle(weights, mode, lam):
    """Nominal stresses from sigma = -p I + 2 (psi1 + I1 psi2) b - 2 psi2 b^2.

    The pressure follows from the traction-free third direction.
    """
    stretch = np.array(deformation_gradient(mode, lam).as_tuple())
    b = stretch**2
    s = invariants(mode, lam)
    d = energy_derivatives(weights, s.i1, s.i2)
    sigma_dev = 2 * (d.dpsi_di1 + s.i1 * d.dpsi_di2) * b - 2 * d.dpsi_di2 * b**2
    p = sigma_dev[2]
    nominal = (sigma_dev - p) / stretch
    return nominal[0], nominal[1], p


def test_stress_examples():
    assert nominal_stress(NEO, "UT", 2.0).p1 == pytest.approx(0.875, rel=1e-15)
    assert nominal_stress(BLATZ_KO, "PS", 2.0).p1 == pytest.approx(0.9375, rel=1e-15)
    assert nominal_stress(NEO, "UT", 2.0).p2 is None


def test_predict_curve_examples():
    assert predict_curve(NEO, "UT", []) == []
    assert [r.p1 for r in predict_curve(NEO, "UT", [1.0])] == [0.0]
    p = [r.p1 for r in predict_curve(NEO, "UT", [1.0, 2.0, 3.0])]
    assert p == pytest.approx([0.0, 0.875, 0.5 * (3 - 1 / 9)], rel=1e-15)


def test_predict_curve_names_bad_index():
    with pytest.raises(DomainError, match=r"lambdas\[2\]"):
        predict_curve(NEO, "ET", [1.0, 2.0, 0.0])


@pytest.mark.parametrize("mode", MODES)
def test_stresses_match_cauchy_oracle(mode, rng):
    for _ in range(30):
        w = random_weights(rng)
        lam = rng.uniform(1.0, MAX_STRETCH[mode])
        got = nominal_stress(w, mode, lam)
        p1, p2, pressure = cauchy_oracle(w, mode, lam)
        assert got.p1 == pytest.approx(p1, rel=1e-12)
        assert got.pressure == pytest.approx(pressure, rel=1e-12)
        if mode is not DeformationMode.UT:
            assert got.p2 == pytest.approx(p2, rel=1e-12, abs=1e-12)


@settings(max_examples=200)
@given(weight_vectors, st.sampled_from(MODES))
def test_reference_configuration_is_stress_free(values, mode):
    assert abs(nominal_stress(values, mode, 1.0).p1) <= 1e-12


@settings(max_examples=200)
@given(weight_vectors, stretches)
def test_equibiaxial_stresses_are_equal(values, lam):
    r = nominal_stress(values, "ET", lam)
    assert r.p1 == r.p2


@settings(max_examples=100)
@given(weight_vectors, st.sampled_from(MODES))
def test_p1_is_non_decreasing_in_stretch(values, mode):
    grid = np.linspace(1.0, 4.0, 60)
    with np.errstate(over="ignore"):
        p = np.array([r.p1 for r in predict_curve(values, mode, grid)])
    finite = p[np.isfinite(p)]
    assert np.all(np.diff(finite) >= 0.0)


def test_stress_weight_gradient_examples():
    g = stress_weight_gradient(CannWeights(), "UT", 2.0)
    assert g[0] == pytest.approx(3.5)
    w = np.ones(N_PARAMS)
    for mode in MODES:
        assert np.all(stress_weight_gradient(w, mode, 1.0) == 0.0)


@pytest.mark.parametrize("mode", MODES)
def test_stress_weight_gradient_matches_finite_differences(mode, rng):
    for _ in range(40):
        theta = random_weights(rng)
        lam = rng.uniform(1.0, MAX_STRETCH[mode])
        exact = stress_weight_gradient(theta, mode, lam)
        fd = central_difference(lambda t: nominal_stress(t, mode, lam).p1, theta)
        assert relative_error(exact, fd) < 1e-6


@pytest.mark.parametrize("mode", MODES)
def test_term_decomposition_sums_to_p1(mode, rng):
    theta = random_weights(rng)
    lams = np.linspace(1.0, MAX_STRETCH[mode], 9)
    terms = p1_terms(theta, mode, lams)
    assert terms.shape == (8, 9)
    assert terms.sum(axis=0) == pytest.approx([nominal_stress(theta, mode, x).p1 for x in lams], rel=1e-12)


def reduced_energy(weights, l1, l2):
    """Energy as a function of two stretches, the third fixed by incompressibility."""
    g = general_invariants((l1, l2, 1.0 / (l1 * l2)))
    return energy(weights, g.i1, g.i2)


@pytest.mark.parametrize("mode", MODES)
def test_p1_is_energy_slope_along_the_loading_path(mode, rng):
    # with traction-free lateral faces the work per unit stretch is P1,
    # doubled in equibiaxial tension where two faces are loaded
    factor = 2.0 if mode is DeformationMode.ET else 1.0
    h = 1e-6
    for _ in range(20):
        theta = random_weights(rng)
        lam = rng.uniform(1.05, MAX_STRETCH[mode])
        psi = [energy(theta, *mode_invariants(mode, x)[:2]) for x in (lam - h, lam + h)]
        assert nominal_stress(theta, mode, lam).p1 * factor == pytest.approx((psi[1] - psi[0]) / (2 * h), rel=1e-6)


def test_pure_shear_p2_is_energy_slope_across_the_constraint(rng):
    h = 1e-6
    for _ in range(20):
        theta = random_weights(rng)
        lam = rng.uniform(1.05, 5.0)
        slope = (reduced_energy(theta, lam, 1.0 + h) - reduced_energy(theta, lam, 1.0 - h)) / (2 * h)
        assert nominal_stress(theta, "PS", lam).p2 == pytest.approx(slope, rel=1e-6)
