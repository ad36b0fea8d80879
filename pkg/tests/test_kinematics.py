import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cann.errors import DomainError
from cann.kinematics import (
    DeformationMode,
    DiagonalDeformation,
    deformation_gradient,
    general_invariants,
    invariants,
    mode_invariants,
)

stretches = st.floats(min_value=0.05, max_value=20.0, allow_nan=False)
moderate = st.floats(min_value=0.1, max_value=10.0)
modes = st.sampled_from(list(DeformationMode))


@pytest.mark.parametrize(
    "mode, lam, expected",
    [("UT", 1.0, (1, 1, 1)), ("UT", 4.0, (4, 0.5, 0.5)), ("PS", 2.0, (2, 1, 0.5)), ("ET", 2.0, (2, 2, 0.25))],
)
def test_deformation_gradient_diagonals(mode, lam, expected):
    f = deformation_gradient(mode, lam)
    assert f.as_tuple() == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("lam", [0.0, -1.0, math.inf, math.nan])
def test_bad_stretch_is_rejected(lam):
    with pytest.raises(DomainError):
        deformation_gradient("UT", lam)
    with pytest.raises(DomainError):
        invariants("ET", lam)


def test_mode_names_are_parsed_case_insensitively():
    assert DeformationMode.parse("ut") is DeformationMode.UT
    assert DeformationMode.parse(DeformationMode.PS) is DeformationMode.PS
    with pytest.raises(DomainError):
        DeformationMode.parse("shear")


def test_invariant_values():
    s = invariants("UT", 1.0)
    assert (s.i1, s.i2) == (3.0, 3.0)
    s = invariants("UT", 2.0)
    assert s.i1 == 5.0 and s.i2 == 4.25
    s = invariants("PS", 3.0)
    assert s.i1 == s.i2 == pytest.approx(9 + 1 + 1 / 9, abs=1e-14)


@given(modes, stretches)
def test_stretch_derivatives_match_finite_differences(mode, lam):
    h = 1e-6 * lam
    s = invariants(mode, lam)
    lo, hi = mode_invariants(mode, lam - h), mode_invariants(mode, lam + h)
    for exact, a, b in ((s.di1_dlambda, lo[0], hi[0]), (s.di2_dlambda, lo[1], hi[1])):
        fd = (b - a) / (2 * h)
        assert exact == pytest.approx(fd, rel=1e-6, abs=1e-6)


@given(modes, stretches)
def test_modes_are_incompressible_and_match_general_invariants(mode, lam):
    f = deformation_gradient(mode, lam)
    g = general_invariants(f)
    s = invariants(mode, lam)
    assert g.jdet == pytest.approx(1.0, abs=1e-12)
    assert g.i1 == pytest.approx(s.i1, rel=1e-12)
    assert g.i2 == pytest.approx(s.i2, rel=1e-12)


@given(stretches)
def test_pure_shear_has_equal_invariants(lam):
    i1, i2, _, _ = mode_invariants("PS", lam)
    assert i1 == i2


def test_general_invariants_identity_and_fiber():
    g = general_invariants((1.0, 1.0, 1.0))
    assert (g.i1, g.i2, g.jdet) == (3.0, 3.0, 1.0)
    assert g.i4 is None
    g = general_invariants((2.0, 1.0, 0.5), fiber_direction=(1.0, 0.0, 0.0))
    assert g.i4 == pytest.approx(4.0)


def test_general_invariants_of_dilation():
    g = general_invariants((2.0, 2.0, 2.0))
    assert g.i3 == pytest.approx(64.0)
    assert g.jdet == pytest.approx(8.0)
    assert g.ibar1 == pytest.approx(3.0, abs=1e-12)
    assert g.ibar2 == pytest.approx(3.0, abs=1e-12)


@given(moderate, moderate, moderate, st.floats(min_value=0.1, max_value=10.0))
def test_isochoric_invariants_ignore_dilation(a, b, c, scale):
    g = general_invariants((a, b, c))
    h = general_invariants((scale * a, scale * b, scale * c))
    assert h.ibar1 == pytest.approx(g.ibar1, rel=1e-12)
    assert h.ibar2 == pytest.approx(g.ibar2, rel=1e-12)


def test_fiber_must_be_unit_length():
    with pytest.raises(DomainError):
        general_invariants((1.0, 1.0, 1.0), fiber_direction=(1.0, 1.0, 0.0))


def test_diagonal_deformation_rejects_non_positive():
    with pytest.raises(DomainError):
        DiagonalDeformation(1.0, 0.0, 1.0)


def test_vectorized_invariants_match_scalar():
    lam = np.linspace(0.5, 8.0, 11)
    i1, i2, _, _ = mode_invariants("ET", lam)
    for k, x in enumerate(lam):
        s = invariants("ET", x)
        assert (i1[k], i2[k]) == (s.i1, s.i2)
