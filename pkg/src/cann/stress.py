"""Nominal (first Piola) stresses for the three incompressible test modes.

The lateral stresses vanish, which fixes the hydrostatic pressure; the
remaining nominal stress along the loading axis is linear in the energy
derivatives::

    P1 = g1(lam) * dpsi/dI1 + g2(lam) * dpsi/dI2
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import energy as _energy
from .errors import DomainError
from .kinematics import DeformationMode, _check_stretch, mode_invariants


@dataclass(frozen=True)
class StressResult:
    p1: float
    p2: float | None
    pressure: float


def stress_coefficients(mode: DeformationMode | str, lam):
    """Factors ``(g1, g2)`` multiplying ``dpsi/dI1`` and ``dpsi/dI2`` in P1."""
    mode = DeformationMode.parse(mode)
    lam = np.asarray(lam, dtype=float)
    if mode is DeformationMode.UT:
        s = 2.0 * (lam - 1.0 / lam**2)
        return s, s / lam
    if mode is DeformationMode.ET:
        s = 2.0 * (lam - 1.0 / lam**5)
        return s, lam**2 * s
    s = 2.0 * (lam - 1.0 / lam**3)
    return s, s


def nominal_stress(weights, mode: DeformationMode | str, lam: float) -> StressResult:
    """Nominal stresses and pressure at stretch ``lam``.

    ``p2`` is populated for equibiaxial tension (where it equals ``p1``) and
    pure shear; it is ``None`` for uniaxial tension.
    """
    mode = DeformationMode.parse(mode)
    _check_stretch(lam)
    lam = float(lam)
    i1, i2, _, _ = mode_invariants(mode, lam)
    d = _energy.energy_derivatives(weights, i1, i2)
    d1, d2 = d.dpsi_di1, d.dpsi_di2
    g1, g2 = stress_coefficients(mode, lam)
    p1 = float(g1 * d1 + g2 * d2)

    if mode is DeformationMode.UT:
        p2 = None
        pressure = (2.0 / lam) * d1 + 2.0 * (lam + 1.0 / lam**2) * d2
    elif mode is DeformationMode.ET:
        p2 = p1
        pressure = (2.0 / lam**4) * d1 + (4.0 / lam**2) * d2
    else:
        p2 = 2.0 * (d1 + lam**2 * d2) * (1.0 - 1.0 / lam**2)
        pressure = (2.0 / lam**2) * d1 + 2.0 * (1.0 + 1.0 / lam**2) * d2
    return StressResult(p1=p1, p2=p2, pressure=float(pressure))


def p1_terms(weights, mode: DeformationMode | str, lams) -> np.ndarray:
    """Contribution of each of the eight energy terms to P1, shape ``(8, n)``.

    The rows sum to P1; this is the stacked decomposition used for plotting.
    """
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    i1, i2, _, _ = mode_invariants(mode, lams)
    g1, g2 = stress_coefficients(mode, lams)
    d1, d2 = _energy.derivative_terms(weights, i1, i2)
    return np.concatenate([g1 * d1, g2 * d2])


def stress_weight_gradient(weights, mode: DeformationMode | str, lam: float) -> np.ndarray:
    """Exact derivative of P1 with respect to the 12 energy parameters."""
    _check_stretch(lam)
    i1, i2, _, _ = mode_invariants(mode, float(lam))
    g1, g2 = stress_coefficients(mode, float(lam))
    h1, h2 = _energy.derivative_weight_gradient(weights, i1, i2)
    return g1 * h1 + g2 * h2


def predict_curve(weights, mode: DeformationMode | str, lambdas) -> list[StressResult]:
    lambdas = list(lambdas)
    for k, lam in enumerate(lambdas):
        try:
            _check_stretch(lam)
        except DomainError as exc:
            raise DomainError(f"lambdas[{k}]: {exc}") from None
    return [nominal_stress(weights, mode, lam) for lam in lambdas]
