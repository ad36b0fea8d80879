"""Principal stretches and strain invariants for homogeneous deformations.

Only diagonal (coaxial) deformation gradients are represented. The three
incompressible test modes map a single stretch ``lam`` onto principal
stretches; ``general_invariants`` handles arbitrary positive stretches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError


class DeformationMode(str, Enum):
    UT = "UT"  # uniaxial tension
    ET = "ET"  # equibiaxial tension
    PS = "PS"  # pure shear

    @classmethod
    def parse(cls, tag: str | DeformationMode) -> DeformationMode:
        if isinstance(tag, DeformationMode):
            return tag
        try:
            return cls(str(tag).strip().upper())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise DomainError(f"unknown deformation mode {tag!r} (expected one of {valid})") from None


@dataclass(frozen=True)
class DiagonalDeformation:
    lambda1: float
    lambda2: float
    lambda3: float

    def __post_init__(self):
        for s in (self.lambda1, self.lambda2, self.lambda3):
            _check_stretch(s)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.lambda1, self.lambda2, self.lambda3)


@dataclass(frozen=True)
class InvariantState:
    i1: float
    i2: float
    di1_dlambda: float
    di2_dlambda: float


@dataclass(frozen=True)
class GeneralInvariants:
    i1: float
    i2: float
    i3: float
    ibar1: float
    ibar2: float
    jdet: float
    i4: float | None = None


def _check_stretch(lam) -> None:
    arr = np.asarray(lam, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError(f"stretch must be finite and > 0, got {lam!r}")


def deformation_gradient(mode: DeformationMode | str, lam: float) -> DiagonalDeformation:
    """Principal stretches of an incompressible homogeneous test mode."""
    mode = DeformationMode.parse(mode)
    _check_stretch(lam)
    lam = float(lam)
    if mode is DeformationMode.UT:
        t = 1.0 / math.sqrt(lam)
        return DiagonalDeformation(lam, t, t)
    if mode is DeformationMode.ET:
        return DiagonalDeformation(lam, lam, 1.0 / lam**2)
    return DiagonalDeformation(lam, 1.0, 1.0 / lam)


def mode_invariants(mode: DeformationMode | str, lam):
    """Array version of :func:`invariants`.

    Returns ``(i1, i2, di1, di2)`` with the broadcast shape of ``lam``. No
    domain check is performed; callers validate once at their boundary.
    """
    mode = DeformationMode.parse(mode)
    lam = np.asarray(lam, dtype=float)
    if mode is DeformationMode.UT:
        i1 = lam**2 + 2.0 / lam
        i2 = 2.0 * lam + 1.0 / lam**2
        di1 = 2.0 * (lam - 1.0 / lam**2)
        di2 = 2.0 * (1.0 - 1.0 / lam**3)
    elif mode is DeformationMode.ET:
        i1 = 2.0 * lam**2 + 1.0 / lam**4
        i2 = lam**4 + 2.0 / lam**2
        di1 = 4.0 * (lam - 1.0 / lam**5)
        di2 = 4.0 * (lam**3 - 1.0 / lam**3)
    else:
        i1 = lam**2 + 1.0 + 1.0 / lam**2
        i2 = i1
        di1 = 2.0 * (lam - 1.0 / lam**3)
        di2 = di1
    return i1, i2, di1, di2


def invariants(mode: DeformationMode | str, lam: float) -> InvariantState:
    """First and second invariants and their stretch derivatives for a test mode.

    >>> invariants("UT", 2.0).i2
    4.25
    """
    _check_stretch(lam)
    i1, i2, di1, di2 = mode_invariants(mode, float(lam))
    return InvariantState(float(i1), float(i2), float(di1), float(di2))


def general_invariants(
    f_diag: DiagonalDeformation | tuple[float, float, float],
    fiber_direction=None,
) -> GeneralInvariants:
    """Principal, isochoric and (optionally) fiber invariants of a diagonal F.

    ``fiber_direction`` is a unit vector expressed in the principal frame;
    when given, ``i4`` is the squared stretch along it.
    """
    if not isinstance(f_diag, DiagonalDeformation):
        f_diag = DiagonalDeformation(*map(float, f_diag))
    stretches = np.array(f_diag.as_tuple())
    sq = stretches**2

    i1 = float(sq.sum())
    # pairwise products equal (I1^2 - sum lam^4) / 2 without the cancellation
    i2 = float(sq[0] * sq[1] + sq[1] * sq[2] + sq[0] * sq[2])
    jdet = float(np.prod(stretches))
    i3 = jdet**2
    iso = sq / jdet ** (2.0 / 3.0)
    ibar1 = float(iso.sum())
    ibar2 = float(iso[0] * iso[1] + iso[1] * iso[2] + iso[0] * iso[2])

    i4 = None
    if fiber_direction is not None:
        n = np.asarray(fiber_direction, dtype=float)
        if n.shape != (3,) or not np.all(np.isfinite(n)):
            raise DomainError("fiber direction must be a finite 3-vector")
        if abs(float(n @ n) - 1.0) > 1e-12:
            raise DomainError(f"fiber direction must have unit length, got |n|^2 = {n @ n!r}")
        i4 = float((n**2 * sq).sum())

    return GeneralInvariants(i1=i1, i2=i2, i3=i3, ibar1=ibar1, ibar2=ibar2, jdet=jdet, i4=i4)
