"""Eight-term isotropic incompressible free energy in (I1, I2).

The energy is a sum of decoupled terms, four in ``x = I1 - 3`` and four in
``y = I2 - 3``::

    psi = c1 x + a1 (exp(b1 x) - 1) + q1 x^2 + a2 (exp(b2 x^2) - 1)
        + (same four terms in y)

Linear and quadratic rows carry a single combined weight (the product of the
two layer weights); each exponential row keeps its (inner, outer) pair. This
gives twelve non-negative parameters, stored in the order of
:data:`PARAM_NAMES`.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields
from enum import Enum

import numpy as np

# flat parameter vector layout: per invariant block,
# (linear, exp-linear inner, exp-linear outer, quadratic, exp-quad inner, exp-quad outer)
PARAM_NAMES = (
    "lin_i1",
    "exp_lin_i1_inner",
    "exp_lin_i1_outer",
    "quad_i1",
    "exp_quad_i1_inner",
    "exp_quad_i1_outer",
    "lin_i2",
    "exp_lin_i2_inner",
    "exp_lin_i2_outer",
    "quad_i2",
    "exp_quad_i2_inner",
    "exp_quad_i2_outer",
)
N_PARAMS = len(PARAM_NAMES)

# the eight energy terms, linear/quadratic/exp-linear/exp-quadratic per invariant
TERM_NAMES = (
    "lin_i1",
    "quad_i1",
    "exp_lin_i1",
    "exp_quad_i1",
    "lin_i2",
    "quad_i2",
    "exp_lin_i2",
    "exp_quad_i2",
)

# parameter indices feeding each term
TERM_PARAMS = {
    "lin_i1": (0,),
    "exp_lin_i1": (1, 2),
    "quad_i1": (3,),
    "exp_quad_i1": (4, 5),
    "lin_i2": (6,),
    "exp_lin_i2": (7, 8),
    "quad_i2": (9,),
    "exp_quad_i2": (10, 11),
}

# exponents above this saturate to +inf instead of overflowing silently
EXP_LIMIT = 700.0


class Activation(str, Enum):
    LINEAR = "linear"
    QUADRATIC = "quadratic"
    EXP_LINEAR = "exp_linear"
    EXP_QUADRATIC = "exp_quadratic"


@dataclass(frozen=True)
class CannWeights:
    """The twelve trainable parameters of the energy network.

    Linear/quadratic entries are combined weights in MPa. Each exponential
    term has a dimensionless ``inner`` coefficient and an ``outer`` amplitude
    in MPa.
    """

    lin_i1: float = 0.0
    exp_lin_i1_inner: float = 0.0
    exp_lin_i1_outer: float = 0.0
    quad_i1: float = 0.0
    exp_quad_i1_inner: float = 0.0
    exp_quad_i1_outer: float = 0.0
    lin_i2: float = 0.0
    exp_lin_i2_inner: float = 0.0
    exp_lin_i2_outer: float = 0.0
    quad_i2: float = 0.0
    exp_quad_i2_inner: float = 0.0
    exp_quad_i2_outer: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = float(getattr(self, f.name))
            if not np.isfinite(v):
                raise ValueError(f"weight {f.name} must be finite, got {v}")
            object.__setattr__(self, f.name, v)

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, values) -> CannWeights:
        values = np.asarray(values, dtype=float).ravel()
        if values.shape != (N_PARAMS,):
            raise ValueError(f"expected {N_PARAMS} weights, got {values.shape[0]}")
        return cls(*values.tolist())

    def as_dict(self) -> dict[str, float]:
        return dict(zip(PARAM_NAMES, astuple(self)))

    @classmethod
    def from_dict(cls, mapping) -> CannWeights:
        unknown = set(mapping) - set(PARAM_NAMES)
        if unknown:
            raise ValueError(f"unknown weight names: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in mapping.items()})

    def is_non_negative(self) -> bool:
        return bool(np.all(self.as_array() >= 0.0))

    def restricted_to(self, *terms: str) -> CannWeights:
        """Copy keeping only the parameters of the named terms."""
        theta = np.zeros(N_PARAMS)
        src = self.as_array()
        for t in terms:
            idx = list(TERM_PARAMS[t])
            theta[idx] = src[idx]
        return CannWeights.from_array(theta)


def _as_theta(weights) -> np.ndarray:
    if isinstance(weights, CannWeights):
        return weights.as_array()
    theta = np.asarray(weights, dtype=float)
    if theta.shape != (N_PARAMS,):
        raise ValueError(f"expected {N_PARAMS} weights, got shape {theta.shape}")
    return theta


def _exp(arg):
    arg = np.asarray(arg, dtype=float)
    out = np.exp(np.minimum(arg, EXP_LIMIT))
    return np.where(arg > EXP_LIMIT, np.inf, out)


def _times(amplitude, value):
    # zero amplitude silences a term even when its exponential saturated
    with np.errstate(invalid="ignore"):
        return np.where(amplitude == 0.0, 0.0, amplitude * value)


def activation(kind: Activation | str, inner_weight: float, x):
    """Second-layer activation applied to a first-layer power ``x``.

    ``inner_weight`` is ignored for the linear and quadratic kinds.
    """
    kind = Activation(kind)
    x = np.asarray(x, dtype=float)
    if kind is Activation.LINEAR:
        out = x
    elif kind is Activation.QUADRATIC:
        out = x**2
    elif kind is Activation.EXP_LINEAR:
        out = _exp(inner_weight * x) - 1.0
    else:
        out = _exp(inner_weight * x**2) - 1.0
    return out if out.ndim else float(out)


def _block(p: np.ndarray, x):
    """Terms, derivatives and parameter sensitivities for one invariant block.

    ``p`` holds the six parameters of the block and ``x`` is ``I - 3``.
    Returns ``(psi, dpsi, dpsi_dp, ddpsi_dp)`` where ``psi`` and ``dpsi`` have
    shape ``(4, *x.shape)`` in term order (linear, quadratic, exp-linear,
    exp-quadratic) and the two sensitivity arrays have shape ``(6, *x.shape)``
    in parameter order.
    """
    c, b1, a1, q, b2, a2 = p
    x = np.asarray(x, dtype=float)
    x2 = x * x
    e1 = _exp(b1 * x)
    e2 = _exp(b2 * x2)

    psi = np.stack([c * x, q * x2, _times(a1, e1 - 1.0), _times(a2, e2 - 1.0)])
    dpsi = np.stack(
        [
            np.full_like(x, c),
            2.0 * q * x,
            _times(a1 * b1, e1),
            2.0 * x * _times(a2 * b2, e2),
        ]
    )
    dpsi_dp = np.stack(
        [
            x,
            _times(a1, x * e1),
            e1 - 1.0,
            x2,
            _times(a2, x2 * e2),
            e2 - 1.0,
        ]
    )
    ddpsi_dp = np.stack(
        [
            np.ones_like(x),
            _times(a1, e1 * (1.0 + b1 * x)),
            b1 * e1,
            2.0 * x,
            2.0 * x * _times(a2, e2 * (1.0 + b2 * x2)),
            2.0 * x * b2 * e2,
        ]
    )
    return psi, dpsi, dpsi_dp, ddpsi_dp


def energy_terms(weights, i1, i2) -> np.ndarray:
    """Individual contributions of the eight terms, ordered as :data:`TERM_NAMES`."""
    theta = _as_theta(weights)
    x, y = np.broadcast_arrays(np.asarray(i1, float) - 3.0, np.asarray(i2, float) - 3.0)
    psi1 = _block(theta[:6], x)[0]
    psi2 = _block(theta[6:], y)[0]
    return np.concatenate([psi1, psi2])


def energy(weights, i1, i2):
    """Free energy in MPa."""
    out = energy_terms(weights, i1, i2).sum(axis=0)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class EnergyDerivatives:
    psi: float
    dpsi_di1: float
    dpsi_di2: float


def derivative_terms(weights, i1, i2):
    """Per-term first derivatives ``(dpsi_k/dI1, dpsi_k/dI2)``, each shape ``(4, ...)``."""
    theta = _as_theta(weights)
    x, y = np.broadcast_arrays(np.asarray(i1, float) - 3.0, np.asarray(i2, float) - 3.0)
    return _block(theta[:6], x)[1], _block(theta[6:], y)[1]


def energy_derivatives(weights, i1: float, i2: float) -> EnergyDerivatives:
    theta = _as_theta(weights)
    psi1, d1, _, _ = _block(theta[:6], float(i1) - 3.0)
    psi2, d2, _, _ = _block(theta[6:], float(i2) - 3.0)
    return EnergyDerivatives(
        psi=float(psi1.sum() + psi2.sum()),
        dpsi_di1=float(d1.sum()),
        dpsi_di2=float(d2.sum()),
    )


def energy_weight_gradient(weights, i1, i2) -> np.ndarray:
    """Exact partial derivatives of the energy with respect to the 12 parameters."""
    theta = _as_theta(weights)
    x, y = np.broadcast_arrays(np.asarray(i1, float) - 3.0, np.asarray(i2, float) - 3.0)
    g1 = _block(theta[:6], x)[2]
    g2 = _block(theta[6:], y)[2]
    return np.concatenate([g1, g2])


def derivative_weight_gradient(weights, i1, i2):
    """Sensitivities of ``(dpsi/dI1, dpsi/dI2)`` to the 12 parameters.

    Returns two ``(12, ...)`` arrays. ``dpsi/dI1`` only depends on the first
    six parameters and ``dpsi/dI2`` on the last six, so half of each array is
    zero.
    """
    theta = _as_theta(weights)
    x, y = np.broadcast_arrays(np.asarray(i1, float) - 3.0, np.asarray(i2, float) - 3.0)
    h1 = _block(theta[:6], x)[3]
    h2 = _block(theta[6:], y)[3]
    zeros = np.zeros_like(h1)
    return np.concatenate([h1, zeros]), np.concatenate([zeros, h2])
