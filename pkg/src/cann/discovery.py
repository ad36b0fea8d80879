"""Interpret trained weights as a classical hyperelastic model, and back.

Physical parameters follow the usual conventions for incompressible rubber
models: linear invariant terms ``1/2 mu [I - 3]`` and exponential terms
``1/2 a/b [exp(b [I - 3]) - 1]``. Five classical families are reachable by
the eight-term network:

==============  =========================  ============================
family          active terms               parameters
==============  =========================  ============================
NeoHooke        lin_i1                     mu = 2 lin_i1
BlatzKo         lin_i2                     mu = 2 lin_i2
MooneyRivlin    lin_i1, lin_i2             mu1, mu2
Yeoh2           lin_i1, quad_i1            a1 = 2 lin_i1, a2 = 2 quad_i1
Demiray         exp_lin_i1                 a = 2 b outer, b = inner
==============  =========================  ============================

The cubic Yeoh coefficient has no counterpart in the network and is fixed
at zero.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .data import Dataset
from .energy import PARAM_NAMES, TERM_NAMES, TERM_PARAMS, CannWeights
from .errors import DomainError
from .optimizer import TrainingRecord, loss_gradient
from .stress import p1_terms

DEFAULT_RELATIVE_THRESHOLD = 1e-3


class Family(str, Enum):
    NEO_HOOKE = "NeoHooke"
    BLATZ_KO = "BlatzKo"
    MOONEY_RIVLIN = "MooneyRivlin"
    YEOH2 = "Yeoh2"
    DEMIRAY = "Demiray"


FAMILY_TERMS = {
    Family.NEO_HOOKE: frozenset({"lin_i1"}),
    Family.BLATZ_KO: frozenset({"lin_i2"}),
    Family.MOONEY_RIVLIN: frozenset({"lin_i1", "lin_i2"}),
    Family.YEOH2: frozenset({"lin_i1", "quad_i1"}),
    Family.DEMIRAY: frozenset({"exp_lin_i1"}),
}

FAMILY_PARAMS = {
    Family.NEO_HOOKE: ("mu",),
    Family.BLATZ_KO: ("mu",),
    Family.MOONEY_RIVLIN: ("mu1", "mu2"),
    Family.YEOH2: ("a1", "a2"),
    Family.DEMIRAY: ("a", "b"),
}

# generic parameters per active term: name, unit
_TERM_PHYSICAL = {
    "lin_i1": (("mu1", "MPa"),),
    "lin_i2": (("mu2", "MPa"),),
    "exp_lin_i1": (("a1", "MPa"), ("b1", "-")),
    "exp_lin_i2": (("a2", "MPa"), ("b2", "-")),
    "quad_i1": (("c1", "MPa"),),
    "quad_i2": (("c2", "MPa"),),
    "exp_quad_i1": (("k1", "MPa"), ("d1", "-")),
    "exp_quad_i2": (("k2", "MPa"), ("d2", "-")),
}


@dataclass(frozen=True)
class NamedModel:
    family: Family
    params: dict[str, float]

    def __post_init__(self):
        family = Family(self.family)
        object.__setattr__(self, "family", family)
        expected = FAMILY_PARAMS[family]
        if set(self.params) != set(expected):
            raise DomainError(f"{family.value} takes parameters {expected}, got {tuple(self.params)}")
        object.__setattr__(self, "params", {k: float(self.params[k]) for k in expected})

    @property
    def shear_modulus(self) -> float:
        """Initial shear modulus of the model in MPa."""
        p = self.params
        if self.family is Family.MOONEY_RIVLIN:
            return p["mu1"] + p["mu2"]
        if self.family is Family.YEOH2:
            return p["a1"]
        if self.family is Family.DEMIRAY:
            return p["a"]
        return p["mu"]


@dataclass(frozen=True)
class DiscoveredModel:
    model_name: str
    active_terms: dict[str, float]  # term -> effective magnitude
    physical_params: dict[str, tuple[float, str]]  # name -> (value, unit)
    sparsity: int
    threshold: float
    named: NamedModel | None = None
    nearest_family: str | None = None
    magnitudes: dict[str, float] = field(default_factory=dict)


def term_magnitudes(weights: CannWeights) -> dict[str, float]:
    """Effective size of each term.

    Linear and quadratic terms use their combined weight; exponential terms
    use ``inner * outer``, their slope at the reference state, so a large
    amplitude with a vanishing exponent counts as inert.
    """
    theta = weights.as_array()
    out = {}
    for term in TERM_NAMES:
        idx = TERM_PARAMS[term]
        out[term] = float(theta[idx[0]] * theta[idx[1]]) if len(idx) == 2 else float(theta[idx[0]])
    return out


def default_threshold(weights: CannWeights) -> float:
    return DEFAULT_RELATIVE_THRESHOLD * max(term_magnitudes(weights).values())


def _physical(weights: CannWeights, term: str) -> dict[str, tuple[float, str]]:
    w = weights.as_dict()
    names = _TERM_PHYSICAL[term]
    if len(names) == 1:
        (name, unit), = names
        return {name: (2.0 * w[term], unit)}
    inner, outer = w[f"{term}_inner"], w[f"{term}_outer"]
    (a_name, a_unit), (b_name, b_unit) = names
    return {a_name: (2.0 * inner * outer, a_unit), b_name: (inner, b_unit)}


def _named_params(family: Family, phys: dict[str, tuple[float, str]]) -> dict[str, float]:
    v = {k: val for k, (val, _) in phys.items()}
    if family is Family.NEO_HOOKE:
        return {"mu": v["mu1"]}
    if family is Family.BLATZ_KO:
        return {"mu": v["mu2"]}
    if family is Family.MOONEY_RIVLIN:
        return {"mu1": v["mu1"], "mu2": v["mu2"]}
    if family is Family.YEOH2:
        return {"a1": v["mu1"], "a2": v["c1"]}
    return {"a": v["a1"], "b": v["b1"]}


def classify(weights: CannWeights, threshold: float | None = None) -> DiscoveredModel:
    """Name the model supported by ``weights``.

    A term is active when its effective magnitude exceeds ``threshold``
    (default: 1e-3 of the largest magnitude). The model is named only when
    the active set equals a family's term set exactly; otherwise it is
    "generalized" and the closest family is recorded.
    """
    if threshold is None:
        threshold = default_threshold(weights)
        if threshold == 0.0:
            threshold = math.ulp(0.0)
    elif not threshold > 0:
        raise DomainError(f"threshold must be > 0, got {threshold}")

    mags = term_magnitudes(weights)
    active = {t: m for t, m in mags.items() if m > threshold}

    phys: dict[str, tuple[float, str]] = {}
    for term in TERM_NAMES:
        if term in active:
            phys.update(_physical(weights, term))

    named = None
    nearest = None
    active_set = frozenset(active)
    for family, terms in FAMILY_TERMS.items():
        if terms == active_set:
            named = NamedModel(family, _named_params(family, phys))
            break
    if named is None and active:
        nearest = min(FAMILY_TERMS, key=lambda f: len(FAMILY_TERMS[f] ^ active_set)).value

    return DiscoveredModel(
        model_name=named.family.value if named else "generalized",
        active_terms=active,
        physical_params=phys,
        sparsity=len(TERM_NAMES) - len(active),
        threshold=float(threshold),
        named=named,
        nearest_family=nearest,
        magnitudes=mags,
    )


def recover_named_model(model: NamedModel) -> CannWeights:
    """Network weights that reproduce a classical model exactly."""
    p = model.params
    for name, value in p.items():
        if not (math.isfinite(value) and value > 0):
            raise DomainError(f"{model.family.value} parameter {name} must be > 0, got {value}")
    family = model.family
    if family is Family.NEO_HOOKE:
        return CannWeights(lin_i1=p["mu"] / 2)
    if family is Family.BLATZ_KO:
        return CannWeights(lin_i2=p["mu"] / 2)
    if family is Family.MOONEY_RIVLIN:
        return CannWeights(lin_i1=p["mu1"] / 2, lin_i2=p["mu2"] / 2)
    if family is Family.YEOH2:
        return CannWeights(lin_i1=p["a1"] / 2, quad_i1=p["a2"] / 2)
    return CannWeights(exp_lin_i1_inner=p["b"], exp_lin_i1_outer=p["a"] / (2 * p["b"]))


def closed_form_energy(model: NamedModel, i1, i2):
    """Textbook strain energy of a classical family, in MPa."""
    p = model.params
    x = np.asarray(i1, dtype=float) - 3.0
    y = np.asarray(i2, dtype=float) - 3.0
    family = model.family
    if family is Family.NEO_HOOKE:
        return 0.5 * p["mu"] * x
    if family is Family.BLATZ_KO:
        return 0.5 * p["mu"] * y
    if family is Family.MOONEY_RIVLIN:
        return 0.5 * p["mu1"] * x + 0.5 * p["mu2"] * y
    if family is Family.YEOH2:
        return 0.5 * p["a1"] * x + 0.5 * p["a2"] * x**2
    return 0.5 * p["a"] / p["b"] * (np.exp(p["b"] * x) - 1.0)


# -- reports -----------------------------------------------------------------


def report(record: TrainingRecord, dataset: Dataset, threshold: float | None = None) -> dict:
    """Plain-data summary of a training run, ready for :func:`dumps`."""
    weights = record.final_weights
    found = classify(weights, threshold)
    history = record.loss_history
    grad = loss_gradient(weights, dataset)

    contributions = {}
    for mode in dataset.modes:
        sub = dataset.for_mode(mode)
        lam, p_data = sub.arrays()
        terms = p1_terms(weights, mode, lam)
        contributions[mode.value] = {
            "lambda": lam.tolist(),
            "p_data": p_data.tolist(),
            "p_model": terms.sum(axis=0).tolist(),
            "terms": {name: row.tolist() for name, row in zip(TERM_NAMES, terms)},
        }

    return {
        "model_name": found.model_name,
        "nearest_family": found.nearest_family,
        "active_terms": list(found.active_terms),
        "sparsity": found.sparsity,
        "threshold": found.threshold,
        "physical_params": {k: {"value": v, "unit": u} for k, (v, u) in found.physical_params.items()},
        "named_params": dict(found.named.params) if found.named else {},
        "term_magnitudes": found.magnitudes,
        "weights": weights.as_dict(),
        "loss_history_summary": {
            "initial": float(history[0]),
            "final": float(history[-1]),
            "min": float(history.min()),
            "epochs": int(record.epochs_run),
            "orders_of_magnitude": float(np.log10(history[0] / history[-1])) if history[-1] > 0 else None,
        },
        "gradient_norm": float(np.linalg.norm(grad)),
        "config": {**record.config.as_dict(), "loss_pooling": "per-point", "optimizer": "adam+projection"},
        "dataset": {
            "source": dataset.source,
            "n_samples": len(dataset),
            "modes": {m.value: len(dataset.for_mode(m)) for m in dataset.modes},
        },
        "term_contributions": contributions,
    }


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"cannot serialize non-finite number {x}")
        s = format(x, ".17g")
        if not any(c in s for c in ".en"):
            s += ".0"
        return s
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc: dict, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(doc, indent, 0) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)


def weights_from_report(doc: dict) -> CannWeights:
    try:
        raw = doc["weights"]
    except (KeyError, TypeError):
        raise DomainError("report has no 'weights' section") from None
    missing = set(PARAM_NAMES) - set(raw)
    if missing:
        raise DomainError(f"report weights missing {sorted(missing)}")
    return CannWeights.from_dict(raw)
