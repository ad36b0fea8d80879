import json
import math

import numpy as np
import pytest

from cann.data import builtin_dataset
from cann.discovery import (
    FAMILY_PARAMS,
    Family,
    NamedModel,
    classify,
    closed_form_energy,
    dumps,
    loads,
    recover_named_model,
    report,
    term_magnitudes,
    weights_from_report,
)
from cann.energy import CannWeights, energy
from cann.errors import DomainError
from cann.kinematics import DeformationMode, invariants
from cann.optimizer import AdamConfig, train_cann
from cann.stress import nominal_stress

GRID = np.linspace(1.0, 5.0, 41)


def textbook_stress(model: NamedModel, mode: DeformationMode, lam: float) -> float:
    """Hand-derived nominal stress of each family in each test mode."""
    p = model.params
    s = invariants(mode, lam)
    x = s.i1 - 3.0
    family = model.family
    if family is Family.NEO_HOOKE:
        psi1, psi2 = 0.5 * p["mu"], 0.0
    elif family is Family.BLATZ_KO:
        psi1, psi2 = 0.0, 0.5 * p["mu"]
    elif family is Family.MOONEY_RIVLIN:
        psi1, psi2 = 0.5 * p["mu1"], 0.5 * p["mu2"]
    elif family is Family.YEOH2:
        psi1, psi2 = 0.5 * p["a1"] + p["a2"] * x, 0.0
    else:
        psi1, psi2 = 0.5 * p["a"] * math.exp(p["b"] * x), 0.0
    if mode is DeformationMode.UT:
        return 2.0 * (lam - lam**-2) * (psi1 + psi2 / lam)
    if mode is DeformationMode.ET:
        return 2.0 * (lam - lam**-5) * (psi1 + lam**2 * psi2)
    return 2.0 * (lam - lam**-3) * (psi1 + psi2)


def random_model(family, rng):
    params = {name: float(rng.uniform(0.01, 1.0)) for name in FAMILY_PARAMS[family]}
    if family is Family.DEMIRAY:
        params["b"] = float(rng.uniform(0.01, 0.2))
    return NamedModel(family, params)


@pytest.mark.parametrize("family", list(Family))
def test_recovered_weights_reproduce_textbook_stress(family, rng):
    for _ in range(20):
        model = random_model(family, rng)
        w = recover_named_model(model)
        for mode in DeformationMode:
            for lam in GRID:
                expected = textbook_stress(model, mode, lam)
                got = nominal_stress(w, mode, lam).p1
                assert abs(got - expected) <= 1e-12 * max(1.0, abs(expected))


@pytest.mark.parametrize("family", list(Family))
def test_recovered_weights_reproduce_closed_form_energy(family, rng):
    model = random_model(family, rng)
    w = recover_named_model(model)
    i1 = np.linspace(3.0, 30.0, 25)
    i2 = np.linspace(3.0, 20.0, 25)
    assert energy(w, i1, i2) == pytest.approx(closed_form_energy(model, i1, i2), rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("family", list(Family))
def test_classification_round_trips(family, rng):
    for _ in range(20):
        model = random_model(family, rng)
        found = classify(recover_named_model(model))
        assert found.model_name == family.value
        assert found.named.family is family
        for name, value in model.params.items():
            assert found.named.params[name] == pytest.approx(value, rel=1e-12)


def test_classify_examples():
    found = classify(CannWeights(lin_i1=0.1185))
    assert found.model_name == "NeoHooke"
    assert found.named.params["mu"] == pytest.approx(0.2370)
    assert found.sparsity == 7

    mr = classify(CannWeights(lin_i1=0.1, lin_i2=0.02))
    assert mr.model_name == "MooneyRivlin"
    assert mr.named.shear_modulus == pytest.approx(0.24)

    empty = classify(CannWeights())
    assert empty.model_name == "generalized"
    assert empty.active_terms == {} and empty.physical_params == {}
    assert empty.nearest_family is None


def test_demiray_recovery_example():
    w = recover_named_model(NamedModel(Family.DEMIRAY, {"a": 0.0582, "b": 0.0387}))
    assert w.exp_lin_i1_inner == 0.0387
    assert w.exp_lin_i1_outer == pytest.approx(0.751938, abs=1e-6)
    assert recover_named_model(NamedModel("NeoHooke", {"mu": 0.5})) == CannWeights(lin_i1=0.25)


def test_generalized_model_has_generic_parameters():
    w = CannWeights(lin_i1=0.1185, exp_lin_i1_inner=0.0387, exp_lin_i1_outer=0.0582 / (2 * 0.0387),
                    exp_lin_i2_inner=0.0022, exp_lin_i2_outer=0.0013 / (2 * 0.0022))
    found = classify(w)
    assert found.model_name == "generalized"
    assert set(found.active_terms) == {"lin_i1", "exp_lin_i1", "exp_lin_i2"}
    # NeoHooke and Demiray tie on symmetric difference; ties go to the first family
    assert found.nearest_family == "NeoHooke"
    phys = {k: v for k, (v, _) in found.physical_params.items()}
    assert phys == pytest.approx({"mu1": 0.2370, "a1": 0.0582, "b1": 0.0387, "a2": 0.0013, "b2": 0.0022})
    assert found.physical_params["b1"][1] == "-"


def test_threshold_controls_activity():
    w = CannWeights(lin_i1=1.0, lin_i2=1e-4)
    assert classify(w).model_name == "NeoHooke"
    assert classify(w, threshold=1e-5).model_name == "MooneyRivlin"
    with pytest.raises(DomainError):
        classify(w, threshold=0.0)


def test_exponential_magnitude_needs_both_factors():
    w = CannWeights(lin_i1=0.1, exp_lin_i1_outer=5.0)
    assert term_magnitudes(w)["exp_lin_i1"] == 0.0
    assert classify(w).model_name == "NeoHooke"


def test_named_model_validation():
    with pytest.raises(DomainError):
        NamedModel(Family.YEOH2, {"a1": 1.0})
    with pytest.raises(DomainError):
        recover_named_model(NamedModel(Family.NEO_HOOKE, {"mu": -1.0}))


@pytest.fixture(scope="module")
def short_report():
    d = builtin_dataset("treloar20_multi")
    rec = train_cann(d, AdamConfig(epochs=200))
    return report(rec, d)


def test_report_contents(short_report):
    doc = short_report
    for key in ("model_name", "active_terms", "physical_params", "weights", "loss_history_summary",
                "gradient_norm", "config", "dataset", "term_contributions"):
        assert key in doc
    assert doc["loss_history_summary"]["epochs"] == 200
    assert doc["config"]["seed"] == 7
    assert set(doc["term_contributions"]) == {"UT", "ET", "PS"}
    ut = doc["term_contributions"]["UT"]
    summed = np.sum([ut["terms"][t] for t in ut["terms"]], axis=0)
    assert summed == pytest.approx(ut["p_model"], rel=1e-12, abs=1e-15)


def test_report_round_trip(short_report):
    text = dumps(short_report)
    back = loads(text)
    assert back == json.loads(json.dumps(short_report))
    assert weights_from_report(back) == CannWeights.from_dict(short_report["weights"])
    assert dumps(back) == text


def test_floats_keep_full_precision():
    assert loads(dumps({"x": 0.1 + 0.2}))["x"] == 0.1 + 0.2
    assert dumps({"x": 2.0}) == '{\n  "x": 2.0\n}\n'
    with pytest.raises(ValueError):
        dumps({"x": math.nan})


def test_weights_from_report_requires_all_names():
    with pytest.raises(DomainError):
        weights_from_report({"weights": {"lin_i1": 1.0}})
    with pytest.raises(DomainError):
        weights_from_report({})
