"""Command-line front end.

    cann fit --data treloar20_multi --seed 7 --out out/
    cann fit-baseline --data treloar20_ut --layers 1,8,1
    cann predict --weights out/report.json --modes UT,ET --lambda-min 1 --lambda-max 3 --lambda-steps 21
    cann report --weights out/report.json --threshold 1e-4
    cann list-data
    cann export-data --data treloar20_multi --out treloar20.csv
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

import numpy as np

from . import data as _data
from .baseline_nn import mlp_forward, mlp_train
from .discovery import dumps, loads, report, weights_from_report, classify
from .energy import TERM_NAMES
from .errors import CannError, DivergenceError
from .kinematics import DeformationMode
from .optimizer import AdamConfig, train_cann
from .stress import p1_terms, predict_curve

log = logging.getLogger("cann")

DEFAULT_BASELINE_EPOCHS = 20_000


def _csv_floats(values) -> list[str]:
    return [format(float(v), ".17g") for v in values]


def _write_csv(path: Path, header, rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _adam_config(args, epochs_default: int, lr_default: float) -> AdamConfig:
    return AdamConfig(
        learning_rate=lr_default if args.lr is None else args.lr,
        epochs=epochs_default if args.epochs is None else args.epochs,
        seed=args.seed,
    )


def _write_loss(out: Path, history) -> Path:
    path = out / "loss.csv"
    _write_csv(path, ("epoch", "mse"), ((k + 1, format(v, ".17g")) for k, v in enumerate(history)))
    return path


def _print_artifacts(paths) -> None:
    for p in paths:
        print(f"wrote {p}")


def cmd_fit(args) -> int:
    dataset = _data.resolve(args.data)
    config = _adam_config(args, AdamConfig.epochs, AdamConfig.learning_rate)
    record = train_cann(dataset, config)
    doc = report(record, dataset, args.threshold)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    path = out / "report.json"
    path.write_text(dumps(doc), encoding="utf-8")
    written.append(path)

    header = ("lambda", "p_model", "p_data", *(f"term_{k + 1}" for k in range(len(TERM_NAMES))))
    for mode, block in doc["term_contributions"].items():
        terms = [block["terms"][name] for name in TERM_NAMES]
        rows = []
        for k, lam in enumerate(block["lambda"]):
            rows.append(_csv_floats([lam, block["p_model"][k], block["p_data"][k], *(t[k] for t in terms)]))
        path = out / f"curve_{mode}.csv"
        _write_csv(path, header, rows)
        written.append(path)
    written.append(_write_loss(out, record.loss_history))

    summary = doc["loss_history_summary"]
    print(f"dataset: {dataset.source} ({len(dataset)} samples)")
    print(f"loss: {summary['initial']:.4e} -> {summary['final']:.4e} over {summary['epochs']} epochs")
    print(f"model: {doc['model_name']}" + (f" (nearest: {doc['nearest_family']})" if doc["nearest_family"] else ""))
    print(f"active terms: {', '.join(doc['active_terms']) or 'none'}")
    for name, p in doc["physical_params"].items():
        print(f"  {name} = {p['value']:.4g} {p['unit']}")
    _print_artifacts(written)
    return 0


def cmd_fit_baseline(args) -> int:
    dataset = _data.resolve(args.data)
    if len(dataset.modes) != 1:
        print(
            f"error: fit-baseline needs a single-mode dataset; {args.data} has modes "
            f"{', '.join(m.value for m in dataset.modes)}",
            file=sys.stderr,
        )
        return 1
    try:
        sizes = tuple(int(s) for s in args.layers.split(","))
    except ValueError:
        print(f"error: --layers must be comma-separated integers, got {args.layers!r}", file=sys.stderr)
        return 2
    config = _adam_config(args, DEFAULT_BASELINE_EPOCHS, AdamConfig.learning_rate)
    result = mlp_train(dataset, config, sizes)
    params = result.params

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = [_write_loss(out, result.loss_history)]

    lam, p_data = dataset.arrays()
    top = float(lam.max())
    extra = np.linspace(top, 2.0 * top, 51)[1:]
    rows = [_csv_floats([x, mlp_forward(params, x), p]) + ["data"] for x, p in zip(lam, p_data)]
    rows += [_csv_floats([x, mlp_forward(params, x)]) + ["", "extrapolation"] for x in extra]
    mode = dataset.modes[0].value
    path = out / f"curve_{mode}.csv"
    _write_csv(path, ("lambda", "p_model", "p_data", "segment"), rows)
    written.append(path)

    doc = {
        "layer_sizes": list(params.layer_sizes),
        "n_weights": params.n_weights,
        "n_biases": params.n_biases,
        "weights": [w.tolist() for w in params.weights],
        "biases": [b.tolist() for b in params.biases],
        "saturation_bound": params.saturation_bound(),
        "loss_history_summary": {
            "initial": float(result.loss_history[0]),
            "final": float(result.loss_history[-1]),
            "epochs": len(result.loss_history),
        },
        "config": config.as_dict(),
        "dataset": {"source": dataset.source, "n_samples": len(dataset)},
    }
    path = out / "baseline.json"
    path.write_text(dumps(doc), encoding="utf-8")
    written.append(path)

    print(f"dataset: {dataset.source} ({len(dataset)} samples)")
    print(f"network: {params.layer_sizes}, {params.n_weights} weights, {params.n_biases} biases")
    print(f"mse: {result.loss_history[0]:.4e} -> {result.loss_history[-1]:.4e}")
    _print_artifacts(written)
    return 0


def _load_report(path) -> dict:
    path = Path(path)
    try:
        return loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise CannError(f"cannot read weights file {path}: {exc.strerror or exc}") from None
    except ValueError as exc:
        raise CannError(f"{path} is not a valid report: {exc}") from None


def cmd_predict(args) -> int:
    weights = weights_from_report(_load_report(args.weights))
    modes = [DeformationMode.parse(m) for m in args.modes.split(",") if m.strip()]
    grid = np.linspace(args.lambda_min, args.lambda_max, args.lambda_steps) if args.lambda_steps > 0 else []
    grid = [float(x) for x in grid]

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for mode in modes:
        results = predict_curve(weights, mode, grid)
        rows = []
        for lam, r in zip(grid, results):
            rows.append(_csv_floats([lam, r.p1]) + [("" if r.p2 is None else format(r.p2, ".17g"))] + _csv_floats([r.pressure]))
        path = out / f"predict_{mode.value}.csv"
        _write_csv(path, ("lambda", "p1", "p2", "pressure"), rows)
        written.append(path)
    _print_artifacts(written)
    return 0


def cmd_report(args) -> int:
    doc = _load_report(args.weights)
    weights = weights_from_report(doc)
    found = classify(weights, args.threshold)
    doc.update(
        model_name=found.model_name,
        nearest_family=found.nearest_family,
        active_terms=list(found.active_terms),
        sparsity=found.sparsity,
        threshold=found.threshold,
        physical_params={k: {"value": v, "unit": u} for k, (v, u) in found.physical_params.items()},
        named_params=dict(found.named.params) if found.named else {},
    )
    if args.data:
        dataset = _data.resolve(args.data)
        contributions = {}
        for mode in dataset.modes:
            lam, p_data = dataset.for_mode(mode).arrays()
            terms = p1_terms(weights, mode, lam)
            contributions[mode.value] = {
                "lambda": lam.tolist(),
                "p_data": p_data.tolist(),
                "p_model": terms.sum(axis=0).tolist(),
                "terms": {name: row.tolist() for name, row in zip(TERM_NAMES, terms)},
            }
        doc["term_contributions"] = contributions
    text = dumps(doc)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / "report.json"
        path.write_text(text, encoding="utf-8")
        print(f"model: {found.model_name}")
        _print_artifacts([path])
    else:
        sys.stdout.write(text)
    return 0


def cmd_list_data(args) -> int:
    for name in _data.BUILTIN_NAMES:
        print(name)
    return 0


def cmd_export_data(args) -> int:
    text = _data.resolve(args.data).to_csv()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _print_artifacts([args.out])
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cann", description="Constitutive network fitting and model discovery for rubber data.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def training_flags(p):
        p.add_argument("--data", required=True, help="builtin dataset name or CSV path")
        p.add_argument("--epochs", type=int, default=None)
        p.add_argument("--lr", type=float, default=None)
        p.add_argument("--seed", type=int, default=AdamConfig.seed)
        p.add_argument("--out", default="out")

    p = sub.add_parser("fit", help="train the energy network and report the discovered model")
    training_flags(p)
    p.add_argument("--threshold", type=float, default=None, help="absolute activity threshold")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("fit-baseline", help="train the tanh baseline on single-mode data")
    training_flags(p)
    p.add_argument("--layers", default="1,8,1")
    p.set_defaults(func=cmd_fit_baseline)

    p = sub.add_parser("predict", help="evaluate stresses from a saved report over a stretch grid")
    p.add_argument("--weights", required=True, help="report.json written by fit")
    p.add_argument("--modes", default="UT,ET,PS")
    p.add_argument("--lambda-min", type=float, default=1.0)
    p.add_argument("--lambda-max", type=float, default=8.0)
    p.add_argument("--lambda-steps", type=int, default=71)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("report", help="re-classify the weights of a saved report")
    p.add_argument("--weights", required=True)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--data", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("list-data", help="list builtin datasets")
    p.set_defaults(func=cmd_list_data)

    p = sub.add_parser("export-data", help="write a dataset as CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export_data)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DivergenceError as exc:
        print(f"error: training diverged: {exc}", file=sys.stderr)
        return 3
    except CannError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
