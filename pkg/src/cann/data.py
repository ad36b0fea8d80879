"""Stress-stretch datasets: representation, CSV I/O and the built-in rubber tables.

CSV schema::

    # comment lines start with '#'
    mode,lambda,stress_mpa
    UT,1.13,0.14
    ET,1.04,0.09
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import DatasetError, DomainError
from .kinematics import DeformationMode

CSV_HEADER = ("mode", "lambda", "stress_mpa")


@dataclass(frozen=True)
class Sample:
    mode: DeformationMode
    lam: float
    stress: float


@dataclass(frozen=True)
class Dataset:
    samples: tuple[Sample, ...]
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        if not self.samples:
            raise DatasetError("dataset is empty")
        for k, s in enumerate(self.samples):
            if not (math.isfinite(s.lam) and math.isfinite(s.stress)):
                raise DatasetError(f"sample {k}: non-finite value")
            if s.lam <= 0.0:
                raise DatasetError(f"sample {k}: stretch must be > 0, got {s.lam}")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def modes(self) -> tuple[DeformationMode, ...]:
        """Modes present, in order of first appearance."""
        seen: dict[DeformationMode, None] = {}
        for s in self.samples:
            seen.setdefault(s.mode)
        return tuple(seen)

    def for_mode(self, mode: DeformationMode | str) -> Dataset:
        mode = DeformationMode.parse(mode)
        picked = [s for s in self.samples if s.mode is mode]
        if not picked:
            raise DatasetError(f"no {mode.value} samples in dataset {self.source!r}")
        return Dataset(picked, source=self.source)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Stretches and stresses as float arrays in sample order."""
        lam = np.array([s.lam for s in self.samples], dtype=float)
        stress = np.array([s.stress for s in self.samples], dtype=float)
        return lam, stress

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# source: {self.source}\n" if self.source else "")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for s in self.samples:
            writer.writerow([s.mode.value, repr(s.lam), repr(s.stress)])
        return buf.getvalue()


def parse_csv(text: str, source: str = "") -> Dataset:
    samples = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c.strip() for c in line.split(",")]
        if not header_seen:
            if tuple(c.lower() for c in cells) != CSV_HEADER:
                raise DatasetError(f"expected header {','.join(CSV_HEADER)!r}, got {line!r}", lineno)
            header_seen = True
            continue
        if len(cells) != 3:
            raise DatasetError(f"expected 3 columns, got {len(cells)}", lineno)
        try:
            mode = DeformationMode.parse(cells[0])
        except DomainError as exc:
            raise DatasetError(str(exc), lineno) from None
        try:
            lam, stress = float(cells[1]), float(cells[2])
        except ValueError:
            raise DatasetError(f"malformed number in {line!r}", lineno) from None
        if not (math.isfinite(lam) and math.isfinite(stress)):
            raise DatasetError(f"non-finite number in {line!r}", lineno)
        if lam <= 0.0:
            raise DatasetError(f"stretch must be > 0, got {lam}", lineno)
        samples.append(Sample(mode, lam, stress))
    if not header_seen:
        raise DatasetError("missing header line")
    if not samples:
        raise DatasetError("dataset is empty (header only)")
    return Dataset(samples, source=source)


def load_csv(path) -> Dataset:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_csv(text, source=str(path))


def save_csv(dataset: Dataset, path) -> None:
    Path(path).write_text(dataset.to_csv(), encoding="utf-8")


class StressUnit(str, Enum):
    KGF_PER_CM2 = "kgf_per_cm2"
    PSI = "psi"
    KGF_PER_8MM2 = "kgf_per_8mm2"  # kg over a 2.5 mm x 3.2 mm cross section
    MPA = "MPa"


_TO_MPA = {
    StressUnit.KGF_PER_CM2: 0.0980665,
    StressUnit.PSI: 0.00689476,
    StressUnit.KGF_PER_8MM2: 9.80665 / 8.0,
    StressUnit.MPA: 1.0,
}


def convert_unit(value: float, from_unit: StressUnit | str) -> float:
    """Convert a stress value to MPa."""
    return float(value) * _TO_MPA[StressUnit(from_unit)]


# Benchmark tables in MPa as (lambda, P) pairs.

_TRELOAR20_UT = [
    (1.00, 0.00), (1.01, 0.00), (1.13, 0.14), (1.23, 0.24), (1.41, 0.33),
    (1.61, 0.43), (1.89, 0.52), (2.17, 0.59), (2.45, 0.68), (3.06, 0.87),
    (3.62, 1.06), (4.06, 1.24), (4.82, 1.60), (5.41, 1.95), (5.79, 2.30),
    (6.23, 2.68), (6.46, 3.03), (6.67, 3.40), (6.96, 3.78), (7.14, 4.16),
    (7.25, 4.49), (7.36, 4.86), (7.49, 5.24), (7.60, 5.60), (7.69, 6.33),
]  # fmt: skip

_TRELOAR50_UT = [
    (1.00, 0.00), (1.11, 0.17), (1.23, 0.29), (1.57, 0.54), (2.12, 0.80),
    (2.73, 1.03), (3.36, 1.30), (3.95, 1.57), (4.39, 1.79), (5.29, 2.29),
    (6.11, 2.80), (6.54, 3.75), (6.95, 5.27), (7.43, 7.73), (7.76, 10.21),
]  # fmt: skip

_MOONEY_GUM_UT = [
    (1.00, 0.00), (1.46, 0.31), (2.30, 0.61), (4.66, 1.23), (6.45, 1.84),
    (6.77, 2.45), (6.96, 3.06),
]  # fmt: skip

_MOONEY_TREAD_UT = [
    (1.00, 0.00), (1.16, 0.31), (1.50, 0.61), (2.56, 1.23), (3.30, 1.84),
    (3.53, 2.45), (3.63, 3.06), (3.71, 3.68),
]  # fmt: skip

_BLATZKO_FOAM_UT = [
    (1.00, 0.00), (1.05, 0.04), (1.10, 0.06), (1.15, 0.07), (1.20, 0.09),
    (1.30, 0.12), (1.40, 0.14), (1.50, 0.16), (1.60, 0.16), (1.70, 0.17),
    (1.80, 0.18), (1.90, 0.19), (2.00, 0.20), (2.10, 0.20), (2.20, 0.21),
    (2.30, 0.21), (2.34, 0.21),
]  # fmt: skip

_BLATZKO_RUBBER_UT = [
    (1.00, 0.00), (1.05, 0.03), (1.10, 0.07), (1.16, 0.10), (1.22, 0.13),
    (1.27, 0.16), (1.31, 0.18), (1.37, 0.20), (1.41, 0.22), (1.47, 0.24),
    (1.52, 0.26), (1.57, 0.27), (1.62, 0.29),
]  # fmt: skip

# equibiaxial stresses here already include the factor of their stretch
_TRELOAR20_ET = [
    (1.00, 0.00), (1.04, 0.09), (1.08, 0.16), (1.12, 0.24), (1.15, 0.26),
    (1.21, 0.33), (1.32, 0.44), (1.43, 0.51), (1.70, 0.66), (1.95, 0.77),
    (2.50, 0.97), (3.04, 1.26), (3.44, 1.47), (3.76, 1.73), (4.03, 1.97),
    (4.26, 2.23), (4.45, 2.45),
]  # fmt: skip

_TRELOAR20_PS = [
    (1.00, 0.00), (1.05, 0.06), (1.13, 0.16), (1.20, 0.24), (1.33, 0.33),
    (1.45, 0.42), (1.86, 0.59), (2.40, 0.77), (2.99, 0.95), (3.50, 1.13),
    (3.98, 1.29), (4.39, 1.48), (4.72, 1.65), (4.99, 1.82),
]  # fmt: skip

_TRELOAR50_ET = [
    (1.00, 0.00), (1.02, 0.15), (1.08, 0.30), (1.16, 0.48), (1.37, 0.74),
    (1.57, 0.92), (1.96, 1.17), (2.46, 1.49), (2.79, 1.78), (3.14, 2.04),
    (3.45, 2.33), (3.60, 2.53), (3.86, 2.96), (4.11, 3.24), (4.60, 4.24),
    (5.06, 6.15), (5.28, 6.99), (5.42, 8.18), (5.59, 9.87), (5.67, 11.59),
]  # fmt: skip

_TRELOAR50_PS = [
    (1.00, 0.00), (1.04, 0.17), (1.23, 0.40), (1.48, 0.63), (2.52, 1.03),
    (3.51, 1.49), (4.33, 1.90), (5.07, 2.36), (5.74, 2.74), (6.24, 3.22),
    (6.36, 3.63), (6.65, 4.49), (6.91, 5.34), (7.06, 6.23), (7.26, 7.00),
    (7.42, 7.89), (7.56, 9.18), (7.83, 10.90),
]  # fmt: skip

_UT, _ET, _PS = DeformationMode.UT, DeformationMode.ET, DeformationMode.PS

_BUILTIN = {
    "treloar20_ut": ([(_UT, _TRELOAR20_UT)], "Treloar rubber 20C, uniaxial tension"),
    "treloar50_ut": ([(_UT, _TRELOAR50_UT)], "Treloar rubber 50C, uniaxial tension"),
    "mooney_gum_ut": ([(_UT, _MOONEY_GUM_UT)], "Mooney gum stock, uniaxial tension"),
    "mooney_tread_ut": ([(_UT, _MOONEY_TREAD_UT)], "Mooney tread stock, uniaxial tension"),
    "blatzko_foam_ut": ([(_UT, _BLATZKO_FOAM_UT)], "Blatz-Ko polymeric foam, uniaxial tension"),
    "blatzko_rubber_ut": ([(_UT, _BLATZKO_RUBBER_UT)], "Blatz-Ko rubber, uniaxial tension"),
    "treloar20_multi": (
        [(_UT, _TRELOAR20_UT), (_ET, _TRELOAR20_ET), (_PS, _TRELOAR20_PS)],
        "Treloar rubber 20C, uniaxial/equibiaxial/pure shear",
    ),
    "treloar50_multi": (
        [(_UT, _TRELOAR50_UT), (_ET, _TRELOAR50_ET), (_PS, _TRELOAR50_PS)],
        "Treloar rubber 50C, uniaxial/equibiaxial/pure shear",
    ),
}

BUILTIN_NAMES = tuple(_BUILTIN)
SINGLE_MODE_NAMES = BUILTIN_NAMES[:6]


def builtin_dataset(name: str) -> Dataset:
    try:
        blocks, label = _BUILTIN[name]
    except KeyError:
        raise DatasetError(f"unknown dataset {name!r}; valid names: {', '.join(BUILTIN_NAMES)}") from None
    samples = [Sample(mode, lam, p) for mode, rows in blocks for lam, p in rows]
    return Dataset(samples, source=f"builtin:{name} ({label})")


def resolve(selector: str) -> Dataset:
    """A builtin name or a path to a CSV file."""
    if selector in _BUILTIN:
        return builtin_dataset(selector)
    return load_csv(selector)
