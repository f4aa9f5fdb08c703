"""Tables of hyperfine-coupled 13C spins: parsing, serialisation and summary statistics.

CSV files are UTF-8, comma separated, with ``#`` comment lines and the header
``label,distance_angstrom,A_MHz,B_MHz``. JSON files hold an array of objects
with the same keys. ``distance_angstrom`` may be empty / null.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ActuatorError, SpinDataError
from .physics import (
    DEFAULT_CONSTANTS,
    FieldConfig,
    HyperfineSpin,
    PhysicalConstants,
    control_frame,
    enhancement_factors,
)
from .su2 import Unitary
from .synthesis import max_switches, synthesize

COLUMNS = ("label", "distance_angstrom", "A_MHz", "B_MHz")
BUILTIN_NAME = "builtin_spins.csv"


class GaugeWarning(UserWarning):
    """A negative transverse coupling was flipped to its magnitude."""


@dataclass(frozen=True)
class SpinTable:
    spins: Tuple[HyperfineSpin, ...]
    source: str = "<memory>"
    format: str = "csv"
    notes: Tuple[str, ...] = ()

    def __post_init__(self):
        seen = set()
        for s in self.spins:
            if s.label in seen:
                raise SpinDataError(f"duplicate label {s.label!r}")
            seen.add(s.label)

    @property
    def row_count(self) -> int:
        return len(self.spins)

    def __len__(self):
        return len(self.spins)

    def __iter__(self):
        return iter(self.spins)

    @property
    def labels(self) -> List[str]:
        return [s.label for s in self.spins]

    def get(self, label: str) -> HyperfineSpin:
        for s in self.spins:
            if s.label == label:
                return s
        raise KeyError(f"unknown spin label {label!r}; known: {', '.join(self.labels) or '(none)'}")


def _number(value, name: str, row: int, optional: bool = False) -> Optional[float]:
    if value is None or (isinstance(value, str) and value.strip() == ""):
        if optional:
            return None
        raise SpinDataError(f"missing value for {name}", row=row)
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise SpinDataError(f"{name}: cannot parse {value!r} as a number", row=row) from None
    if not math.isfinite(x):
        raise SpinDataError(f"{name}: non-finite value {value!r}", row=row)
    return x


def _make_spin(rec: dict, row: int, notes: list) -> HyperfineSpin:
    label = rec.get("label")
    if label is None or str(label).strip() == "":
        raise SpinDataError("empty label", row=row)
    label = str(label).strip()
    dist = _number(rec.get("distance_angstrom"), "distance_angstrom", row, optional=True)
    if dist is not None and dist < 0:
        raise SpinDataError(f"distance_angstrom must be >= 0, got {dist}", row=row)
    a = _number(rec.get("A_MHz"), "A_MHz", row)
    b = _number(rec.get("B_MHz"), "B_MHz", row)
    if b < 0:
        msg = f"row {row}: B = {b} MHz < 0 stored as |B| (transverse axis gauge)"
        notes.append(msg)
        warnings.warn(msg, GaugeWarning, stacklevel=3)
        b = -b
    return HyperfineSpin(label=label, A=a, B=b, distance=dist)


def _read_csv(text: str, notes: list) -> List[HyperfineSpin]:
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise SpinDataError("no header line found")
    header_line, header = lines[0][0], next(csv.reader([lines[0][1]]))
    header = [h.strip() for h in header]
    missing = [c for c in COLUMNS if c not in header]
    if missing:
        raise SpinDataError(f"missing column(s) {', '.join(missing)} in header at line {header_line}")
    spins = []
    for lineno, ln in lines[1:]:
        values = next(csv.reader([ln]))
        if len(values) != len(header):
            raise SpinDataError(f"expected {len(header)} fields, got {len(values)}", row=lineno)
        spins.append(_make_spin(dict(zip(header, values)), lineno, notes))
    return spins


def _read_json(text: str, notes: list) -> List[HyperfineSpin]:
    try:
        data = json.loads(text) if text.strip() else []
    except json.JSONDecodeError as exc:
        raise SpinDataError(f"invalid JSON: {exc}") from None
    if not isinstance(data, list):
        raise SpinDataError("JSON spin table must be an array of objects")
    spins = []
    for i, rec in enumerate(data, start=1):
        if not isinstance(rec, dict):
            raise SpinDataError("entry is not an object", row=i)
        missing = [c for c in ("label", "A_MHz", "B_MHz") if c not in rec]
        if missing:
            raise SpinDataError(f"missing field(s) {', '.join(missing)}", row=i)
        spins.append(_make_spin(rec, i, notes))
    return spins


def parse_table(source, format: str = "csv", name: str = "<stream>") -> SpinTable:
    """Parse a spin table from bytes, text or a binary/text stream.

    Row numbers in errors are file line numbers for CSV and 1-based array
    positions for JSON.
    """
    if hasattr(source, "read"):
        source = source.read()
    text = source.decode("utf-8-sig") if isinstance(source, (bytes, bytearray)) else str(source)
    fmt = format.lower()
    notes: list = []
    if fmt == "csv":
        spins = _read_csv(text, notes)
    elif fmt == "json":
        spins = _read_json(text, notes)
    else:
        raise ValueError(f"unknown table format {format!r}")
    seen: Dict[str, int] = {}
    for i, s in enumerate(spins):
        if s.label in seen:
            raise SpinDataError(f"duplicate label {s.label!r}", row=i + 1)
        seen[s.label] = i
    return SpinTable(tuple(spins), source=name, format=fmt, notes=tuple(notes))


def load_table(path) -> SpinTable:
    """Read a table from disk; the format follows the file suffix (``.json`` or CSV)."""
    path = Path(path)
    fmt = "json" if path.suffix.lower() == ".json" else "csv"
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise SpinDataError(f"cannot read spin table {str(path)!r}: {exc.strerror}") from None
    return parse_table(data, fmt, name=str(path))


def builtin_table() -> SpinTable:
    data = resources.files("nvactuator").joinpath("data", BUILTIN_NAME).read_bytes()
    return parse_table(data, "csv", name=f"builtin:{BUILTIN_NAME}")


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else repr(float(x))


def serialize(table: SpinTable, format: str = "csv") -> str:
    """Inverse of :func:`parse_table`; floats are written with ``repr`` so they round-trip."""
    fmt = format.lower()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for s in table:
            w.writerow([s.label, _fmt(s.distance), _fmt(s.A), _fmt(s.B)])
        return buf.getvalue()
    if fmt == "json":
        recs = [
            {"label": s.label, "distance_angstrom": s.distance, "A_MHz": s.A, "B_MHz": s.B}
            for s in table
        ]
        return json.dumps(recs, indent=2) + "\n"
    raise ValueError(f"unknown table format {format!r}")


# ---------------------------------------------------------------------------
# statistics

@dataclass(frozen=True)
class Histogram:
    edges: Tuple[float, ...]
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return int(sum(self.counts))


@dataclass(frozen=True)
class SpinRow:
    label: str
    distance: Optional[float]
    zeta: Optional[Tuple[float, float, float]]
    alpha: Optional[float]
    kappa: Optional[float]
    n_bound: Optional[int]
    n: Optional[int]
    time_us: Optional[float]
    at_cap: bool = False
    status: str = "ok"


@dataclass(frozen=True)
class SpinStats:
    rows: Tuple[SpinRow, ...]
    histograms: Dict[str, Histogram] = field(default_factory=dict)

    @property
    def row_count(self) -> int:
        return len(self.rows)


def _histogram(values: Sequence[float], width: float, origin: float = 0.0) -> Histogram:
    """Fixed-width bins starting at ``origin``; every value lands in exactly one bin."""
    if not width > 0:
        raise ValueError("bin width must be positive")
    vals = np.asarray(values, dtype=float)
    if vals.size == 0:
        return Histogram((origin, origin + width), (0,))
    idx = np.floor((vals - origin) / width).astype(int)
    lo, hi = int(idx.min()), int(idx.max())
    counts = np.bincount(idx - lo, minlength=hi - lo + 1)
    edges = origin + width * np.arange(lo, hi + 2)
    return Histogram(tuple(float(e) for e in edges), tuple(int(c) for c in counts))


def _spin_row(spin: HyperfineSpin, field_cfg, goal, consts, synth_opts) -> SpinRow:
    status = []
    try:
        z = enhancement_factors(spin, field_cfg, consts).as_tuple()
    except ActuatorError as exc:
        z = None
        status.append(f"zeta: {type(exc).__name__}")
    alpha = kappa = bound = n = t = None
    at_cap = False
    try:
        frame = control_frame(spin, field_cfg, consts)
        alpha, kappa = frame.alpha, frame.kappa
        bound = max_switches(frame).n_max
        res = synthesize(goal, frame, **synth_opts)
        n, t, at_cap = res.n, res.time, res.at_cap
    except ActuatorError as exc:
        status.append(type(exc).__name__)
    return SpinRow(spin.label, spin.distance, z, alpha, kappa, bound, n, t, at_cap, "; ".join(status) or "ok")


def table_stats(
    table: SpinTable,
    field_cfg: FieldConfig,
    goal: Unitary,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
    zeta_bin: float = 0.25,
    threads: int = 1,
    **synth_opts,
) -> SpinStats:
    """Per-spin frame, enhancement factors and optimal length for ``goal``.

    Histograms: ``|zeta0|``, ``|zeta+1|``, ``|zeta-1|`` with width ``zeta_bin``
    and ``n`` with unit width. Rows whose computation failed are counted in a
    ``failed`` pseudo-bin so each histogram's total equals the row count.
    """
    if table.row_count == 0:
        raise ValueError("table_stats needs a nonempty table")

    def work(s):
        return _spin_row(s, field_cfg, goal, consts, synth_opts)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = tuple(pool.map(work, table.spins))
    else:
        rows = tuple(work(s) for s in table.spins)

    hists = {}
    for k, name in enumerate(("abs_zeta0", "abs_zeta_plus", "abs_zeta_minus")):
        vals = [abs(r.zeta[k]) for r in rows if r.zeta is not None]
        hists[name] = _histogram(vals, zeta_bin)
    hists["n"] = _histogram([r.n for r in rows if r.n is not None], 1.0, origin=-0.5)
    failed_z = sum(1 for r in rows if r.zeta is None)
    failed_n = sum(1 for r in rows if r.n is None)
    if failed_z:
        for name in ("abs_zeta0", "abs_zeta_plus", "abs_zeta_minus"):
            hists[name] = _with_failed(hists[name], failed_z)
    if failed_n:
        hists["n"] = _with_failed(hists["n"], failed_n)
    return SpinStats(rows, hists)


def _with_failed(h: Histogram, failed: int) -> Histogram:
    # failures sit in a trailing bin with a NaN right edge
    return Histogram(h.edges + (math.nan,), h.counts + (failed,))
