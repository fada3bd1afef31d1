"""Material database, material-file parsing and CSV emission.

Material files are UTF-8, line oriented::

    # comment
    [material]
    name = water
    kind = ninham
    source = where the numbers come from
    B = 74.8
    tau = 15384.6
    term = 1.45861, 0.0207, 0.015

``kind`` is one of drude, ninham, colecole, constant, tabulated.  ``term``
(ninham) and ``point`` (tabulated, ``zeta, eps``) may repeat; every other key
appears at most once.  Unknown keys are rejected and ``source`` is mandatory.
"""
from __future__ import annotations

import dataclasses
import io
import math
import os
from pathlib import Path
from typing import Optional

from . import dielectric as di
from .errors import DomainError, MaterialFileError, UnknownRowError
from .lifshitz import DELTA, PRESSURE, ForceCurve

#: Au Drude parameters (eps_inf, omega_p^2 [eV^2], gamma0 [eV], beta [1/eV])
#: measured with the film immersed in media of refractive index n.
TABLE1 = {
    1.00: (7.76, 71.53, 0.0041, 0.0123),
    1.33: (8.71, 79.97, 0.0049, 0.0153),
    1.42: (9.17, 82.52, 0.0062, 0.0055),
    1.51: (9.65, 85.60, 0.0066, 0.0059),
    1.60: (10.30, 88.33, 0.0097, 0.0072),
}

MATERIALS_DIR = Path(__file__).parent / "data" / "materials"


def builtin_table1(ambient_index: float) -> di.DrudeParams:
    """Au Drude parameters for the given ambient refractive index."""
    key = round(float(ambient_index), 2)
    if key not in TABLE1 or abs(key - ambient_index) > 1e-12:
        valid = ", ".join(f"{n:g}" for n in TABLE1)
        raise UnknownRowError(
            f"no Drude row for ambient index {ambient_index:g}; valid: {valid}")
    return di.DrudeParams(*TABLE1[key], ambient_index=key)


@dataclasses.dataclass(frozen=True)
class MaterialRecord:
    name: str
    model: di.DielectricModel
    source: str
    ambient_index: Optional[float] = None


# --- parsing --------------------------------------------------------------

_COMMON = {"name", "kind", "source", "ambient_index"}
_FIELDS = {
    "drude": ("eps_inf", "omega_p_sq", "gamma0", "beta"),
    "ninham": ("B", "tau"),
    "colecole": ("eps_static", "eps_high", "tau", "alpha"),
    "constant": ("value",),
    "tabulated": (),
}
_REPEATED = {"ninham": "term", "tabulated": "point"}
_OPTIONAL = {"tabulated": ("interpolation",)}

# per-field range checks: (predicate, description)
_RANGES = {
    "eps_inf": (lambda v: v >= 1, ">= 1"),
    "omega_p_sq": (lambda v: v >= 0, ">= 0"),
    "gamma0": (lambda v: v > 0, "> 0"),
    "beta": (lambda v: v >= 0, ">= 0"),
    "B": (lambda v: v >= 0, ">= 0"),
    "tau": (lambda v: v > 0, "> 0"),
    "eps_static": (lambda v: v >= 1, ">= 1"),
    "eps_high": (lambda v: v >= 1, ">= 1"),
    "alpha": (lambda v: 0 <= v < 1, "in [0, 1)"),
    "value": (lambda v: v >= 1, ">= 1"),
    "ambient_index": (lambda v: v >= 1, ">= 1"),
}


def _number(text, key, line):
    try:
        v = float(text)
    except ValueError:
        raise MaterialFileError(f"{key}: not a number: {text!r}", line, key) from None
    if not math.isfinite(v):
        raise MaterialFileError(f"{key}: must be finite", line, key)
    check = _RANGES.get(key)
    if check and not check[0](v):
        raise MaterialFileError(f"{key} must be {check[1]}, got {v:g}", line, key)
    return v


def _tuple(text, key, line, size):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != size:
        raise MaterialFileError(f"{key}: expected {size} comma-separated numbers",
                                line, key)
    return tuple(_number(p, key, line) for p in parts)


def parse_material_file(text: str) -> MaterialRecord:
    """Parse and validate one material file.

    Raises
    ------
    MaterialFileError
        On syntax errors (with line number), unknown or duplicate keys,
        missing mandatory keys and out-of-range values (with field name).
    """
    scalars = {}
    lines = {}
    repeated = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if line != "[material]":
                raise MaterialFileError(f"unknown section {line}", lineno)
            if seen_header:
                raise MaterialFileError("only one [material] section allowed", lineno)
            seen_header = True
            continue
        if not seen_header:
            raise MaterialFileError("expected [material] header", lineno)
        key, sep, value = line.partition("=")
        if not sep:
            raise MaterialFileError(f"expected 'key = value', got {line!r}", lineno)
        key, value = key.strip(), value.strip()
        if key in ("term", "point"):
            repeated.append((key, value, lineno))
            continue
        if key in scalars:
            raise MaterialFileError(f"duplicate key {key!r}", lineno, key)
        scalars[key] = value
        lines[key] = lineno
    if not seen_header:
        raise MaterialFileError("missing [material] header")

    for key in ("name", "kind", "source"):
        if not scalars.get(key):
            raise MaterialFileError(f"missing mandatory key {key!r}", field=key)
    kind = scalars["kind"]
    if kind not in _FIELDS:
        raise MaterialFileError(f"unknown kind {kind!r}", lines["kind"], "kind")
    allowed = _COMMON | set(_FIELDS[kind]) | set(_OPTIONAL.get(kind, ()))
    for key in scalars:
        if key not in allowed:
            raise MaterialFileError(f"unknown key {key!r} for kind {kind}",
                                    lines[key], key)
    for key, _, lineno in repeated:
        if _REPEATED.get(kind) != key:
            raise MaterialFileError(f"unknown key {key!r} for kind {kind}",
                                    lineno, key)
    for key in _FIELDS[kind]:
        if key not in scalars:
            raise MaterialFileError(f"missing key {key!r} for kind {kind}",
                                    field=key)

    num = {k: _number(scalars[k], k, lines[k]) for k in _FIELDS[kind]}
    ambient = None
    if "ambient_index" in scalars:
        ambient = _number(scalars["ambient_index"], "ambient_index",
                          lines["ambient_index"])
    try:
        model = _build_model(kind, num, scalars, repeated, ambient)
    except DomainError as exc:
        raise MaterialFileError(str(exc)) from exc
    return MaterialRecord(scalars["name"], model, scalars["source"], ambient)


def _build_model(kind, num, scalars, repeated, ambient):
    if kind == "drude":
        return di.Drude(di.DrudeParams(ambient_index=ambient or 1.0, **num))
    if kind == "ninham":
        terms = [_tuple(v, "term", ln, 3) for _, v, ln in repeated]
        for (c, w, g), (_, _, ln) in zip(terms, repeated):
            if not (c >= 0 and w > 0 and g >= 0):
                raise MaterialFileError("term needs C >= 0, omega > 0, g >= 0",
                                        ln, "term")
        return di.Ninham(di.NinhamParams(num["B"], num["tau"], tuple(terms)))
    if kind == "colecole":
        if num["eps_static"] < num["eps_high"]:
            raise MaterialFileError("eps_static must be >= eps_high",
                                    field="eps_static")
        return di.ColeCole(di.ColeColeParams(**num))
    if kind == "constant":
        return di.Constant(num["value"])
    points = [_tuple(v, "point", ln, 2) for _, v, ln in repeated]
    return di.Tabulated(tuple(points), scalars.get("interpolation", "linear"))


def load_material(path) -> MaterialRecord:
    with open(path, encoding="utf-8") as fh:
        return parse_material_file(fh.read())


# --- serialization --------------------------------------------------------

def fmt(v: float) -> str:
    """Scientific notation with 15 significant digits."""
    return f"{v:.14e}"


def serialize_material(rec: MaterialRecord) -> str:
    """Canonical text form: fixed key order, no comments, 15-digit numbers."""
    m = rec.model
    out = ["[material]", f"name = {rec.name}"]
    body = []
    if isinstance(m, di.Drude):
        kind = "drude"
        p = m.params
        body = [("eps_inf", p.eps_inf), ("omega_p_sq", p.omega_p_sq),
                ("gamma0", p.gamma0), ("beta", p.beta)]
    elif isinstance(m, di.Ninham):
        kind = "ninham"
        body = [("B", m.params.B), ("tau", m.params.tau)]
        body += [("term", t) for t in m.params.terms]
    elif isinstance(m, di.ColeCole):
        kind = "colecole"
        p = m.params
        body = [("eps_static", p.eps_static), ("eps_high", p.eps_high),
                ("tau", p.tau), ("alpha", p.alpha)]
    elif isinstance(m, di.Constant):
        kind = "constant"
        body = [("value", m.value)]
    elif isinstance(m, di.Tabulated):
        kind = "tabulated"
        body = [("interpolation", m.interpolation)]
        body += [("point", pt) for pt in m.points]
    else:
        raise TypeError(f"cannot serialize {type(m).__name__}")
    out.append(f"kind = {kind}")
    out.append(f"source = {rec.source}")
    if rec.ambient_index is not None:
        out.append(f"ambient_index = {fmt(rec.ambient_index)}")
    for key, v in body:
        if isinstance(v, tuple):
            v = ", ".join(fmt(x) for x in v)
        elif not isinstance(v, str):
            v = fmt(v)
        out.append(f"{key} = {v}")
    return "\n".join(out) + "\n"


class MaterialDatabase:
    """Immutable name -> MaterialRecord mapping loaded from ``*.mat`` files."""

    def __init__(self, records=()):
        self._records = {}
        for rec in records:
            if not rec.name:
                raise MaterialFileError("empty material name")
            if rec.name in self._records:
                raise MaterialFileError(f"duplicate material name {rec.name!r}")
            self._records[rec.name] = rec

    @classmethod
    def load(cls, directory=MATERIALS_DIR) -> "MaterialDatabase":
        records = []
        for path in sorted(Path(directory).glob("*.mat")):
            try:
                records.append(load_material(path))
            except MaterialFileError as exc:
                raise MaterialFileError(f"{path.name}: {exc}") from exc
        return cls(records)

    def __contains__(self, name):
        return name in self._records

    def __getitem__(self, name) -> MaterialRecord:
        try:
            return self._records[name]
        except KeyError:
            known = ", ".join(sorted(self._records)) or "none"
            raise UnknownRowError(
                f"unknown material {name!r}; known: {known}") from None

    def names(self):
        return sorted(self._records)

    def serialize(self) -> str:
        return "\n".join(serialize_material(self._records[n]) for n in self.names())


def resolve_model(ref: str, db: MaterialDatabase,
                  paper_literal_colecole: bool = False) -> di.DielectricModel:
    """Turn a model reference into a model.

    Accepted forms: ``vacuum``, ``const:VALUE``, ``au`` (dry built-in Au row),
    ``au:N`` (built-in Au row for ambient index N), or a database material name.
    """
    if ref == "vacuum":
        return di.Vacuum()
    if ref.startswith("const:"):
        try:
            return di.Constant(float(ref[6:]))
        except ValueError:
            raise DomainError(f"bad constant permittivity in {ref!r}") from None
    if ref == "au" or ref.startswith("au:"):
        n = 1.0 if ref == "au" else float(ref[3:])
        return di.Drude(builtin_table1(n))
    model = db[ref].model
    if paper_literal_colecole and isinstance(model, di.ColeCole):
        model = dataclasses.replace(model, paper_literal=True)
    return model


# --- CSV ------------------------------------------------------------------

CURVE_HEADER = "separation_nm,value,value_kind"
EPS_CURVE_HEADER = "zeta_over_omega_pD,eps_ratio,ambient_index"
EPS_HEADER = "zeta_eV,eps"
SERIES_HEADER = "separation_nm,value,value_kind,liquid"


def format_curve_csv(curve: ForceCurve) -> str:
    lines = [CURVE_HEADER]
    lines += [f"{fmt(d)},{fmt(v)},{curve.value_kind}" for d, v in curve.records]
    return "\n".join(lines) + "\n"


def format_eps_curve_csv(rows) -> str:
    """Rows of (zeta/omega_pD, eps/eps_dry, ambient index)."""
    lines = [EPS_CURVE_HEADER]
    lines += [f"{fmt(z)},{fmt(r)},{fmt(n)}" for z, r, n in rows]
    return "\n".join(lines) + "\n"


def format_eps_csv(zetas, values) -> str:
    lines = [EPS_HEADER]
    lines += [f"{fmt(z)},{fmt(e)}" for z, e in zip(zetas, values)]
    return "\n".join(lines) + "\n"


def format_series_csv(curves) -> str:
    """Several curves tagged by series name, e.g. one per liquid."""
    lines = [SERIES_HEADER]
    for name, curve in curves.items():
        lines += [f"{fmt(d)},{fmt(v)},{curve.value_kind},{name}"
                  for d, v in curve.records]
    return "\n".join(lines) + "\n"


def _emit(text, destination):
    data = text.encode("utf-8")
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "wb") as fh:
            fh.write(data)
    elif isinstance(destination, io.TextIOBase):
        destination.write(text)
    else:
        destination.write(data)
    return len(data)


def write_curve_csv(curve: ForceCurve, destination) -> int:
    """Write ``curve`` to a path or stream; returns the byte count."""
    return _emit(format_curve_csv(curve), destination)


def parse_curve_csv(text: str) -> ForceCurve:
    lines = text.split("\n")
    if lines[0] != CURVE_HEADER:
        raise ValueError(f"unexpected header {lines[0]!r}")
    seps, vals, kinds = [], [], set()
    for line in lines[1:]:
        if not line:
            continue
        d, v, k = line.split(",")
        seps.append(float(d))
        vals.append(float(v))
        kinds.add(k)
    if len(kinds) > 1:
        raise ValueError(f"mixed value kinds {sorted(kinds)}")
    return ForceCurve(seps, vals, kinds.pop() if kinds else PRESSURE)


def read_curve_csv(path) -> ForceCurve:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_curve_csv(fh.read())


__all__ = [
    "TABLE1", "MATERIALS_DIR", "MaterialRecord", "MaterialDatabase",
    "builtin_table1", "parse_material_file", "load_material",
    "serialize_material", "resolve_model", "write_curve_csv", "read_curve_csv",
    "parse_curve_csv", "format_curve_csv", "format_eps_curve_csv",
    "format_eps_csv", "format_series_csv", "PRESSURE", "DELTA",
]
