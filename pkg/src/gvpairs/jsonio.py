"""JSON encodings of classes, invariant tables and GeomData documents.

A class is written as a JSON list (``"[1, 0]"`` when used as an object key);
rationals are integers or ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional, Tuple

from .gvseries import ClassLattice, GeomData, QSeries

__all__ = ["SchemaError", "class_key", "parse_class", "parse_rational", "table_from_json",
           "table_to_json", "lattice_from_json", "geom_from_json", "rational_text"]


class SchemaError(ValueError):
    pass


def class_key(beta) -> str:
    return json.dumps([int(b) for b in beta])


def parse_class(text, rank: Optional[int] = None) -> Tuple[int, ...]:
    try:
        val = json.loads(text) if isinstance(text, str) else text
    except json.JSONDecodeError:
        raise SchemaError(f"class key {text!r} is not a JSON list") from None
    if isinstance(val, int) and not isinstance(val, bool):
        val = [val]
    if not isinstance(val, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in val):
        raise SchemaError(f"class {text!r} must be a list of integers")
    if rank is not None and len(val) != rank:
        raise SchemaError(f"class {text!r} has rank {len(val)}, expected {rank}")
    return tuple(val)


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(f"{value!r} is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            pass
    raise SchemaError(f"{value!r} is not an integer or a 'p/q' string")


def rational_text(x: Fraction) -> str:
    return str(Fraction(x))


def table_from_json(obj, rank: Optional[int] = None) -> Dict[Tuple[int, ...], Fraction]:
    if obj is None:
        return {}
    if not isinstance(obj, dict):
        raise SchemaError("a table must be a JSON object keyed by classes")
    return {parse_class(k, rank): parse_rational(v) for k, v in obj.items()}


def table_to_json(table: Mapping, include_zero: bool = True) -> Dict[str, str]:
    items = sorted(table.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    return {class_key(b): rational_text(v) for b, v in items if include_zero or v}


def series_to_json(series: QSeries, include_zero: bool = True) -> Dict[str, str]:
    lat = series.lattice
    return {class_key(b): rational_text(series[b]) for b in lat.classes()
            if include_zero or series[b]}


def _require(doc: Mapping, key: str, kind):
    if key not in doc:
        raise SchemaError(f"missing field {key!r}")
    val = doc[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise SchemaError(f"field {key!r} must be an integer")
    if kind is list and not isinstance(val, list):
        raise SchemaError(f"field {key!r} must be a list")
    return val


def lattice_from_json(doc: Mapping[str, Any]) -> ClassLattice:
    rank = _require(doc, "rank", int)
    degree = doc.get("degree", [1] * rank)
    cutoff = _require(doc, "cutoff", int)
    if not isinstance(degree, list) or not all(isinstance(d, int) for d in degree):
        raise SchemaError("field 'degree' must be a list of integers")
    try:
        return ClassLattice(rank, tuple(degree), cutoff)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def geom_from_json(doc: Mapping[str, Any]) -> GeomData:
    if not isinstance(doc, dict):
        raise SchemaError("input document must be a JSON object")
    lat = lattice_from_json(doc)
    k = doc.get("basis_size", 0)
    if not isinstance(k, int) or k < 0:
        raise SchemaError("field 'basis_size' must be a non-negative integer")
    kunneth = doc.get("kunneth", [])
    if not isinstance(kunneth, list) or not all(isinstance(r, list) for r in kunneth):
        raise SchemaError("field 'kunneth' must be a list of rows")
    n0_S_raw = doc.get("n0_S", {}) or {}
    if not isinstance(n0_S_raw, dict):
        raise SchemaError("field 'n0_S' must be an object")
    n0_S = {}
    for key, vec in n0_S_raw.items():
        if not isinstance(vec, list):
            raise SchemaError(f"n0_S entry {key} must be a list of {k} rationals")
        n0_S[parse_class(key, lat.rank)] = [parse_rational(x) for x in vec]
    try:
        return GeomData(lat, k, [[parse_rational(x) for x in row] for row in kunneth], n0_S,
                        table_from_json(doc.get("n0_c2"), lat.rank))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
