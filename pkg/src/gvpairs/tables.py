"""Published numerical values as CSV data, and the relations they must satisfy.

Files have the header ``source,geometry,kind,class,value``; a class is a
semicolon-separated integer vector and a value is an integer or ``p/q``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .gvseries import (
    ClassLattice,
    GeomData,
    IntegralityError,
    QSeries,
    macmahon,
    macmahon_product,
    n1_from_genus1,
    n1_from_p0,
    sigma,
)

HEADER = ["source", "geometry", "kind", "class", "value"]
KINDS = ("P0", "P1_gamma", "n0", "n1")
INTEGRAL_KINDS = ("P0", "P1_gamma", "n1")

# degree vectors of the shipped geometries (Picard rank = vector length)
GEOMETRIES: Dict[str, Tuple[int, ...]] = {
    "local_P2": (1,),
    "local_P1xP1": (1, 1),
    "sextic": (1,),
    "elliptic_fibration_P3": (1,),
}

__all__ = [
    "PaperRecord",
    "TableError",
    "load_tables",
    "dump_tables",
    "shipped_table_paths",
    "run_consistency_checks",
    "ConsistencyReport",
]


class TableError(ValueError):
    def __init__(self, path, line: int, msg: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {msg}")


@dataclass(frozen=True)
class PaperRecord:
    source: str
    geometry: str
    kind: str
    klass: Tuple[int, ...]
    value: Fraction

    def row(self) -> List[str]:
        return [self.source, self.geometry, self.kind, ";".join(map(str, self.klass)), str(self.value)]


def _parse_row(row: List[str], path, line: int) -> PaperRecord:
    if len(row) != len(HEADER):
        raise TableError(path, line, f"expected {len(HEADER)} fields, got {len(row)}")
    source, geometry, kind, klass, value = row
    if kind not in KINDS:
        raise TableError(path, line, f"unknown kind {kind!r}")
    try:
        cls = tuple(int(x) for x in klass.split(";"))
    except ValueError:
        raise TableError(path, line, f"malformed class {klass!r}") from None
    if any(c < 0 for c in cls) or not any(cls):
        raise TableError(path, line, f"class {klass!r} is not a nonzero effective class")
    try:
        val = Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise TableError(path, line, f"malformed rational {value!r}") from None
    if kind in INTEGRAL_KINDS and val.denominator != 1:
        raise TableError(path, line, f"{kind} value {value} must be an integer")
    return PaperRecord(source, geometry, kind, cls, val)


def parse_tables(text: str, path="<string>") -> List[PaperRecord]:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows or rows[0] != HEADER:
        raise TableError(path, 1, f"header must be {','.join(HEADER)}")
    return [_parse_row(row, path, i) for i, row in enumerate(rows[1:], start=2) if row]


def load_tables(path: Union[str, Path, Iterable]) -> List[PaperRecord]:
    """Load one CSV file, every CSV file in a directory, or a list of files."""
    if isinstance(path, (str, Path)):
        path = Path(path)
        paths = sorted(path.glob("*.csv")) if path.is_dir() else [path]
    else:
        paths = [Path(p) for p in path]
    records: List[PaperRecord] = []
    for p in paths:
        records.extend(parse_tables(p.read_text(), p))
    return records


def dump_tables(records: Sequence[PaperRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for r in records:
        writer.writerow(r.row())
    return buf.getvalue()


def shipped_table_paths() -> List[Path]:
    root = resources.files("gvpairs") / "data"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".csv"))


# -- consistency checks --------------------------------------------------

@dataclass
class CheckResult:
    name: str
    geometry: str
    passed: bool
    detail: str

    def to_dict(self):
        return {"check": self.name, "geometry": self.geometry, "passed": self.passed, "detail": self.detail}


@dataclass
class ConsistencyReport:
    results: List[CheckResult]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self):
        return {"all_pass": self.all_pass, "results": [r.to_dict() for r in self.results]}


def _by(records, geometry: str, kind: str) -> Dict[Tuple[int, ...], Fraction]:
    return {r.klass: r.value for r in records if r.geometry == geometry and r.kind == kind}


def _fmt(table) -> str:
    return "{" + ", ".join(f"{';'.join(map(str, b))}: {v}" for b, v in sorted(table.items())) + "}"


def _is_irreducible(beta: Tuple[int, ...]) -> bool:
    # in the simplicial cone Z^r_{>=0} only the unit vectors are irreducible
    return sum(beta) == 1


def _check_elliptic_fibration(records) -> List[CheckResult]:
    geo = "elliptic_fibration_P3"
    n1 = _by(records, geo, "n1")
    if not n1:
        return []
    cutoff = max(b[0] for b in n1)
    p0 = macmahon(cutoff) ** -20
    out = []
    try:
        derived = n1_from_p0(p0)
        bad = {b: v for b, v in derived.items() if v != n1.get(b, 0)}
        out.append(CheckResult("n1 from M(q)^-20 matches recorded n1", geo, not bad,
                               f"derived {_fmt(derived)}" if bad else f"n1 = {_fmt(derived)}"))
    except IntegralityError as exc:
        out.append(CheckResult("n1 from M(q)^-20 matches recorded n1", geo, False, str(exc)))
    try:
        prod = macmahon_product(n1, ClassLattice.rank1(cutoff))
        out.append(CheckResult("recorded n1 reproduce M(q)^-20", geo, prod == p0, f"P0 = {_fmt(prod.to_table())}"))
    except IntegralityError as exc:
        out.append(CheckResult("recorded n1 reproduce M(q)^-20", geo, False, str(exc)))
    return out


def _check_irreducible_genus0(records, geo: str) -> List[CheckResult]:
    """P_{1,b}(pt) = n_{0,b}(pt) and P_{0,b} = 0 on irreducible classes."""
    p1 = _by(records, geo, "P1_gamma")
    n0 = _by(records, geo, "n0")
    p0 = _by(records, geo, "P0")
    out = []
    for beta in sorted(set(p1) | set(n0)):
        if not _is_irreducible(beta):
            continue
        a, b = p1.get(beta), n0.get(beta)
        ok = a is not None and b is not None and a == b
        out.append(CheckResult(f"P1_gamma = n0 at irreducible class {';'.join(map(str, beta))}", geo, ok,
                               f"P1_gamma={a}, n0={b}"))
    for beta in sorted(p0):
        if _is_irreducible(beta):
            out.append(CheckResult(f"P0 vanishes at irreducible class {';'.join(map(str, beta))}", geo,
                                   p0[beta] == 0, f"P0={p0[beta]}"))
    return out


def _complete_rank1(table, geo) -> Optional[int]:
    if GEOMETRIES.get(geo, (1,)) != (1,) or not table:
        return None
    top = max(b[0] for b in table)
    return top if all((d,) in table for d in range(1, top + 1)) else None


def _check_rank1_integrality(records, geo: str) -> List[CheckResult]:
    """Deduce n1 and n0(pt) from complete rank-1 P0, P1 records and test integrality."""
    p0 = _by(records, geo, "P0")
    p1 = _by(records, geo, "P1_gamma")
    n0_rec = _by(records, geo, "n0")
    out = []
    top = _complete_rank1(p0, geo)
    if top is None:
        return out
    lat = ClassLattice.rank1(top)
    try:
        n1 = n1_from_p0(p0, lat)
        out.append(CheckResult("n1 deduced from P0 is integral", geo, True, f"n1 = {_fmt(n1)}"))
    except IntegralityError as exc:
        out.append(CheckResult("n1 deduced from P0 is integral", geo, False, str(exc)))
    top1 = _complete_rank1(p1, geo)
    if top1 is not None and top1 <= top:
        # deconvolve P1 = n0 * P0 (P0,0 = 1)
        n0: Dict[Tuple[int, ...], Fraction] = {}
        for d in range(1, top1 + 1):
            n0[(d,)] = p1[(d,)] - sum(n0[(e,)] * p0.get((d - e,), 0) for e in range(1, d))
        bad = {b: v for b, v in n0_rec.items() if b in n0 and n0[b] != v}
        integral = all(v.denominator == 1 for v in n0.values())
        out.append(CheckResult("n0(pt) deduced from P1 and P0 is integral and matches records", geo,
                               integral and not bad, f"n0 = {_fmt(n0)}"))
    return out


def _check_sextic(records) -> List[CheckResult]:
    geo = "sextic"
    p0 = _by(records, geo, "P0")
    n1 = _by(records, geo, "n1")
    out = []
    for beta in sorted(p0):
        out.append(CheckResult(f"P0 vanishes at class {';'.join(map(str, beta))}", geo, p0[beta] == 0,
                               f"P0={p0[beta]}"))
    if p0 and n1:
        top = max(b[0] for b in p0)
        try:
            prod = macmahon_product(n1, ClassLattice.rank1(top))
            bad = {b: v for b, v in p0.items() if prod[b] != v}
            out.append(CheckResult("MacMahon product of recorded n1 matches P0", geo, not bad,
                                   "product " + _fmt({b: prod[b] for b in p0})))
        except IntegralityError as exc:
            out.append(CheckResult("MacMahon product of recorded n1 matches P0", geo, False, str(exc)))
    return out


def _check_product_with_elliptic_curve(chis: Sequence[int], cutoff: int) -> List[CheckResult]:
    """Fiber classes r[E] of Y x E: GW_1 = chi sigma(r)/r and P0 series = M(q)^chi."""
    lat = ClassLattice.rank1(cutoff)
    out = []
    for chi in chis:
        gw1 = QSeries(lat, {(d,): Fraction(chi * sigma(d), d) for d in range(1, cutoff + 1)})
        n1 = n1_from_genus1(gw1, GeomData(lat), {})
        expect = {(d,): Fraction(chi if d == 1 else 0) for d in range(1, cutoff + 1)}
        ok_n1 = n1 == expect
        ok_p0 = macmahon_product(n1, lat) == macmahon(cutoff) ** chi
        out.append(CheckResult(f"Y x E fiber classes, chi={chi}", "YxE", ok_n1 and ok_p0,
                               f"n1 = {_fmt({b: v for b, v in n1.items() if v})}"))
    return out


def run_consistency_checks(records: Sequence[PaperRecord], chis: Sequence[int] = (-200, 0, 42),
                           cutoff: int = 8) -> ConsistencyReport:
    results: List[CheckResult] = []
    geometries = sorted({r.geometry for r in records})
    for g in geometries:
        if g not in GEOMETRIES:
            results.append(CheckResult("known geometry", g, False, "no degree data for this geometry"))
            continue
        dims = {len(r.klass) for r in records if r.geometry == g}
        rank_ok = dims <= {len(GEOMETRIES[g])}
        results.append(CheckResult("class rank matches geometry", g, rank_ok, f"ranks {sorted(dims)}"))
    results += _check_elliptic_fibration(records)
    for g in ("local_P2", "local_P1xP1"):
        results += _check_irreducible_genus0(records, g)
        results += _check_rank1_integrality(records, g)
    results += _check_sextic(records)
    results += _check_product_with_elliptic_curve(chis, cutoff)
    return ConsistencyReport(results)
