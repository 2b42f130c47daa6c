"""The full verification suite, shared by ``gvpairs verify-all`` and the test-suite.

Each check returns a :class:`Criterion`; random fixtures come from fixed
seeds so the aggregate report is reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from . import localcurve as lc
from .gvseries import (
    ClassLattice,
    GeomData,
    QSeries,
    genus1_forward,
    gw0_from_n0,
    ideal_generating_check,
    macmahon,
    macmahon_product,
    meeting_invariants,
    multiple_cover_expand,
    n0_from_gw0,
    n1_from_genus1,
    n1_from_p0,
    sigma,
)
from .partitions import count_plane_partitions
from .symcore import RatFunc, ratfunc_eq
from .tables import load_tables, run_consistency_checks, shipped_table_paths

GRID = range(-10, 11)


@dataclass
class Criterion:
    id: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        d = {"id": self.id, "name": self.name, "passed": self.passed, "detail": self.detail}
        if timings:
            d["seconds"] = round(self.seconds, 3)
        return d


def _lam(i: int, e: int = 1) -> RatFunc:
    return RatFunc.form_power(*lc.LAMBDA[i], e)


def grid_theorem(workers: int = 1, summary: Optional[lc.GridSummary] = None) -> Criterion:
    summary = summary or lc.grid_check(GRID, GRID, workers=workers)
    ok = summary.instances == 441 and summary.all_pass
    return Criterion(1, "degree-two identity on the 21x21 grid", ok,
                     f"{summary.passed}/{summary.instances} pass; failures {summary.failures[:5]}")


def degree_one(summary: Optional[lc.GridSummary] = None) -> Criterion:
    bad = []
    if summary is not None:
        pairs = [(r.geom, r.p11, r.gw01) for r in summary.reports]
    else:
        pairs = []
        for a, b in itertools.product(GRID, GRID):
            g = lc.LocalCurveGeom.from_pair(a, b)
            pairs.append((g, lc.pair_degree1(g), lc.gw_degree1(g)))
    for g, p, w in pairs:
        if not ratfunc_eq(p, w):
            bad.append(g.l)
    a1 = lc.pair_degree1((-1, -1, 0)) == _lam(3, -1)
    a2 = lc.pair_degree1((-2, 0, 0)) == _lam(1) * _lam(2, -1) * _lam(3, -1)
    ok = not bad and len(pairs) == 441 and a1 and a2
    return Criterion(2, "degree-one pair and GW invariants coincide", ok,
                     f"{len(pairs) - len(bad)}/{len(pairs)} grid matches; anchors (-1,-1,0)={a1}, (-2,0,0)={a2}")


def closed_anchors() -> Criterion:
    a = lc.gw_degree2((-1, -1, 0)) == _lam(3, -1).scale(Fraction(1, 8))
    b = lc.pair_degree2((-1, -1, 0)).is_zero()
    c = lc.pair_degree2((-2, 0, 0)).is_zero()
    return Criterion(3, "closed-form degree-two anchors", a and b and c,
                     f"GW02(-1,-1,0)=lam3^-1/8: {a}; P12(-1,-1,0)=0: {b}; P12(-2,0,0)=0: {c}")


def macmahon_oracle(top: int = 12) -> Criterion:
    mac = macmahon(top)
    counts = [count_plane_partitions(m) for m in range(top + 1)]
    ok = all(counts[m] == mac[(m,)] for m in range(top + 1))
    return Criterion(4, "plane partition counts equal MacMahon coefficients", ok, f"counts {counts}")


def elliptic_fibration() -> Criterion:
    n1 = n1_from_p0(macmahon(8) ** -20)
    expect = {(d,): Fraction(-20 if d == 1 else 0) for d in range(1, 9)}
    return Criterion(5, "n1 of the elliptic fibration from M(q)^-20", n1 == expect,
                     "n1 = {" + ", ".join(f"{b[0]}: {v}" for b, v in sorted(n1.items())) + "}")


def product_with_elliptic_curve(chis: Sequence[int] = (-200, 0, 42), cutoff: int = 8) -> Criterion:
    lat = ClassLattice.rank1(cutoff)
    seen = {}
    ok = True
    for chi in chis:
        gw1 = QSeries(lat, {(d,): Fraction(chi * sigma(d), d) for d in range(1, cutoff + 1)})
        n1 = n1_from_genus1(gw1, GeomData(lat), {})
        expect = {(d,): Fraction(chi if d == 1 else 0) for d in range(1, cutoff + 1)}
        ok &= n1 == expect
        seen[chi] = str(n1[(1,)])
    return Criterion(6, "genus-one inversion on Y x E fiber classes", ok, f"n1 at degree 1: {seen}")


def coefficient_identities(bound: int = 5) -> Criterion:
    lat = ClassLattice.rank1(3)
    rng = range(-bound, bound + 1)
    bad = []
    for a, b, c in itertools.product(rng, rng, rng):
        p = macmahon_product({(1,): a, (2,): b, (3,): c}, lat)
        p2 = b + 3 * a + comb_gen(a, 2)
        p3 = c + a * b + 6 * a + 6 * comb_gen(a, 2) + comb_gen(a, 3)
        if p[(2,)] != p2 or p[(3,)] != p3:
            bad.append((a, b, c))
    n = len(rng) ** 3
    return Criterion(7, "P0 at 2b and 3b from the MacMahon product", not bad,
                     f"{n - len(bad)}/{n} triples agree; first failures {bad[:3]}")


def comb_gen(a: int, k: int) -> int:
    """Binomial coefficient C(a, k) for any integer a."""
    if a >= 0:
        return comb(a, k)
    return (-1) ** k * comb(k - a - 1, k)


def _random_table(rng: random.Random, lat: ClassLattice, lo: int = -9, hi: int = 9, density: float = 0.7):
    return {b: Fraction(rng.randint(lo, hi)) for b in lat.classes(include_zero=False) if rng.random() < density}


def _lattice(rank: int, cutoff: int = 8) -> ClassLattice:
    return ClassLattice(rank, (1,) * rank, cutoff)


def random_geom(rng: random.Random, rank: int, cutoff: int = 8) -> GeomData:
    lat = _lattice(rank, cutoff)
    k = rng.randint(1, 3)
    g = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            g[i][j] = g[j][i] = rng.randint(-2, 2)
    classes = lat.classes(include_zero=False)
    n0_S = {b: [rng.randint(-3, 3) for _ in range(k)] for b in classes if rng.random() < 0.5}
    n0_c2 = {b: rng.randint(-5, 5) for b in classes if rng.random() < 0.5}
    return GeomData(lat, k, g, n0_S, n0_c2)


def transform_roundtrips(count: int = 50, seed: int = 8) -> Criterion:
    rng = random.Random(seed)
    fails = {"gv0": 0, "genus1": 0, "macmahon": 0}
    for t in range(count):
        rank = 1 + t % 2
        lat = _lattice(rank)
        n0 = _random_table(rng, lat)
        npts = rng.randint(0, 3)
        back = n0_from_gw0(gw0_from_n0(n0, lat, npts), npts)
        if {b: v for b, v in back.items() if v} != {b: v for b, v in n0.items() if v}:
            fails["gv0"] += 1

        g = random_geom(rng, rank)
        n1 = _random_table(rng, lat)
        m = meeting_invariants(g)
        back = n1_from_genus1(genus1_forward(n1, g, m), g, m)
        if {b: v for b, v in back.items() if v} != {b: v for b, v in n1.items() if v}:
            fails["genus1"] += 1

        n1 = _random_table(rng, lat)
        back = n1_from_p0(macmahon_product(n1, lat))
        if {b: v for b, v in back.items() if v} != {b: v for b, v in n1.items() if v}:
            fails["macmahon"] += 1
    ok = not any(fails.values())
    return Criterion(8, "transform inversions are exact", ok,
                     ", ".join(f"{k}: {count - v}/{count}" for k, v in fails.items()))


def meeting_recursion(count: int = 20, seed: int = 9) -> Criterion:
    rng = random.Random(seed)
    sym_fail = vanish_fail = 0
    for t in range(count):
        g = random_geom(rng, 1 + t % 2, cutoff=6)
        m = meeting_invariants(g)
        lat = g.lattice
        for (b1, b2), v in m.items():
            if m.get((b2, b1)) != v:
                sym_fail += 1
            if lat.deg(b1) <= 0 or lat.deg(b2) <= 0:
                vanish_fail += 1
    a, c = 3, 5
    toy = GeomData(ClassLattice.rank1(3), 1, [[1]], {(1,): [a]}, {(1,): c})
    mt = meeting_invariants(toy)
    m11, m12 = mt.get(((1,), (1,)), 0), mt.get(((1,), (2,)), 0)
    hand = m11 == c + a * a and m12 == c + a * a
    ok = not sym_fail and not vanish_fail and hand
    return Criterion(9, "meeting invariant recursion", ok,
                     f"asymmetric entries {sym_fail}, degree<=0 entries {vanish_fail}; toy m11={m11}, m12={m12}")


def multiple_cover(n_max: int = 6, cutoff: int = 6) -> Criterion:
    bad = []
    for rank in (1, 2):
        prims = [b for b in _lattice(rank, cutoff).classes(include_zero=False) if gcd(*b) == 1]
        for beta in prims:
            val = Fraction(_class_value(beta))
            table = multiple_cover_expand({beta: val}, n_max, cutoff=cutoff)
            for n in range(1, n_max + 1):
                if table.get((n, beta), 0) != val:
                    bad.append((n, beta))
    return Criterion(10, "multiple cover formula at primitive classes", not bad, f"mismatches {bad[:5]}")


def _class_value(beta) -> int:
    # a nonzero value depending on the class, so that mixups would show
    return 1 + sum((i + 2) * b for i, b in enumerate(beta))


def _random_triple(rng: random.Random, bound: int = 8):
    l1 = rng.randint(-bound, bound)
    l2 = rng.randint(-bound, bound)
    return (l1, l2, -2 - l1 - l2)


INVARIANTS: Dict[str, Callable] = {
    "gw01": lc.gw_degree1,
    "gw02": lc.gw_degree2,
    "p11": lc.pair_degree1,
    "p12": lc.pair_degree2,
    "p12 (all axes)": lc.pair_degree2_all_axes,
}


def symmetry_properties(count: int = 50, seed: int = 11) -> Criterion:
    rng = random.Random(seed)
    equi_fail: List[tuple] = []
    homog_fail: List[tuple] = []
    for _ in range(count):
        l = _random_triple(rng)
        perm = list(itertools.permutations(range(3)))[rng.randrange(1, 6)]
        lp = tuple(l[t] for t in perm)
        inv = [0, 0, 0]
        for i, t in enumerate(perm):
            inv[t] = i + 1
        for name, f in INVARIANTS.items():
            x = f(l)
            if not ratfunc_eq(lc.relabel(x, inv), f(lp)):
                equi_fail.append((name, l, perm))
            if not x.is_zero() and x.homogeneous_degree() != -1:
                homog_fail.append((name, l))
    ok = not equi_fail and not homog_fail
    return Criterion(11, "permutation equivariance and degree -1 homogeneity", ok,
                     f"{count} triples x {len(INVARIANTS)} invariant routes; equivariance failures {equi_fail[:3]}, "
                     f"homogeneity failures {homog_fail[:3]}")


def ideal_identity(count: int = 10, seed: int = 12) -> Criterion:
    rng = random.Random(seed)
    lat = ClassLattice.rank1(4)
    fails = 0
    for _ in range(count):
        n1 = {(d,): rng.randint(-4, 4) for d in range(1, 5)}
        p0 = macmahon_product(n1, lat)
        n0 = {(d,): rng.randint(-4, 4) for d in range(1, 5)}
        if not ideal_generating_check(p0, n0, n1, 3):
            fails += 1
    return Criterion(12, "generating identity for ideal-type geometries", not fails,
                     f"{count - fails}/{count} fixtures pass")


def tables_consistency(tables_dir: Optional[Path] = None) -> Criterion:
    paths = sorted(Path(tables_dir).glob("*.csv")) if tables_dir else shipped_table_paths()
    try:
        records = load_tables(paths)
    except ValueError as exc:
        return Criterion(13, "shipped tables are consistent", False, f"load error: {exc}")
    report = run_consistency_checks(records)
    fails = [f"{r.geometry}: {r.name} ({r.detail})" for r in report.failures()]
    geos = sorted({r.geometry for r in records})
    detail = f"{len(report.results)} checks over {', '.join(geos)}"
    if fails:
        detail += "; failing: " + "; ".join(fails)
    return Criterion(13, "shipped tables are consistent", report.all_pass and bool(paths), detail)


def run_all(workers: int = 1, tables_dir: Optional[Path] = None,
            only: Optional[Sequence[int]] = None) -> List[Criterion]:
    """Run all criteria (or the ids in ``only``), in id order."""
    wanted = set(only) if only else set(range(1, 14))
    timed: List[Criterion] = []
    summary = None

    def run(cid, fn, *args):
        if cid not in wanted:
            return
        t0 = time.perf_counter()
        c = fn(*args)
        c.seconds = time.perf_counter() - t0
        timed.append(c)

    if wanted & {1, 2}:
        t0 = time.perf_counter()
        summary = lc.grid_check(GRID, GRID, workers=workers)
        grid_secs = time.perf_counter() - t0
    run(1, grid_theorem, workers, summary)
    run(2, degree_one, summary)
    if timed and timed[0].id == 1:
        timed[0].seconds += grid_secs
    run(3, closed_anchors)
    run(4, macmahon_oracle)
    run(5, elliptic_fibration)
    run(6, product_with_elliptic_curve)
    run(7, coefficient_identities)
    run(8, transform_roundtrips)
    run(9, meeting_recursion)
    run(10, multiple_cover)
    run(11, symmetry_properties)
    run(12, ideal_identity)
    run(13, tables_consistency, tables_dir)
    return timed
