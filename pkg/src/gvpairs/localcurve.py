"""Equivariant invariants of the local curve Tot_{P^1}(O(l1) + O(l2) + O(l3)).

All values are rational functions in the parameters of the Calabi-Yau
subtorus, with lam3 = -lam1 - lam2.  Signs for the stable pair invariants
follow the plus-orientation in degree one and the explicit leading minus of
the degree-two residue formula.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from .symcore import LAMBDA, ZERO, HSeries, RatFunc, hseries_from_factor, ratfunc_eq, ratfunc_from_monomial

__all__ = [
    "CYConditionError",
    "LocalCurveGeom",
    "FixedComponent",
    "InvariantReport",
    "GridSummary",
    "gw_degree1",
    "gw_degree2",
    "pair_degree1",
    "deg2_fixed_components",
    "residue_k_values",
    "residue_term",
    "pair_degree2",
    "pair_degree2_all_axes",
    "check_deg2_conjecture",
    "grid_check",
    "relabel",
]


class CYConditionError(ValueError):
    pass


@dataclass(frozen=True)
class LocalCurveGeom:
    """Degrees (l1, l2, l3) of the three line bundles on P^1."""

    l: Tuple[int, int, int]

    def __post_init__(self):
        l = tuple(int(v) for v in self.l)
        if len(l) != 3:
            raise CYConditionError(f"expected three degrees, got {self.l!r}")
        if sum(l) != -2:
            raise CYConditionError(f"l1 + l2 + l3 = {sum(l)}, the Calabi-Yau condition needs -2")
        object.__setattr__(self, "l", l)

    @classmethod
    def from_pair(cls, l1: int, l2: int) -> "LocalCurveGeom":
        return cls((l1, l2, -2 - l1 - l2))


@dataclass(frozen=True, order=True)
class FixedComponent:
    """A component Pic^{(d0, di)}(P^1) x P(H^0(O(d0))) of the degree-two fixed locus."""

    axis: int
    d0: int
    di: int

    def to_dict(self):
        return {"axis": self.axis, "d0": self.d0, "di": self.di}


def _as_geom(g) -> LocalCurveGeom:
    return g if isinstance(g, LocalCurveGeom) else LocalCurveGeom(tuple(g))


def _lam_pow(i: int, e: int) -> RatFunc:
    return RatFunc.form_power(*LAMBDA[i], e)


def gw_degree1(g) -> RatFunc:
    l1, l2, l3 = _as_geom(g).l
    return ratfunc_from_monomial(1, -l1 - 1, -l2 - 1, -l3 - 1)


def alternating_square_sum(m: int) -> int:
    """m^2 - (m-1)^2 + (m-2)^2 - ... ending at +-1^2, which is m(m+1)/2."""
    return m * (m + 1) // 2


def _bar(l: int) -> int:
    return l if l >= 0 else -l - 1


def gw_degree2(g) -> RatFunc:
    """Genus-zero degree-two invariant from the fixed-point formula on M_0(P^1, 2)."""
    l = _as_geom(g).l
    pref = ratfunc_from_monomial(Fraction(1, 8), -2 * l[0] - 1, -2 * l[1] - 1, -2 * l[2] - 1)
    bracket = ZERO
    for i in range(3):
        s = alternating_square_sum(_bar(l[i]))
        if s:
            bracket = bracket + _lam_pow(i + 1, -2).scale(s)
    for i, j in ((0, 1), (1, 2), (0, 2)):
        c = l[i] * l[j]
        if c:
            bracket = bracket + (_lam_pow(i + 1, -1) * _lam_pow(j + 1, -1)).scale(c)
    return pref * bracket


def pair_degree1(g) -> RatFunc:
    """P_{1,[P^1]}: e(H^1(N)) / e(H^0(N)) at the unique fixed pair, plus sign."""
    l = _as_geom(g).l
    out = RatFunc.const(1)
    for i in range(3):
        # H^0 of O(l) t has l+1 weights lam_i when l >= 0; H^1 has -l-1 when l < 0
        out = out * _lam_pow(i + 1, -l[i] - 1)
    return out


def deg2_fixed_components(g) -> List[FixedComponent]:
    l = _as_geom(g).l
    out = []
    for i in range(3):
        li = l[i]
        d0 = 0
        while 2 * d0 <= li - 1:
            out.append(FixedComponent(i + 1, d0, li - 1 - d0))
            d0 += 1
    return out


def residue_k_values(li: int) -> List[int]:
    """1 <= k <= li with k = li mod 2."""
    return [k for k in range(1, li + 1) if (k - li) % 2 == 0]


def _affine(*parts: Tuple[int, int]) -> Tuple[int, int]:
    return (sum(p[0] for p in parts), sum(p[1] for p in parts))


def _integrand(l: Sequence[int], axis: int, k: int) -> List[Tuple[Tuple[int, int], int]]:
    i = axis
    j, m = [t for t in (1, 2, 3) if t != i]
    li, lj, lm = l[i - 1], l[j - 1], l[m - 1]
    lam_i, lam_j, lam_m = LAMBDA[i], LAMBDA[j], LAMBDA[m]
    neg_i = (-lam_i[0], -lam_i[1])
    return [
        (neg_i, 2),
        (lam_j, k + lj),
        (lam_m, k + lm),
        (_affine(lam_j, neg_i), li - lj - k),
        (_affine(lam_m, neg_i), li - lm - k),
        ((2 * neg_i[0], 2 * neg_i[1]), k - 2 - 2 * li),
    ]


def residue_term(g, axis: int, k: int) -> RatFunc:
    """Res_{h=0} of the degree-two integrand thickened along ``axis``.

    The integrand is ``h^{-k}`` times six powers of affine forms ``(c + h)``;
    the residue is the h^{k-1} coefficient of their product.
    """
    l = _as_geom(g).l
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    li = l[axis - 1]
    if not (1 <= k <= li and (k - li) % 2 == 0):
        raise ValueError(f"k={k} is not a valid residue index for l{axis}={li}")
    order = k - 1
    series = [hseries_from_factor(base, e, order) for base, e in _integrand(l, axis, k)]
    acc = series[0]
    for s in series[1:-1]:
        acc = acc * s
    return acc.coeff_of_product(series[-1], order)


def _pair_degree2_unsorted(l: Tuple[int, int, int]) -> RatFunc:
    total = ZERO
    for axis in (1, 2, 3):
        for k in residue_k_values(l[axis - 1]):
            total = total + residue_term(l, axis, k)
    if total.is_zero():
        return ZERO
    pref = ratfunc_from_monomial(-1, -2 * l[0] - 2, -2 * l[1] - 2, -2 * l[2] - 2)
    return pref * total


@lru_cache(maxsize=2048)
def _pair_degree2_sorted(l: Tuple[int, int, int]) -> RatFunc:
    return _pair_degree2_unsorted(l)


def relabel(x: RatFunc, perm: Sequence[int]) -> RatFunc:
    """Substitute lam_i -> lam_{perm[i-1]} for i = 1, 2 (lam3 follows linearly)."""
    return x.substitute(LAMBDA[perm[0]], LAMBDA[perm[1]])


def pair_degree2(g) -> RatFunc:
    """P_{1,2[P^1]} from the residue formula.

    The triple is sorted descending, evaluated there (where the third axis
    contributes nothing) and relabelled back to the caller's ordering.
    """
    l = _as_geom(g).l
    perm = sorted(range(3), key=lambda t: (-l[t], t))
    sorted_l = tuple(l[t] for t in perm)
    value = _pair_degree2_sorted(sorted_l)
    if list(perm) == [0, 1, 2] or value.is_zero():
        return value
    return relabel(value, [p + 1 for p in perm])


def pair_degree2_all_axes(g) -> RatFunc:
    """Same invariant summed over all three thickening axes, no sorting."""
    return _pair_degree2_unsorted(_as_geom(g).l)


@dataclass
class InvariantReport:
    geom: LocalCurveGeom
    gw01: RatFunc
    gw02: RatFunc
    p11: RatFunc
    p12: RatFunc
    conjecture_holds: bool
    fixed_components: List[FixedComponent] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "l": list(self.geom.l),
            "gw01": self.gw01.to_text(),
            "gw02": self.gw02.to_text(),
            "p11": self.p11.to_text(),
            "p12": self.p12.to_text(),
            "conjecture_holds": self.conjecture_holds,
            "fixed_components": [c.to_dict() for c in self.fixed_components],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InvariantReport":
        return cls(
            LocalCurveGeom(tuple(d["l"])),
            RatFunc.from_text(d["gw01"]),
            RatFunc.from_text(d["gw02"]),
            RatFunc.from_text(d["p11"]),
            RatFunc.from_text(d["p12"]),
            bool(d["conjecture_holds"]),
            [FixedComponent(**c) for c in d["fixed_components"]],
        )


def check_deg2_conjecture(g) -> InvariantReport:
    """GW_{0,2} = P_{1,2} + P_{1,1}/8, decided exactly."""
    g = _as_geom(g)
    gw01 = gw_degree1(g)
    gw02 = gw_degree2(g)
    p11 = pair_degree1(g)
    p12 = pair_degree2(g)
    holds = ratfunc_eq(gw02, p12 + p11.scale(Fraction(1, 8)))
    return InvariantReport(g, gw01, gw02, p11, p12, holds, deg2_fixed_components(g))


@dataclass
class GridSummary:
    instances: int
    passed: int
    failures: List[Tuple[int, int, int]]
    reports: List[InvariantReport]

    @property
    def all_pass(self) -> bool:
        return not self.failures

    def to_dict(self, include_reports: bool = False) -> dict:
        d = {
            "instances": self.instances,
            "passed": self.passed,
            "failed": len(self.failures),
            "failures": [list(f) for f in self.failures],
        }
        if include_reports:
            d["reports"] = [r.to_dict() for r in self.reports]
        return d


def _check_pair(pair: Tuple[int, int]) -> InvariantReport:
    return check_deg2_conjecture(LocalCurveGeom.from_pair(*pair))


def grid_check(l1_range: Iterable[int], l2_range: Iterable[int], workers: int = 1,
               checker=None) -> GridSummary:
    """Check the degree-two identity on every (l1, l2); results ordered by input pair."""
    pairs = [(a, b) for a in l1_range for b in l2_range]
    checker = checker or _check_pair
    if workers > 1 and len(pairs) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(checker, pairs, chunksize=4))
    else:
        reports = [checker(p) for p in pairs]
    failures = [r.geom.l for r in reports if not r.conjecture_holds]
    return GridSummary(len(reports), len(reports) - len(failures), failures, reports)
