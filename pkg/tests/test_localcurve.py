import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gvpairs.localcurve import (
    CYConditionError,
    FixedComponent,
    InvariantReport,
    LocalCurveGeom,
    alternating_square_sum,
    check_deg2_conjecture,
    deg2_fixed_components,
    grid_check,
    gw_degree1,
    gw_degree2,
    pair_degree1,
    pair_degree2,
    pair_degree2_all_axes,
    relabel,
    residue_k_values,
    residue_term,
)
from gvpairs.symcore import LAMBDA, RatFunc, ratfunc_eq

from conftest import LAM1, LAM2, sympy_equal

LAM3 = -LAM1 - LAM2
lam1, lam2, lam3 = (RatFunc.lam(i) for i in (1, 2, 3))

# Produced by tests/oracles/sympy_local_curve.py (sympy residues of the
# full integrand; the GW bracket summed term by term).
SYMPY_FROZEN = {
    (-1, -1, 0): {"gw02": "-1/(8*(lam1 + lam2))", "p12": "0"},
    (-2, 0, 0): {"gw02": "-lam1/(8*lam2*(lam1 + lam2))", "p12": "0"},
    (0, 0, -2): {"gw02": "-(lam1 + lam2)/(8*lam1*lam2)", "p12": "0"},
    (2, -1, -3): {
        "gw02": "(lam1 + lam2)^3*(5*lam1^3 - 5*lam1^2*lam2 - 10*lam1*lam2^2 - 3*lam2^3)/(8*lam1^7)",
        "p12": "(lam1 + lam2)^2*(2*lam1 + lam2)^2*(lam1^2 - lam1*lam2 - 3*lam2^2)/(8*lam1^7)",
    },
    (-1, 2, -3): {
        "gw02": "-(lam1 + lam2)^3*(3*lam1^3 + 10*lam1^2*lam2 + 5*lam1*lam2^2 - 5*lam2^3)/(8*lam2^7)",
        "p12": "-(lam1 + lam2)^2*(lam1 + 2*lam2)^2*(3*lam1^2 + lam1*lam2 - lam2^2)/(8*lam2^7)",
    },
    (3, 1, -6): {
        "gw02": "-(lam1 + lam2)^9*(lam1^4 + 11*lam1^3*lam2 + 52*lam1^2*lam2^2 + 33*lam1*lam2^3 + 6*lam2^4)"
                "/(8*lam1^9*lam2^5)",
        "p12": "-(lam1 + lam2)^5*(lam1^8 + 15*lam1^7*lam2 + 102*lam1^6*lam2^2 + 310*lam1^5*lam2^3"
               " + 495*lam1^4*lam2^4 + 441*lam1^3*lam2^5 + 220*lam1^2*lam2^6 + 57*lam1*lam2^7 + 6*lam2^8)"
               "/(8*lam1^9*lam2^5)",
    },
    (5, -3, -4): {
        "gw02": "-lam2^3*(lam1 + lam2)^5*(3*lam1^4 - 21*lam1^3*lam2 + 2*lam1^2*lam2^2 + 35*lam1*lam2^3"
                " + 15*lam2^4)/(8*lam1^13)",
        "p12": "lam2^2*(lam1 + lam2)^3*(lam1^7 - 3*lam1^6*lam2 + 15*lam1^5*lam2^2 + 37*lam1^4*lam2^3"
               " - 18*lam1^3*lam2^4 - 87*lam1^2*lam2^5 - 65*lam1*lam2^6 - 15*lam2^7)/(8*lam1^13)",
    },
    (4, 0, -6): {
        "gw02": "-(lam1 + lam2)^9*(49*lam1^2 + 44*lam1*lam2 + 10*lam2^2)/(8*lam1^11*lam2)",
        "p12": "-(lam1 + lam2)^5*(2*lam1 + lam2)^3*(6*lam1^3 + 21*lam1^2*lam2 + 24*lam1*lam2^2 + 10*lam2^3)"
               "/(8*lam1^11*lam2)",
    },
    (1, 1, -4): {
        "gw02": "-(lam1 + lam2)^5*(lam1^4 + 7*lam1^3*lam2 + 18*lam1^2*lam2^2 + 7*lam1*lam2^3 + lam2^4)"
                "/(8*lam1^5*lam2^5)",
        "p12": "-(lam1 + lam2)^3*(lam1^6 + 9*lam1^5*lam2 + 33*lam1^4*lam2^2 + 49*lam1^3*lam2^3"
               " + 33*lam1^2*lam2^4 + 9*lam1*lam2^5 + lam2^6)/(8*lam1^5*lam2^5)",
    },
    (3, -3, -2): {
        "gw02": "-lam2^3*(lam1 + lam2)*(3*lam1^4 - 9*lam1^3*lam2 - 8*lam1^2*lam2^2 + 9*lam1*lam2^3"
                " + 6*lam2^4)/(8*lam1^9)",
        "p12": "lam2^2*(lam1 - lam2)*(lam1 + lam2)*(lam1^4 - 2*lam1^3*lam2 + 7*lam1^2*lam2^2"
               " + 15*lam1*lam2^3 + 6*lam2^4)/(8*lam1^9)",
    },
}


# -- geometry ----------------------------------------------------------------

def test_cy_condition():
    assert LocalCurveGeom.from_pair(2, -1).l == (2, -1, -3)
    with pytest.raises(CYConditionError):
        LocalCurveGeom((1, 1, 1))
    with pytest.raises(CYConditionError):
        LocalCurveGeom((1, -3))


# -- degree one ----------------------------------------------------------------

def test_gw_degree1_examples():
    assert ratfunc_eq(gw_degree1((-1, -1, 0)), lam3 ** -1)
    assert ratfunc_eq(gw_degree1((-2, 0, 0)), lam1 / (lam2 * lam3))
    assert ratfunc_eq(gw_degree1((0, 0, -2)), lam3 / (lam1 * lam2))


def test_pair_degree1_anchors():
    assert ratfunc_eq(pair_degree1((-1, -1, 0)), lam3 ** -1)
    assert ratfunc_eq(pair_degree1((-2, 0, 0)), lam1 / (lam2 * lam3))


@pytest.mark.parametrize("l1,l2", [(a, b) for a in range(-4, 5) for b in range(-4, 5)])
def test_degree_one_coincidence(l1, l2):
    g = LocalCurveGeom.from_pair(l1, l2)
    assert ratfunc_eq(pair_degree1(g), gw_degree1(g))


# -- degree two GW --------------------------------------------------------------

def test_alternating_square_sum_literal():
    for m in range(0, 12):
        literal = sum((-1) ** t * (m - t) ** 2 for t in range(m))
        assert alternating_square_sum(m) == literal


def test_gw_degree2_closed_case():
    assert ratfunc_eq(gw_degree2((-1, -1, 0)), lam3.scale(8) ** -1)


@pytest.mark.parametrize("l", sorted(SYMPY_FROZEN))
def test_gw_degree2_against_frozen_oracle(l):
    assert sympy_equal(gw_degree2(l), SYMPY_FROZEN[l]["gw02"])


# -- fixed locus -----------------------------------------------------------------

def test_fixed_components():
    assert deg2_fixed_components((-1, -1, 0)) == []
    assert deg2_fixed_components((2, -1, -3)) == [FixedComponent(1, 0, 1)]
    assert deg2_fixed_components((5, -3, -4)) == [FixedComponent(1, 0, 4), FixedComponent(1, 1, 3),
                                                  FixedComponent(1, 2, 2)]
    assert deg2_fixed_components((1, 1, -4)) == [FixedComponent(1, 0, 0), FixedComponent(2, 0, 0)]


def test_residue_k_values():
    assert residue_k_values(0) == []
    assert residue_k_values(1) == [1]
    assert residue_k_values(4) == [2, 4]
    assert residue_k_values(5) == [1, 3, 5]


def test_residue_term_rejects_bad_index():
    with pytest.raises(ValueError):
        residue_term((4, 0, -6), 1, 3)
    with pytest.raises(ValueError):
        residue_term((4, 0, -6), 4, 2)


# -- degree two pairs -------------------------------------------------------------

def test_pair_degree2_closed_cases_vanish():
    assert pair_degree2((-1, -1, 0)).is_zero()
    assert pair_degree2((-2, 0, 0)).is_zero()


def test_pair_degree2_worked_example():
    expected = (LAM1 + LAM2) ** 2 * (2 * LAM1 + LAM2) ** 2 * (LAM1 ** 2 - LAM1 * LAM2 - 3 * LAM2 ** 2) / (8 * LAM1 ** 7)
    assert sympy_equal(pair_degree2((2, -1, -3)), expected)


@pytest.mark.parametrize("l", sorted(SYMPY_FROZEN))
def test_pair_degree2_against_frozen_oracle(l):
    assert sympy_equal(pair_degree2(l), SYMPY_FROZEN[l]["p12"])
    assert sympy_equal(pair_degree2_all_axes(l), SYMPY_FROZEN[l]["p12"])


@pytest.mark.parametrize("base", [(2, -1, -3), (5, -3, -4), (3, 1, -6), (4, 0, -6)])
def test_sorted_route_matches_all_axes_for_every_permutation(base):
    for perm in itertools.permutations(base):
        assert ratfunc_eq(pair_degree2(perm), pair_degree2_all_axes(perm))


# -- the identity ------------------------------------------------------------------

@pytest.mark.parametrize("l", sorted(SYMPY_FROZEN))
def test_identity_on_frozen_triples(l):
    r = check_deg2_conjecture(l)
    assert r.conjecture_holds


def test_report_roundtrip():
    r = check_deg2_conjecture((5, -3, -4))
    d = r.to_dict()
    back = InvariantReport.from_dict(d)
    assert back.to_dict() == d
    assert d["fixed_components"] == [{"axis": 1, "d0": 0, "di": 4}, {"axis": 1, "d0": 1, "di": 3},
                                     {"axis": 1, "d0": 2, "di": 2}]


def test_grid_small_square_serial_and_parallel():
    s1 = grid_check(range(-3, 4), range(-3, 4))
    s2 = grid_check(range(-3, 4), range(-3, 4), workers=2)
    assert s1.instances == 49 and s1.all_pass
    assert s1.to_dict(include_reports=True) == s2.to_dict(include_reports=True)


def test_grid_reports_failures():
    def fake(pair):
        r = check_deg2_conjecture(LocalCurveGeom.from_pair(*pair))
        if pair == (0, 0):
            r.conjecture_holds = False
        return r

    s = grid_check(range(-1, 2), range(-1, 2), checker=fake)
    assert not s.all_pass
    assert s.failures == [(0, 0, -2)]
    assert s.to_dict()["failed"] == 1


# -- symmetry properties -----------------------------------------------------------

def _inverse_images(perm):
    inv = [0, 0, 0]
    for i, t in enumerate(perm):
        inv[t] = i + 1
    return inv


FUNCS = [gw_degree1, gw_degree2, pair_degree1, pair_degree2]

triples = st.tuples(st.integers(-7, 7), st.integers(-7, 7)).map(lambda p: (p[0], p[1], -2 - p[0] - p[1]))
perms = st.sampled_from(list(itertools.permutations(range(3))))


@settings(max_examples=25, deadline=None)
@given(triples, perms)
def test_permutation_equivariance(l, perm):
    lp = tuple(l[t] for t in perm)
    inv = _inverse_images(perm)
    for f in FUNCS:
        assert ratfunc_eq(relabel(f(l), inv), f(lp))


@settings(max_examples=25, deadline=None)
@given(triples)
def test_degree_minus_one_homogeneity(l):
    for f in FUNCS:
        x = f(l)
        if not x.is_zero():
            assert x.homogeneous_degree() == -1
