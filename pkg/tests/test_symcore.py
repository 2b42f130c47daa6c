import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from gvpairs.symcore import (
    LAMBDA,
    ONE,
    ZERO,
    HSeries,
    LinForm,
    PoleError,
    Poly2,
    RatFunc,
    format_poly,
    generalized_binomial,
    hseries_from_factor,
    parse_ratfunc,
    probably_equal,
    ratfunc_eq,
    ratfunc_eval,
    ratfunc_from_monomial,
)

from conftest import LAM1, LAM2, sympy_equal, to_sympy

lam1, lam2, lam3 = (RatFunc.lam(i) for i in (1, 2, 3))


# -- linear forms and polynomials -----------------------------------------

def test_linform_normalize():
    assert LinForm.normalize(-2, -4) == (Fraction(-2), LinForm(1, 2))
    assert LinForm.normalize(0, -3) == (Fraction(-3), LinForm(0, 1))
    assert LinForm.normalize(Fraction(1, 2), Fraction(3, 4)) == (Fraction(1, 4), LinForm(2, 3))
    with pytest.raises(ValueError):
        LinForm.normalize(0, 0)


def test_linform_text():
    assert LinForm(1, 1).text() == "lam1+lam2"
    assert LinForm(2, -1).text() == "2*lam1-lam2"
    assert LinForm(0, 1).text() == "lam2"


def test_poly_div_form_exact_and_none():
    p = Poly2.linear(1, 1) * Poly2.linear(2, -1)
    assert p.div_form(LinForm(1, 1)) == Poly2.linear(2, -1)
    assert p.div_form(LinForm(1, 2)) is None


def test_format_poly_descending():
    p = Poly2({(2, 0): 1, (1, 1): 2})
    assert format_poly(p) == "1*lam1^2 + 2*lam1^1*lam2^1"


# -- rational functions ----------------------------------------------------

def test_monomial_example():
    # lam1^-1 lam2^-1 lam3^-1 = -1 / (lam1 lam2 (lam1 + lam2))
    x = ratfunc_from_monomial(1, -1, -1, -1)
    assert sympy_equal(x, -1 / (LAM1 * LAM2 * (LAM1 + LAM2)))


def test_lam3_squared_expands():
    assert sympy_equal(lam3 * lam3, (LAM1 + LAM2) ** 2)


def test_cancellation_is_canonical():
    x = (lam1 * lam1 - lam2 * lam2) / (lam1 - lam2)
    assert x._key() == (lam1 + lam2)._key()
    assert ratfunc_eq((lam1 + lam2) / (lam1 + lam2), ONE)


def test_sum_to_zero():
    x = lam1 / (lam1 + lam2)
    assert (x - x).is_zero()
    assert (lam1 + lam2 + lam3).is_zero()


def test_inverse_requires_linear_factors():
    x = (lam1 * lam2) / lam3
    assert ratfunc_eq(x * x.inverse(), ONE)
    q = (lam1 * lam1 + lam2 * lam2)
    with pytest.raises(ValueError):
        q.inverse()
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_eval_and_pole():
    x = lam1 / (lam2 * lam3)
    assert x.eval(2, 3) == Fraction(2, 3 * -5)
    with pytest.raises(PoleError):
        ratfunc_eval(x, 1, -1)


def test_text_roundtrip_examples():
    for x in (ZERO, ONE, lam3.scale(Fraction(-1, 8)) ** -1, (lam1 - 2 * lam2) ** 3 / (lam1 * lam3 ** 2)):
        assert parse_ratfunc(x.to_text()) == x
        assert parse_ratfunc(x.to_text()).to_text() == x.to_text()


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_ratfunc("lam1 / lam2")


def test_substitute_swaps_variables():
    x = lam1 ** 2 / (lam2 * lam3)
    y = x.substitute(LAMBDA[2], LAMBDA[1])
    assert sympy_equal(y, LAM2 ** 2 / (LAM1 * -(LAM1 + LAM2)))
    with pytest.raises(ValueError):
        x.substitute((1, 1), (2, 2))


def test_homogeneous_degree():
    assert (lam1 / (lam2 * lam3)).homogeneous_degree() == -1
    assert (lam1 + ONE).homogeneous_degree() is None


def test_probably_equal_is_necessary_condition():
    x = lam1 / lam3
    assert probably_equal(x, x * (lam2 / lam2))
    assert not probably_equal(x, lam2 / lam3)


# random rational functions built from small pieces, compared with sympy

def _random_ratfunc(rng: random.Random):
    out = RatFunc.const(Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4)))
    for _ in range(rng.randint(1, 3)):
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        if a == b == 0:
            continue
        out = out * RatFunc.form_power(a, b, rng.randint(-3, 3))
    return out + RatFunc.form_power(*LAMBDA[rng.randint(1, 3)], rng.randint(-2, 2))


@pytest.mark.parametrize("seed", range(25))
def test_field_operations_agree_with_sympy(seed):
    rng = random.Random(seed)
    x, y = _random_ratfunc(rng), _random_ratfunc(rng)
    X, Y = to_sympy(x), to_sympy(y)
    assert sympy_equal(x + y, X + Y)
    assert sympy_equal(x - y, X - Y)
    assert sympy_equal(x * y, X * Y)
    assert parse_ratfunc((x * y).to_text()) == x * y


exps = st.integers(min_value=-4, max_value=4)


@settings(max_examples=60, deadline=None)
@given(exps, exps, exps, exps, exps, exps)
def test_monomial_arithmetic_laws(a1, a2, a3, b1, b2, b3):
    x = ratfunc_from_monomial(1, a1, a2, a3)
    y = ratfunc_from_monomial(Fraction(-1, 3), b1, b2, b3)
    assert ratfunc_eq(x * y, ratfunc_from_monomial(Fraction(-1, 3), a1 + b1, a2 + b2, a3 + b3))
    assert ratfunc_eq(x + y, y + x)
    assert ratfunc_eq((x + y) * x, x * x + y * x)
    assert ratfunc_eq(x / x, ONE)


# -- truncated series in h ---------------------------------------------------

def test_generalized_binomial():
    assert [generalized_binomial(-2, j) for j in range(5)] == [1, -2, 3, -4, 5]
    assert [generalized_binomial(3, j) for j in range(5)] == [1, 3, 3, 1, 0]


def test_hseries_inverse_times_series_is_one():
    s = hseries_from_factor((1, 0), 3, 4)
    t = hseries_from_factor((1, 0), -3, 4)
    assert s * t == HSeries.constant(1, 4)


def test_hseries_matches_sympy_expansion():
    h = sp.Symbol("h")
    s = hseries_from_factor((1, 2), -3, 5)
    ref = sp.series((LAM1 + 2 * LAM2 + h) ** -3, h, 0, 6).removeO()
    for j in range(6):
        assert sympy_equal(s.coeff(j), ref.coeff(h, j))


def test_hseries_coeff_out_of_range():
    s = hseries_from_factor((1, 0), 2, 1)
    with pytest.raises(IndexError):
        s.coeff(2)
    with pytest.raises(IndexError):
        s.coeff_of_product(s, 3)


def test_coeff_of_product_equals_full_product():
    s = hseries_from_factor((1, 1), -2, 3)
    t = hseries_from_factor((0, 1), 5, 3)
    assert ratfunc_eq((s * t).coeff(3), s.coeff_of_product(t, 3))
