"""Exact arithmetic in the equivariant parameters.

Everything here lives in Q(lam1, lam2); the third parameter is never stored
and is always expanded as lam3 = -lam1 - lam2.  Denominators are kept as
multisets of primitive linear forms.  That is sufficient for every formula
this package evaluates, and it makes canonical forms (hence equality)
cheap to decide without a multivariate gcd.

Three value types are provided:

* :class:`Poly2`   - bivariate polynomial with rational coefficients,
* :class:`RatFunc` - ``scalar * numerator / prod(form ** mult)``,
* :class:`HSeries` - truncated Taylor series in an auxiliary variable ``h``
  with :class:`RatFunc` coefficients.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, NamedTuple, Optional, Sequence, Tuple, Union

BigRat = Fraction
Rational = Union[int, Fraction]
Exp = Tuple[int, int]

__all__ = [
    "BigRat",
    "LinForm",
    "Poly2",
    "RatFunc",
    "HSeries",
    "PoleError",
    "LAMBDA",
    "ratfunc_from_monomial",
    "ratfunc_eq",
    "ratfunc_eval",
    "probably_equal",
    "generalized_binomial",
    "hseries_from_factor",
]

# lam1, lam2, lam3 as coefficient pairs on (lam1, lam2).
LAMBDA: Dict[int, Tuple[int, int]] = {1: (1, 0), 2: (0, 1), 3: (-1, -1)}


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated on one of its poles."""

    def __init__(self, form: "LinForm", point):
        self.form = form
        self.point = point
        super().__init__(f"denominator form {form.text()} vanishes at {point}")


class LinForm(NamedTuple):
    """A primitive linear form ``a*lam1 + b*lam2``.

    Stored forms satisfy gcd(|a|, |b|) = 1 and (a > 0 or (a == 0 and b > 0)).
    Use :meth:`normalize` to build one from arbitrary coefficients.
    """

    a: int
    b: int

    @staticmethod
    def normalize(a: Rational, b: Rational) -> Tuple[Fraction, "LinForm"]:
        """Return ``(scale, form)`` with ``a*lam1 + b*lam2 == scale * form``."""
        a, b = Fraction(a), Fraction(b)
        if a == 0 and b == 0:
            raise ValueError("the zero linear form has no primitive representative")
        den = math.lcm(a.denominator, b.denominator)
        ia, ib = int(a * den), int(b * den)
        g = math.gcd(ia, ib)
        ia, ib = ia // g, ib // g
        scale = Fraction(g, den)
        if ia < 0 or (ia == 0 and ib < 0):
            ia, ib, scale = -ia, -ib, -scale
        return scale, LinForm(ia, ib)

    def eval(self, p1, p2):
        return self.a * p1 + self.b * p2

    def text(self) -> str:
        parts = []
        for c, name in ((self.a, "lam1"), (self.b, "lam2")):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else ("+" if parts else "")
            parts.append(f"{sign}{mag}{name}")
        return "".join(parts)


class Poly2:
    """Polynomial in (lam1, lam2); ``terms`` maps exponent pairs to coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Exp, Rational]] = None, _trusted: bool = False):
        if _trusted:
            self.terms = terms
        else:
            self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, c: Rational) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, e1: int, e2: int, c: Rational = 1) -> "Poly2":
        return cls({(e1, e2): c})

    @classmethod
    def linear(cls, a: Rational, b: Rational) -> "Poly2":
        return cls({(1, 0): a, (0, 1): b})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Poly2({format_poly(self)})"

    def __neg__(self):
        return Poly2({k: -v for k, v in self.terms.items()}, _trusted=True)

    def __add__(self, other: "Poly2") -> "Poly2":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Poly2(out, _trusted=True)

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def __mul__(self, other: "Poly2") -> "Poly2":
        out: Dict[Exp, Rational] = {}
        get = out.get
        for (a1, a2), u in self.terms.items():
            for (b1, b2), v in other.terms.items():
                k = (a1 + b1, a2 + b2)
                out[k] = get(k, 0) + u * v
        return Poly2({k: v for k, v in out.items() if v}, _trusted=True)

    def scale(self, c: Rational) -> "Poly2":
        if c == 0:
            return Poly2({}, _trusted=True)
        return Poly2({k: v * c for k, v in self.terms.items()}, _trusted=True)

    def __pow__(self, n: int) -> "Poly2":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly2.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def leading(self) -> Exp:
        return max(self.terms)

    def eval(self, p1, p2):
        total = 0
        for (e1, e2), c in self.terms.items():
            total += c * p1**e1 * p2**e2
        return total

    def primitive(self) -> Tuple[Fraction, "Poly2"]:
        """Split into ``(content, P)`` with P integral, primitive, leading term positive."""
        if not self.terms:
            raise ValueError("zero polynomial has no primitive part")
        vals = [Fraction(v) for v in self.terms.values()]
        den = math.lcm(*(v.denominator for v in vals))
        ints = {k: int(Fraction(v) * den) for k, v in self.terms.items()}
        g = math.gcd(*ints.values())
        if ints[max(ints)] < 0:
            g = -g
        return Fraction(g, den), Poly2({k: v // g for k, v in ints.items()}, _trusted=True)

    def div_form(self, form: LinForm) -> Optional["Poly2"]:
        """Exact quotient by ``form``, or None if the form does not divide.

        For integral input the quotient is integral (the form is primitive),
        so all divisions below are exact integer divisions.
        """
        a, b = form
        if a == 0:
            # form is lam2
            if any(e2 == 0 for (_, e2) in self.terms):
                return None
            return Poly2({(e1, e2 - 1): c for (e1, e2), c in self.terms.items()}, _trusted=True)
        cols: Dict[int, Dict[int, Rational]] = {}
        for (e1, e2), c in self.terms.items():
            cols.setdefault(e1, {})[e2] = c
        quot: Dict[Exp, Rational] = {}
        for e1 in range(max(cols), 0, -1):
            col = cols.get(e1)
            if not col:
                continue
            lower = cols.setdefault(e1 - 1, {})
            for e2, c in col.items():
                if c == 0:
                    continue
                if isinstance(c, int):
                    q, r = divmod(c, a)
                    if r:
                        return None
                else:
                    q = c / a
                quot[(e1 - 1, e2)] = q
                if b:
                    s = lower.get(e2 + 1, 0) - q * b
                    lower[e2 + 1] = s
        if any(v != 0 for v in cols.get(0, {}).values()):
            return None
        return Poly2({k: v for k, v in quot.items() if v}, _trusted=True)

    def substitute(self, img1: Poly2, img2: Poly2) -> "Poly2":
        """Replace lam1 -> img1 and lam2 -> img2."""
        out = Poly2({}, _trusted=True)
        pw1: Dict[int, Poly2] = {0: Poly2.const(1)}
        pw2: Dict[int, Poly2] = {0: Poly2.const(1)}

        def power(cache, base, e):
            if e not in cache:
                cache[e] = power(cache, base, e - 1) * base
            return cache[e]

        for (e1, e2), c in self.terms.items():
            out = out + (power(pw1, img1, e1) * power(pw2, img2, e2)).scale(c)
        return out


@lru_cache(maxsize=4096)
def _form_poly_power(form: LinForm, n: int) -> Poly2:
    """Expanded ``form ** n`` for n >= 0, as an integral polynomial."""
    a, b = form
    return Poly2(
        {(n - j, j): math.comb(n, j) * a ** (n - j) * b**j for j in range(n + 1)}
    )


_ONE_POLY = Poly2({(0, 0): 1}, _trusted=True)
Den = Tuple[Tuple[LinForm, int], ...]


class RatFunc:
    """Canonical element of Q(lam1, lam2) with a factored denominator.

    Canonical form: ``scalar * num / prod(form ** mult)`` where ``num`` is an
    integral primitive polynomial with positive leading coefficient, no
    denominator form divides ``num``, and ``den`` is sorted.  Zero is
    scalar 0, num 1, empty den.  Values are immutable.
    """

    __slots__ = ("scalar", "num", "den", "_hash")

    def __init__(self, scalar: Rational, num: Poly2, den: Den):
        # trusted constructor; use make() for arbitrary input
        self.scalar = Fraction(scalar)
        self.num = num
        self.den = den
        self._hash = None

    # -- construction ---------------------------------------------------
    @classmethod
    def make(cls, scalar: Rational, num: Poly2, den: Dict[LinForm, int]) -> "RatFunc":
        """Canonicalize ``scalar * num / prod(den)``; ``den`` values must be >= 0."""
        scalar = Fraction(scalar)
        if scalar == 0 or num.is_zero():
            return ZERO
        content, prim = num.primitive()
        scalar *= content
        remaining = {}
        for form in sorted(den):
            mult = den[form]
            while mult > 0:
                q = prim.div_form(form)
                if q is None:
                    break
                prim = q
                mult -= 1
            if mult > 0:
                remaining[form] = mult
        if prim.terms[max(prim.terms)] < 0:
            prim = -prim
            scalar = -scalar
        return cls(scalar, prim, tuple(sorted(remaining.items())))

    @classmethod
    def const(cls, c: Rational) -> "RatFunc":
        c = Fraction(c)
        if c == 0:
            return ZERO
        return cls(c, _ONE_POLY, ())

    @classmethod
    def poly(cls, p: Poly2) -> "RatFunc":
        return cls.make(1, p, {})

    @classmethod
    def form_power(cls, a: Rational, b: Rational, n: int) -> "RatFunc":
        """``(a*lam1 + b*lam2) ** n`` for any integer n (base must be nonzero)."""
        scale, form = LinForm.normalize(a, b)
        scalar = scale**n
        if n >= 0:
            return cls(scalar, _form_poly_power(form, n), ()) if n else cls.const(scalar)
        return cls(scalar, _ONE_POLY, ((form, -n),))

    @classmethod
    def lam(cls, i: int) -> "RatFunc":
        return cls.form_power(*LAMBDA[i], 1)

    @classmethod
    def from_monomial(cls, c: Rational, e1: int, e2: int, e3: int) -> "RatFunc":
        return ratfunc_from_monomial(c, e1, e2, e3)

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.scalar == 0

    def homogeneous_degree(self) -> Optional[int]:
        """Total degree if homogeneous (numerator degree minus denominator degree), else None."""
        if self.is_zero():
            return None
        degs = {e1 + e2 for e1, e2 in self.num.terms}
        if len(degs) != 1:
            return None
        return degs.pop() - sum(m for _, m in self.den)

    def _key(self):
        return (self.scalar, tuple(sorted(self.num.terms.items())), self.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return ratfunc_eq(self, other)

    def __repr__(self):
        return f"RatFunc({self.to_text()})"

    def __str__(self):
        return self.to_text()

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        if self.is_zero():
            return self
        return RatFunc(-self.scalar, self.num, self.den)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        dx, dy = dict(self.den), dict(other.den)
        lcd = dict(dx)
        for f, m in dy.items():
            if m > lcd.get(f, 0):
                lcd[f] = m
        nx = self.num
        for f, m in lcd.items():
            e = m - dx.get(f, 0)
            if e:
                nx = nx * _form_poly_power(f, e)
        ny = other.num
        for f, m in lcd.items():
            e = m - dy.get(f, 0)
            if e:
                ny = ny * _form_poly_power(f, e)
        # keep integer coefficients: scale both by the scalar denominators
        sx, sy = self.scalar, other.scalar
        den = math.lcm(sx.denominator, sy.denominator)
        cx = sx.numerator * (den // sx.denominator)
        cy = sy.numerator * (den // sy.denominator)
        total = nx.scale(cx) + ny.scale(cy)
        return RatFunc.make(Fraction(1, den), total, lcd)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        nx, ny = self.num, other.num
        dx, dy = dict(self.den), dict(other.den)
        # cancel each numerator against the other denominator first
        nx, dy = _cancel(nx, dy)
        ny, dx = _cancel(ny, dx)
        for f, m in dy.items():
            dx[f] = dx.get(f, 0) + m
        num = nx * ny if ny is not _ONE_POLY else nx
        scalar = self.scalar * other.scalar
        den = tuple(sorted((f, m) for f, m in dx.items() if m))
        if num.terms[max(num.terms)] < 0:
            num, scalar = -num, -scalar
        return RatFunc(scalar, num, den)

    __rmul__ = __mul__

    def scale(self, c: Rational) -> "RatFunc":
        c = Fraction(c)
        if c == 0 or self.is_zero():
            return ZERO
        return RatFunc(self.scalar * c, self.num, self.den)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        # the numerator splits into linear forms only in special cases
        factors = _split_into_forms(self.num)
        if factors is None:
            raise ValueError(
                "numerator is not a product of linear forms; cannot invert in factored form"
            )
        scalar, forms = factors
        num = Poly2.const(1)
        for f, m in self.den:
            num = num * _form_poly_power(f, m)
        return RatFunc.make(1 / (self.scalar * scalar), num, forms)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a rational function by zero")
            return self.scale(Fraction(1) / Fraction(other))
        return self * other.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of the zero rational function")
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        if self.is_zero():
            return ZERO
        return RatFunc(
            self.scalar**n, self.num**n, tuple((f, m * n) for f, m in self.den)
        )

    # -- evaluation / substitution --------------------------------------
    def eval(self, p1: Rational, p2: Rational) -> Fraction:
        return ratfunc_eval(self, p1, p2)

    def substitute(self, img1: Tuple[Rational, Rational], img2: Tuple[Rational, Rational]) -> "RatFunc":
        """Linear change of variables lam1 -> img1, lam2 -> img2 (coefficient pairs)."""
        (p, q), (r, s) = img1, img2
        if Fraction(p) * s - Fraction(q) * r == 0:
            raise ValueError("substitution matrix is singular")
        if self.is_zero():
            return ZERO
        num = self.num.substitute(Poly2.linear(p, q), Poly2.linear(r, s))
        scalar = self.scalar
        den: Dict[LinForm, int] = {}
        for (a, b), m in self.den:
            scale, form = LinForm.normalize(a * Fraction(p) + b * Fraction(r), a * Fraction(q) + b * Fraction(s))
            scalar /= scale**m
            den[form] = den.get(form, 0) + m
        return RatFunc.make(scalar, num, den)

    # -- text form ------------------------------------------------------
    def to_text(self) -> str:
        """Canonical text ``scalar * (num) / (prod form^mult)``."""
        if self.is_zero():
            return "0"
        den = "*".join(f"({f.text()})^{m}" for f, m in self.den) or "1"
        return f"{self.scalar} * ({format_poly(self.num)}) / ({den})"

    @classmethod
    def from_text(cls, text: str) -> "RatFunc":
        return parse_ratfunc(text)


def _cancel(num: Poly2, den: Dict[LinForm, int]) -> Tuple[Poly2, Dict[LinForm, int]]:
    if num is _ONE_POLY or not den:
        return num, den
    out = dict(den)
    for f in sorted(out):
        while out[f] > 0:
            q = num.div_form(f)
            if q is None:
                break
            num = q
            out[f] -= 1
    return num, out


def _split_into_forms(p: Poly2) -> Optional[Tuple[Fraction, Dict[LinForm, int]]]:
    """Factor a homogeneous polynomial into linear forms, if it splits over Q."""
    if len(p.terms) == 1:
        (e1, e2), c = next(iter(p.terms.items()))
        forms = {}
        if e1:
            forms[LinForm(1, 0)] = e1
        if e2:
            forms[LinForm(0, 1)] = e2
        return Fraction(c), forms
    degs = {e1 + e2 for (e1, e2) in p.terms}
    if len(degs) != 1:
        return None
    # rational roots of the dehomogenized polynomial in t = lam1/lam2
    forms: Dict[LinForm, int] = {}
    rest = p
    while True:
        if len(rest.terms) == 1:
            extra = _split_into_forms(rest)
            for f, m in extra[1].items():
                forms[f] = forms.get(f, 0) + m
            return extra[0], forms
        found = None
        lead = max(rest.terms)
        first_e1 = min(e1 for (e1, _) in rest.terms)
        if first_e1 > 0:
            found = LinForm(1, 0)
        elif all(e2 > 0 for (_, e2) in rest.terms):
            found = LinForm(0, 1)
        else:
            lc = abs(rest.terms[lead])
            tc = abs(rest.terms[min(rest.terms)])
            for u in _divisors(tc):
                for v in _divisors(lc):
                    for sgn in (1, -1):
                        if math.gcd(u, v) != 1:
                            continue
                        _, form = LinForm.normalize(v, -sgn * u)
                        if rest.div_form(form) is not None:
                            found = form
                            break
                    if found:
                        break
                if found:
                    break
        if found is None:
            return None
        rest = rest.div_form(found)
        forms[found] = forms.get(found, 0) + 1


def _divisors(n: int):
    n = abs(int(n))
    return [d for d in range(1, n + 1) if n % d == 0] if n else [1]


ZERO = RatFunc(0, _ONE_POLY, ())
ONE = RatFunc(1, _ONE_POLY, ())


def ratfunc_from_monomial(c: Rational, e1: int, e2: int, e3: int) -> RatFunc:
    """``c * lam1**e1 * lam2**e2 * lam3**e3`` with lam3 = -lam1 - lam2."""
    if Fraction(c) == 0:
        return ZERO
    out = RatFunc.const(c)
    for (a, b), e in ((LAMBDA[1], e1), (LAMBDA[2], e2), (LAMBDA[3], e3)):
        if e:
            out = out * RatFunc.form_power(a, b, e)
    return out


def ratfunc_eq(x: RatFunc, y: RatFunc) -> bool:
    """Exact equality by cross-multiplying over the least common denominator."""
    if x.is_zero() or y.is_zero():
        return x.is_zero() and y.is_zero()
    if x._key() == y._key():
        return True
    dx, dy = dict(x.den), dict(y.den)
    lhs = x.num.scale(x.scalar)
    rhs = y.num.scale(y.scalar)
    for f in set(dx) | set(dy):
        mx, my = dx.get(f, 0), dy.get(f, 0)
        if my > mx:
            lhs = lhs * _form_poly_power(f, my - mx)
        elif mx > my:
            rhs = rhs * _form_poly_power(f, mx - my)
    return lhs == rhs


def ratfunc_eval(x: RatFunc, p1: Rational, p2: Rational) -> Fraction:
    p1, p2 = Fraction(p1), Fraction(p2)
    if x.is_zero():
        return Fraction(0)
    den = Fraction(1)
    for f, m in x.den:
        v = f.eval(p1, p2)
        if v == 0:
            raise PoleError(f, (p1, p2))
        den *= v**m
    return x.scalar * Fraction(x.num.eval(p1, p2)) / den


def probably_equal(x: RatFunc, y: RatFunc, trials: int = 20, rng: Optional[random.Random] = None,
                   bound: int = 10**6) -> bool:
    """Randomized necessary condition for equality (never authoritative)."""
    rng = rng or random.Random(0)
    forms = {f for f, _ in x.den} | {f for f, _ in y.den}
    done = 0
    while done < trials:
        p1 = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        p2 = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if any(f.eval(p1, p2) == 0 for f in forms):
            continue
        if ratfunc_eval(x, p1, p2) != ratfunc_eval(y, p1, p2):
            return False
        done += 1
    return True


# -- text form ------------------------------------------------------------

def format_poly(p: Poly2) -> str:
    if not p.terms:
        return "0"
    out = []
    for (e1, e2) in sorted(p.terms, reverse=True):
        c = p.terms[(e1, e2)]
        factors = [str(c)]
        if e1:
            factors.append(f"lam1^{e1}")
        if e2:
            factors.append(f"lam2^{e2}")
        out.append("*".join(factors))
    return " + ".join(out)


_TEXT_RE = re.compile(r"^(?P<scalar>-?\d+(?:/\d+)?) \* \((?P<num>[^()]*)\) / \((?P<den>.*)\)$")
_FORM_RE = re.compile(r"\(([^()]*)\)\^(\d+)")
_LIN_RE = re.compile(r"([+-]?)(?:(\d+)\*)?(lam[12])")


def _parse_linear(text: str) -> Tuple[int, int]:
    coeffs = {"lam1": 0, "lam2": 0}
    pos = 0
    for m in _LIN_RE.finditer(text):
        if m.start() != pos:
            raise ValueError(f"bad linear form {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeffs[m.group(3)] += sign * int(m.group(2) or 1)
        pos = m.end()
    if pos != len(text):
        raise ValueError(f"bad linear form {text!r}")
    return coeffs["lam1"], coeffs["lam2"]


def parse_ratfunc(text: str) -> RatFunc:
    """Inverse of :meth:`RatFunc.to_text`."""
    text = text.strip()
    if text == "0":
        return ZERO
    m = _TEXT_RE.match(text)
    if not m:
        raise ValueError(f"not a canonical rational function: {text!r}")
    terms: Dict[Exp, int] = {}
    for term in m.group("num").split(" + "):
        parts = term.split("*")
        c = int(parts[0])
        e1 = e2 = 0
        for part in parts[1:]:
            var, _, e = part.partition("^")
            if var == "lam1":
                e1 = int(e)
            elif var == "lam2":
                e2 = int(e)
            else:
                raise ValueError(f"bad monomial {term!r}")
        terms[(e1, e2)] = terms.get((e1, e2), 0) + c
    den: Dict[LinForm, int] = {}
    if m.group("den") != "1":
        for f in _FORM_RE.finditer(m.group("den")):
            scale, form = LinForm.normalize(*_parse_linear(f.group(1)))
            if scale != 1:
                raise ValueError(f"non-primitive form in {text!r}")
            den[form] = den.get(form, 0) + int(f.group(2))
    return RatFunc.make(Fraction(m.group("scalar")), Poly2(terms), den)


# -- truncated series in h ------------------------------------------------

def generalized_binomial(e: int, j: int) -> int:
    """C(e, j) for any integer e and j >= 0, via the falling factorial."""
    if j < 0:
        raise ValueError("j must be non-negative")
    num = 1
    for t in range(j):
        num *= e - t
    return num // math.factorial(j)


class HSeries:
    """Truncated series ``sum_{j<=order} coeffs[j] h^j`` over Q(lam1, lam2)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[RatFunc], order: Optional[int] = None):
        coeffs = tuple(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = coeffs[: order + 1] + (ZERO,) * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def constant(cls, c, order: int) -> "HSeries":
        c = c if isinstance(c, RatFunc) else RatFunc.const(c)
        return cls([c], order)

    def coeff(self, j: int) -> RatFunc:
        if not 0 <= j <= self.order:
            raise IndexError(f"coefficient h^{j} outside 0..{self.order}")
        return self.coeffs[j]

    def __mul__(self, other: "HSeries") -> "HSeries":
        n = min(self.order, other.order)
        xs, ys = self.coeffs, other.coeffs
        out = []
        for j in range(n + 1):
            acc = ZERO
            for i in range(j + 1):
                if xs[i].is_zero() or ys[j - i].is_zero():
                    continue
                acc = acc + xs[i] * ys[j - i]
            out.append(acc)
        return HSeries(out, n)

    def coeff_of_product(self, other: "HSeries", j: int) -> RatFunc:
        """Single coefficient of ``self * other`` without forming the product."""
        if j > min(self.order, other.order):
            raise IndexError(f"coefficient h^{j} beyond truncation order")
        acc = ZERO
        for i in range(j + 1):
            a, b = self.coeffs[i], other.coeffs[j - i]
            if not (a.is_zero() or b.is_zero()):
                acc = acc + a * b
        return acc

    def __eq__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        return self.order == other.order and all(
            ratfunc_eq(a, b) for a, b in zip(self.coeffs, other.coeffs)
        )

    def __repr__(self):
        return "HSeries(" + ", ".join(c.to_text() for c in self.coeffs) + ")"


def hseries_from_factor(base: Tuple[int, int], exponent: int, order: int) -> HSeries:
    """Taylor expansion of ``(a*lam1 + b*lam2 + h) ** exponent`` about h = 0."""
    a, b = base
    if a == 0 and b == 0:
        raise ValueError("zero base form")
    coeffs = []
    for j in range(order + 1):
        c = generalized_binomial(exponent, j)
        if c == 0:
            coeffs.append(ZERO)
        else:
            coeffs.append(RatFunc.form_power(a, b, exponent - j).scale(c))
    return HSeries(coeffs, order)
