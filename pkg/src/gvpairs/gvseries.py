"""Formal q-series over an effective curve-class lattice.

Curve classes are tuples in Z^r_{>=0}; the degree of a class is its pairing
with a fixed positive integer vector, and every series is truncated at a
degree cutoff.  Tables of invariants (n_0, n_1, P_0, ...) are plain dicts
``{class_tuple: Fraction}``; the generating series themselves are
:class:`QSeries`.

The transforms implemented here:

* genus 0:  GW_{0,b} = sum_{d|b} d^{n-3} n_{0,b/d}
* genus 1:  GW_1 = sum n_1 sigma(d)/d q^{db} + (1/24) sum n_0(c_2) log(1-q^b)
                   - (1/24) sum m_{b1,b2} log(1-q^{b1+b2})
* pairs:    sum P_{0,b} q^b = prod M(q^b)^{n_{1,b}}
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Class = Tuple[int, ...]
Table = Dict[Class, Fraction]
Rational = Union[int, Fraction]

__all__ = [
    "IntegralityError",
    "CutoffError",
    "ClassLattice",
    "QSeries",
    "GeomData",
    "sigma",
    "sigma2",
    "gw0_from_n0",
    "n0_from_gw0",
    "meeting_invariants",
    "genus1_forward",
    "n1_from_genus1",
    "macmahon",
    "macmahon_product",
    "n1_from_p0",
    "genus0_pair_identity",
    "ideal_pn_value",
    "ideal_generating_series",
    "ideal_generating_check",
    "multiple_cover_expand",
    "multiple_cover_check",
]


class IntegralityError(ArithmeticError):
    """A quantity expected to be an integer came out fractional."""

    def __init__(self, what: str, beta, value):
        self.what = what
        self.beta = beta
        self.value = value
        super().__init__(f"{what} at class {beta} is not an integer: {value}")


class CutoffError(ValueError):
    pass


def _key(beta) -> Class:
    if isinstance(beta, int):
        return (beta,)
    return tuple(int(b) for b in beta)


def _is_integer(x) -> bool:
    return Fraction(x).denominator == 1


@dataclass(frozen=True)
class ClassLattice:
    """Effective classes Z^r_{>=0} with a positive degree vector and a cutoff."""

    rank: int
    degree_vector: Tuple[int, ...]
    cutoff: int

    def __post_init__(self):
        dv = tuple(int(d) for d in self.degree_vector)
        object.__setattr__(self, "degree_vector", dv)
        if self.rank < 1 or len(dv) != self.rank:
            raise ValueError("degree vector length must equal the rank (>= 1)")
        if any(d <= 0 for d in dv):
            raise ValueError("degree vector entries must be positive")
        if self.cutoff < 0:
            raise ValueError("cutoff must be non-negative")

    @classmethod
    def rank1(cls, cutoff: int) -> "ClassLattice":
        return cls(1, (1,), cutoff)

    @property
    def zero(self) -> Class:
        return (0,) * self.rank

    def deg(self, beta) -> int:
        return sum(d * b for d, b in zip(self.degree_vector, _key(beta)))

    def contains(self, beta) -> bool:
        beta = _key(beta)
        return len(beta) == self.rank and all(b >= 0 for b in beta) and self.deg(beta) <= self.cutoff

    def classes(self, include_zero: bool = True) -> List[Class]:
        """All represented classes, ordered by (degree, tuple)."""
        ranges = [range(self.cutoff // d + 1) for d in self.degree_vector]
        out = [b for b in itertools.product(*ranges) if self.deg(b) <= self.cutoff]
        if not include_zero:
            out = [b for b in out if any(b)]
        return sorted(out, key=lambda b: (self.deg(b), b))

    def below(self, beta) -> List[Class]:
        """Classes alpha with 0 <= alpha <= beta componentwise."""
        beta = _key(beta)
        return [a for a in itertools.product(*(range(b + 1) for b in beta))]

    def divisors(self, beta) -> List[int]:
        """Positive d such that beta / d is an integral class."""
        g = 0
        for b in _key(beta):
            g = math.gcd(g, b)
        return [d for d in range(1, g + 1) if g % d == 0]


class QSeries:
    """Truncated formal series ``sum_b c_b q^b`` over a :class:`ClassLattice`."""

    __slots__ = ("lattice", "coeffs")

    def __init__(self, lattice: ClassLattice, coeffs: Optional[Mapping] = None):
        self.lattice = lattice
        out: Dict[Class, Fraction] = {}
        for b, c in (coeffs or {}).items():
            b = _key(b)
            c = Fraction(c)
            if c == 0:
                continue
            if not lattice.contains(b):
                if len(b) == lattice.rank and all(x >= 0 for x in b):
                    continue  # beyond the cutoff: truncated away
                raise ValueError(f"class {b} is not effective in a rank-{lattice.rank} lattice")
            out[b] = c
        self.coeffs = out

    @classmethod
    def one(cls, lattice: ClassLattice) -> "QSeries":
        return cls(lattice, {lattice.zero: 1})

    def __getitem__(self, beta) -> Fraction:
        return self.coeffs.get(_key(beta), Fraction(0))

    def constant(self) -> Fraction:
        return self[self.lattice.zero]

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.lattice == other.lattice and self.coeffs == other.coeffs

    def __repr__(self):
        items = ", ".join(f"{b}: {c}" for b, c in sorted(self.coeffs.items(), key=lambda t: (self.lattice.deg(t[0]), t[0])))
        return f"QSeries({{{items}}}, cutoff={self.lattice.cutoff})"

    def _check(self, other: "QSeries"):
        if self.lattice != other.lattice:
            raise ValueError("series live on different lattices")

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            out[b] = out.get(b, 0) + c
        return QSeries(self.lattice, out)

    def __neg__(self) -> "QSeries":
        return QSeries(self.lattice, {b: -c for b, c in self.coeffs.items()})

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, c: Rational) -> "QSeries":
        return QSeries(self.lattice, {b: v * c for b, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        lat = self.lattice
        out: Dict[Class, Fraction] = {}
        for a, u in self.coeffs.items():
            da = lat.deg(a)
            for b, v in other.coeffs.items():
                if da + lat.deg(b) > lat.cutoff:
                    continue
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + u * v
        return QSeries(lat, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = QSeries.one(self.lattice)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "QSeries":
        c0 = self.constant()
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        lat = self.lattice
        out: Dict[Class, Fraction] = {}
        for g in lat.classes():
            if not any(g):
                out[g] = 1 / c0
                continue
            acc = Fraction(0)
            for a, u in self.coeffs.items():
                if any(a) and all(x <= y for x, y in zip(a, g)):
                    rest = tuple(y - x for x, y in zip(a, g))
                    acc += u * out.get(rest, 0)
            out[g] = -acc / c0
        return QSeries(lat, out)

    def exp(self) -> "QSeries":
        """exp of a series without constant term (finite sum under truncation)."""
        if self.constant() != 0:
            raise ValueError("exp needs a series with zero constant term")
        # Euler-operator recursion: deg(g) F_g = sum_b deg(b) f_b F_{g-b}
        lat = self.lattice
        out: Dict[Class, Fraction] = {}
        for g in lat.classes():
            if not any(g):
                out[g] = Fraction(1)
                continue
            acc = Fraction(0)
            for b, u in self.coeffs.items():
                if all(x <= y for x, y in zip(b, g)):
                    rest = tuple(y - x for x, y in zip(b, g))
                    acc += lat.deg(b) * u * out.get(rest, 0)
            out[g] = acc / lat.deg(g)
        return QSeries(lat, out)

    def log(self) -> "QSeries":
        """log of a series with constant term 1."""
        if self.constant() != 1:
            raise ValueError("log needs a series with constant term 1")
        lat = self.lattice
        out: Dict[Class, Fraction] = {}
        for g in lat.classes(include_zero=False):
            dg = lat.deg(g)
            acc = dg * self[g]
            for a, u in self.coeffs.items():
                if any(a) and a != g and all(x <= y for x, y in zip(a, g)):
                    rest = tuple(y - x for x, y in zip(a, g))
                    acc -= u * lat.deg(rest) * out.get(rest, 0)
            out[g] = acc / dg
        return QSeries(lat, out)

    def to_table(self, include_zero: bool = False) -> Table:
        return {b: c for b, c in self.coeffs.items() if include_zero or any(b)}


def _table(t: Optional[Mapping]) -> Table:
    return {_key(b): Fraction(c) for b, c in (t or {}).items()}


def _require_integral(table: Table, what: str) -> Table:
    for b, v in sorted(table.items()):
        if not _is_integer(v):
            raise IntegralityError(what, b, v)
    return table


def sigma(d: int) -> int:
    """Sum of positive divisors of d."""
    if d < 1:
        raise ValueError("sigma is defined for d >= 1")
    return sum(i for i in range(1, d + 1) if d % i == 0)


def sigma2(d: int) -> int:
    """Sum of squares of the positive divisors of d."""
    if d < 1:
        raise ValueError("sigma2 is defined for d >= 1")
    return sum(i * i for i in range(1, d + 1) if d % i == 0)


def _scaled(d: int, beta: Class) -> Class:
    return tuple(d * b for b in beta)


def _div(beta: Class, d: int) -> Class:
    return tuple(b // d for b in beta)


# -- genus zero ----------------------------------------------------------

def gw0_from_n0(n0: Mapping, lattice: ClassLattice, insertion_count: int) -> QSeries:
    """Genus-zero GW series from GV-type invariants with ``insertion_count`` insertions."""
    n0 = _table(n0)
    out: Dict[Class, Fraction] = {}
    for beta in lattice.classes(include_zero=False):
        acc = Fraction(0)
        for d in lattice.divisors(beta):
            v = n0.get(_div(beta, d))
            if v:
                acc += Fraction(d) ** (insertion_count - 3) * v
        out[beta] = acc
    return QSeries(lattice, out)


def n0_from_gw0(gw: QSeries, insertion_count: int, check_integral: bool = True) -> Table:
    """Invert :func:`gw0_from_n0` by induction on degree."""
    if gw.constant() != 0:
        raise ValueError("genus-zero GW series must have zero constant term")
    lat = gw.lattice
    n0: Table = {}
    for beta in lat.classes(include_zero=False):
        acc = gw[beta]
        for d in lat.divisors(beta)[1:]:
            acc -= Fraction(d) ** (insertion_count - 3) * n0[_div(beta, d)]
        n0[beta] = acc
    if check_integral:
        _require_integral(n0, "n_0")
    return n0


# -- meeting invariants and genus one ------------------------------------

@dataclass
class GeomData:
    """Input data for the genus-one transforms: Kunneth matrix and n_0 tables."""

    lattice: ClassLattice
    basis_size: int = 0
    kunneth: List[List[Fraction]] = field(default_factory=list)
    n0_S: Dict[Class, List[Fraction]] = field(default_factory=dict)
    n0_c2: Dict[Class, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        k = self.basis_size
        self.kunneth = [[Fraction(x) for x in row] for row in self.kunneth]
        if len(self.kunneth) != k or any(len(row) != k for row in self.kunneth):
            raise ValueError(f"kunneth must be a {k}x{k} matrix")
        for i in range(k):
            for j in range(k):
                if self.kunneth[i][j] != self.kunneth[j][i]:
                    raise ValueError("kunneth matrix must be symmetric")
        n0_S = {}
        for b, vec in self.n0_S.items():
            b = _key(b)
            if len(vec) != k:
                raise ValueError(f"n0_S at {b} must have {k} entries")
            n0_S[b] = [Fraction(x) for x in vec]
        self.n0_S = n0_S
        self.n0_c2 = _table(self.n0_c2)
        for b in list(self.n0_S) + list(self.n0_c2):
            if not any(b) or not self.lattice.contains(b):
                raise ValueError(f"class {b} outside the positive-degree part of the lattice")

    def pairing(self, b1: Class, b2: Class) -> Fraction:
        """sum_{i,j} n_{0,b1}(S_i) g^{ij} n_{0,b2}(S_j)."""
        u, v = self.n0_S.get(b1), self.n0_S.get(b2)
        if u is None or v is None:
            return Fraction(0)
        k = self.basis_size
        return sum((u[i] * self.kunneth[i][j] * v[j] for i in range(k) for j in range(k)), Fraction(0))


def _decompositions(beta: Class) -> Iterator[Tuple[Class, Class]]:
    """Ordered pairs (b1, b2) of nonzero effective classes with b1 + b2 = beta."""
    for b1 in itertools.product(*(range(b + 1) for b in beta)):
        b2 = tuple(x - y for x, y in zip(beta, b1))
        if any(b1) and any(b2):
            yield b1, b2


def meeting_invariants(g: GeomData, check_integral: bool = True) -> Dict[Tuple[Class, Class], Fraction]:
    """Meeting numbers m_{b1,b2} for all ordered pairs with deg(b1 + b2) <= cutoff.

    Pairs involving a zero or non-effective class vanish and are not stored.
    """
    lat = g.lattice
    table: Dict[Tuple[Class, Class], Fraction] = {}

    def m(b1: Class, b2: Class) -> Fraction:
        if any(x < 0 for x in b1) or any(x < 0 for x in b2):
            return Fraction(0)
        if lat.deg(b1) <= 0 or lat.deg(b2) <= 0:
            return Fraction(0)
        if lat.deg(b1) + lat.deg(b2) > lat.cutoff:
            raise CutoffError(f"meeting invariant m_{{{b1},{b2}}} needs data beyond the cutoff")
        key = (b1, b2) if b1 <= b2 else (b2, b1)
        if key in table:
            return table[key]
        if b1 != b2:
            diff21 = tuple(y - x for x, y in zip(b1, b2))
            diff12 = tuple(x - y for x, y in zip(b1, b2))
            val = g.pairing(b1, b2) + m(b1, diff21) + m(diff12, b2)
        else:
            val = g.n0_c2.get(b1, Fraction(0)) + g.pairing(b1, b1)
            for c1, c2 in _decompositions(b1):
                val -= m(c1, c2)
        if check_integral and not _is_integer(val):
            raise IntegralityError("meeting invariant", key, val)
        table[key] = val
        return val

    classes = lat.classes(include_zero=False)
    out: Dict[Tuple[Class, Class], Fraction] = {}
    for b1 in classes:
        for b2 in classes:
            if lat.deg(b1) + lat.deg(b2) <= lat.cutoff:
                v = m(b1, b2)
                if v:
                    out[(b1, b2)] = v
    return out


def _log_one_minus(lattice: ClassLattice, gamma: Class) -> Dict[Class, Fraction]:
    """Coefficients of log(1 - q^gamma) = -sum_k q^{k gamma} / k."""
    out = {}
    k = 1
    while lattice.deg(_scaled(k, gamma)) <= lattice.cutoff:
        out[_scaled(k, gamma)] = Fraction(-1, k)
        k += 1
    return out


def _genus1_corrections(g: GeomData, m: Mapping) -> QSeries:
    lat = g.lattice
    out: Dict[Class, Fraction] = {}
    for beta, c in g.n0_c2.items():
        for b, v in _log_one_minus(lat, beta).items():
            out[b] = out.get(b, 0) + Fraction(1, 24) * c * v
    for (b1, b2), c in m.items():
        gamma = tuple(x + y for x, y in zip(_key(b1), _key(b2)))
        for b, v in _log_one_minus(lat, gamma).items():
            out[b] = out.get(b, 0) - Fraction(1, 24) * Fraction(c) * v
    return QSeries(lat, out)


def genus1_forward(n1: Mapping, g: GeomData, m: Optional[Mapping] = None) -> QSeries:
    """Genus-one GW series from n_1, the c_2 insertions and the meeting numbers."""
    lat = g.lattice
    if m is None:
        m = meeting_invariants(g)
    n1 = _table(n1)
    out: Dict[Class, Fraction] = {}
    for beta, v in n1.items():
        d = 1
        while lat.deg(_scaled(d, beta)) <= lat.cutoff:
            b = _scaled(d, beta)
            out[b] = out.get(b, 0) + v * Fraction(sigma(d), d)
            d += 1
    return QSeries(lat, out) + _genus1_corrections(g, m)


def n1_from_genus1(gw1: QSeries, g: GeomData, m: Optional[Mapping] = None,
                   check_integral: bool = True) -> Table:
    """Solve the genus-one identity for n_1."""
    if gw1.constant() != 0:
        raise ValueError("genus-one GW series must have zero constant term")
    if m is None:
        m = meeting_invariants(g)
    rest = gw1 - _genus1_corrections(g, m)
    lat = gw1.lattice
    n1: Table = {}
    for beta in lat.classes(include_zero=False):
        acc = rest[beta]
        for d in lat.divisors(beta)[1:]:
            acc -= Fraction(sigma(d), d) * n1[_div(beta, d)]
        n1[beta] = acc
    if check_integral:
        _require_integral(n1, "n_1")
    return n1


# -- MacMahon products ---------------------------------------------------

def macmahon(cutoff: int) -> QSeries:
    """prod_{k>=1} (1 - q^k)^{-k} truncated at q^cutoff, by repeated division."""
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    c = [0] * (cutoff + 1)
    c[0] = 1
    for k in range(1, cutoff + 1):
        for _ in range(k):
            # multiply by 1 / (1 - q^k)
            for n in range(k, cutoff + 1):
                c[n] += c[n - k]
    return QSeries(ClassLattice.rank1(cutoff), {(n,): v for n, v in enumerate(c)})


def _log_macmahon_at(lattice: ClassLattice, beta: Class) -> Dict[Class, Fraction]:
    """log M(q^beta) = sum_n sigma2(n)/n q^{n beta}."""
    out = {}
    n = 1
    while lattice.deg(_scaled(n, beta)) <= lattice.cutoff:
        out[_scaled(n, beta)] = Fraction(sigma2(n), n)
        n += 1
    return out


def macmahon_product(n1: Mapping, lattice: ClassLattice, check_integral: bool = True) -> QSeries:
    """prod_b M(q^b)^{n_{1,b}} via exp(sum_b n_{1,b} log M(q^b))."""
    n1 = _table(n1)
    log_coeffs: Dict[Class, Fraction] = {}
    for beta, v in n1.items():
        if not any(beta):
            raise ValueError("n_1 is not defined at the zero class")
        if check_integral and not _is_integer(v):
            raise IntegralityError("n_1 input", beta, v)
        for b, c in _log_macmahon_at(lattice, beta).items():
            log_coeffs[b] = log_coeffs.get(b, 0) + v * c
    out = QSeries(lattice, log_coeffs).exp()
    if check_integral:
        _require_integral(out.coeffs, "P_0")
    return out


def _as_p0_series(p0, lattice: Optional[ClassLattice]) -> QSeries:
    if isinstance(p0, QSeries):
        series = p0
    else:
        if lattice is None:
            raise ValueError("a lattice is required when P_0 is given as a table")
        table = _table(p0)
        table.setdefault(lattice.zero, Fraction(1))
        series = QSeries(lattice, table)
    if series.constant() != 1:
        raise ValueError("P_0 at the zero class must be 1")
    return series


def n1_from_p0(p0, lattice: Optional[ClassLattice] = None, check_integral: bool = True) -> Table:
    """Recover n_1 from the P_0 series by inverting the MacMahon product."""
    series = _as_p0_series(p0, lattice)
    lat = series.lattice
    logp = series.log()
    n1: Table = {}
    for beta in lat.classes(include_zero=False):
        acc = logp[beta]
        for d in lat.divisors(beta)[1:]:
            acc -= n1[_div(beta, d)] * Fraction(sigma2(d), d)
        n1[beta] = acc
    if check_integral:
        _require_integral(n1, "n_1")
    return n1


# -- stable pair generating identities -----------------------------------

def genus0_pair_identity(n0_gamma: Mapping, p0, lattice: Optional[ClassLattice] = None) -> QSeries:
    """Predicted P_{1,b}(gamma) = sum_{b1 + b2 = b} n_{0,b1}(gamma) P_{0,b2}."""
    p0s = _as_p0_series(p0, lattice)
    n0 = {b: v for b, v in _table(n0_gamma).items() if any(b)}
    return QSeries(p0s.lattice, n0) * p0s


def ideal_pn_value(p0, n0_gamma: Mapping, n: int, beta, lattice: Optional[ClassLattice] = None) -> Fraction:
    """sum over ordered b0 + b1 + ... + bn = beta of P_{0,b0} prod n_{0,bi}(gamma).

    Brute-force enumeration of the ordered decompositions.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    p0s = _as_p0_series(p0, lattice)
    n0 = _table(n0_gamma)
    n0.pop(p0s.lattice.zero, None)
    beta = _key(beta)
    parts = list(itertools.product(*(range(b + 1) for b in beta)))
    total = Fraction(0)
    for choice in itertools.product(parts, repeat=n):
        used = [sum(c[i] for c in choice) for i in range(len(beta))]
        if any(u > b for u, b in zip(used, beta)):
            continue
        b0 = tuple(b - u for b, u in zip(beta, used))
        term = p0s[b0]
        for c in choice:
            if term == 0:
                break
            term *= n0.get(c, 0)
        total += term
    return total


def ideal_generating_series(p0, n0_gamma: Mapping, y_cutoff: int,
                            lattice: Optional[ClassLattice] = None) -> Dict[int, QSeries]:
    """Left side sum_{n,b} P_{n,b}(gamma)/n! y^n q^b, as {n: q-series}."""
    p0s = _as_p0_series(p0, lattice)
    lat = p0s.lattice
    out = {}
    for n in range(y_cutoff + 1):
        coeffs = {b: ideal_pn_value(p0s, n0_gamma, n, b) / math.factorial(n) for b in lat.classes()}
        out[n] = QSeries(lat, coeffs)
    return out


def ideal_generating_check(p0, n0_gamma: Mapping, n1: Mapping, y_cutoff: int,
                           lattice: Optional[ClassLattice] = None) -> bool:
    """Compare the decomposition sums with prod_b exp(y q^b)^{n_0,b} M(q^b)^{n_1,b}."""
    p0s = _as_p0_series(p0, lattice)
    lat = p0s.lattice
    left = ideal_generating_series(p0s, n0_gamma, y_cutoff)
    mac = macmahon_product(n1, lat, check_integral=False)
    # exp(y N(q)) = sum_n y^n N^n / n!
    n0 = QSeries(lat, {b: v for b, v in _table(n0_gamma).items() if any(b)})
    power = QSeries.one(lat)
    for n in range(y_cutoff + 1):
        right = (power * mac).scale(Fraction(1, math.factorial(n)))
        if right != left[n]:
            return False
        power = power * n0
    return True


# -- multiple cover formula for one-dimensional sheaves ---------------------

def multiple_cover_expand(n1_sheaf: Mapping, n_max: int, cutoff: Optional[int] = None,
                          degree_vector: Optional[Sequence[int]] = None) -> Dict[Tuple[int, Class], Fraction]:
    """N_{n,b} = sum_{k | (n, b)} N_{1, b/k} / k^2 for 1 <= n <= n_max."""
    table = _table(n1_sheaf)
    if not table:
        return {}
    rank = len(next(iter(table)))
    lat = ClassLattice(rank, tuple(degree_vector or (1,) * rank),
                       cutoff if cutoff is not None else max(sum(b) for b in table))
    out: Dict[Tuple[int, Class], Fraction] = {}
    for beta in lat.classes(include_zero=False):
        for n in range(1, n_max + 1):
            g = math.gcd(n, *beta)
            acc = Fraction(0)
            for k in range(1, g + 1):
                if g % k == 0:
                    acc += Fraction(1, k * k) * table.get(_div(beta, k), 0)
            if acc:
                out[(n, beta)] = acc
    return out


def multiple_cover_check(table: Mapping[Tuple[int, object], Rational]) -> bool:
    """Does a table {(n, b): N_{n,b}} obey the multiple cover formula?

    N_{1,b} entries are read from the table itself (missing entries are 0).
    """
    norm = {(int(n), _key(b)): Fraction(v) for (n, b), v in table.items()}
    n1 = {b: v for (n, b), v in norm.items() if n == 1}
    for (n, beta), v in norm.items():
        g = math.gcd(n, *beta)
        expect = sum((Fraction(1, k * k) * n1.get(_div(beta, k), 0) for k in range(1, g + 1) if g % k == 0), Fraction(0))
        if expect != v:
            return False
    return True
