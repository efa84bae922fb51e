"""Exact homogeneous polynomials in x, y, z over the rationals.

A :class:`HomogPoly` is a sparse map from exponent triples ``(i, j, k)`` with
``i + j + k == degree`` to nonzero rational coefficients.  Coefficients that
happen to be integers are kept as Python ints internally (they compare and
combine exactly with :class:`fractions.Fraction`), which keeps the common
integer-primitive case fast.

Term order everywhere is graded lexicographic with ``x > y > z``; for
homogeneous polynomials this is plain lexicographic order on exponents.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import InvalidInput

Rational = Fraction
Exponent = tuple[int, int, int]
Number = Union[int, Fraction]

VARIABLES = ("x", "y", "z")

__all__ = [
    "Rational",
    "HomogPoly",
    "poly_mul",
    "poly_gcd",
    "multiplicity_at",
    "normalize_point",
    "parse_poly",
    "format_poly",
]


def _num(value: Number | str) -> Number:
    if isinstance(value, bool):
        raise InvalidInput("boolean is not a coefficient")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    raise InvalidInput(f"unsupported coefficient {value!r}")


class HomogPoly:
    """Immutable homogeneous polynomial in x, y, z with rational coefficients."""

    __slots__ = ("degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: Mapping[Exponent, Number] | None = None) -> None:
        if degree < 0:
            raise InvalidInput("degree must be nonnegative")
        clean: dict[Exponent, Number] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != 3 or min(exp) < 0 or sum(exp) != degree:
                raise InvalidInput(f"exponent {exp} does not have total degree {degree}")
            c = _num(coeff)
            if c:
                clean[exp] = c  # type: ignore[index]
        self.degree = degree
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, degree: int, terms: dict[Exponent, Number]) -> HomogPoly:
        # Trusted constructor: terms already homogeneous, nonzero, normalized.
        obj = cls.__new__(cls)
        obj.degree = degree
        obj._terms = terms
        obj._hash = None
        return obj

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, degree: int = 0) -> HomogPoly:
        return cls._raw(degree, {})

    @classmethod
    def constant(cls, value: Number = 1) -> HomogPoly:
        c = _num(value)
        return cls._raw(0, {(0, 0, 0): c} if c else {})

    @classmethod
    def var(cls, name: str) -> HomogPoly:
        idx = VARIABLES.index(name)
        exp = [0, 0, 0]
        exp[idx] = 1
        return cls._raw(1, {tuple(exp): 1})  # type: ignore[dict-item]

    @classmethod
    def linear(cls, a: Number, b: Number, c: Number) -> HomogPoly:
        return cls(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    @classmethod
    def monomial(cls, exp: Exponent, coeff: Number = 1) -> HomogPoly:
        return cls(sum(exp), {exp: coeff})

    # basic protocol --------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return {e: Fraction(c) for e, c in self._terms.items()}

    def items(self) -> Iterator[tuple[Exponent, Number]]:
        return iter(self._terms.items())

    def coeff(self, exp: Exponent) -> Fraction:
        return Fraction(self._terms.get(exp, 0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"HomogPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    def sorted_terms(self) -> list[tuple[Exponent, Number]]:
        return sorted(self._terms.items(), reverse=True)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise InvalidInput("zero polynomial has no leading term")
        exp = max(self._terms)
        return exp, Fraction(self._terms[exp])

    # arithmetic ------------------------------------------------------------

    def _check_same_degree(self, other: HomogPoly) -> int:
        if not self._terms:
            return other.degree
        if not other._terms:
            return self.degree
        if self.degree != other.degree:
            raise InvalidInput("sum of forms of different degrees is not homogeneous")
        return self.degree

    def __add__(self, other: HomogPoly) -> HomogPoly:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        degree = self._check_same_degree(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _num(s)
            else:
                out.pop(e, None)
        return HomogPoly._raw(degree, out)

    def __neg__(self) -> HomogPoly:
        return HomogPoly._raw(self.degree, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: HomogPoly) -> HomogPoly:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Number) -> HomogPoly:
        f = _num(factor)
        if not f:
            return HomogPoly.zero(self.degree)
        return HomogPoly._raw(self.degree, {e: _num(c * f) for e, c in self._terms.items()})

    def __mul__(self, other: HomogPoly | Number) -> HomogPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return HomogPoly._raw(self.degree + other.degree, _mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> HomogPoly:
        if k < 0:
            raise InvalidInput("negative power")
        result = HomogPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # evaluation and substitution -----------------------------------------

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        a, b, c = (Fraction(v) for v in point)
        return sum((Fraction(co) * a**i * b**j * c**k for (i, j, k), co in self._terms.items()),
                   Fraction(0))

    def substitute(self, images: Sequence[HomogPoly]) -> HomogPoly:
        """Return ``self(images[0], images[1], images[2])``.

        Nested Horner evaluation: in x over binary forms in y, z, so every
        step multiplies by one of the (usually small) image polynomials.
        """
        g0, g1, g2 = images
        if not (g0.degree == g1.degree == g2.degree):
            raise InvalidInput("substituted forms must share a degree")
        d = g0.degree
        n = self.degree
        if not self._terms:
            return HomogPoly.zero(n * d)
        by_x: dict[int, dict[int, Number]] = {}
        for (i, j, _k), c in self._terms.items():
            by_x.setdefault(i, {})[j] = c
        zpow = [{(0, 0, 0): 1}]
        for _ in range(n):
            zpow.append(_mul_terms(zpow[-1], g2._terms))
        acc: dict[Exponent, Number] = {}
        for i in range(n, -1, -1):
            if acc:
                acc = _mul_terms(acc, g0._terms)
            row = by_x.get(i)
            if not row:
                continue
            rest = n - i
            b: dict[Exponent, Number] = {}
            for j in range(max(row), -1, -1):
                if b:
                    b = _mul_terms(b, g1._terms)
                c = row.get(j)
                if c:
                    _axpy(b, c, zpow[rest - j])
            _axpy(acc, 1, b)
        return HomogPoly._raw(n * d, acc)

    def linear_substitute(self, matrix: Sequence[Sequence[Number]]) -> HomogPoly:
        """Return ``self(M @ (x, y, z))`` for a 3x3 matrix ``M``."""
        forms = [HomogPoly.linear(*row) for row in matrix]
        return self.substitute(forms)

    # content and normalization ---------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self / c integral and primitive."""
        if not self._terms:
            return Fraction(0)
        return _content(self._terms.values())

    def integer_terms(self) -> dict[Exponent, int]:
        """Coefficients scaled to coprime integers with positive leading term."""
        if not self._terms:
            return {}
        c = self.content()
        lead = self._terms[max(self._terms)]
        if lead < 0:
            c = -c
        if c.denominator == 1 and all(type(co) is int for co in self._terms.values()):
            k = c.numerator
            return {e: co // k for e, co in self._terms.items()}
        return {e: (co / c).numerator for e, co in self._terms.items()}

    def primitive(self) -> HomogPoly:
        return HomogPoly._raw(self.degree, dict(self.integer_terms()))

    def monic(self) -> HomogPoly:
        if not self._terms:
            return self
        lead = Fraction(self._terms[max(self._terms)])
        return HomogPoly._raw(self.degree, {e: _num(c / lead) for e, c in self._terms.items()})

    def divexact(self, other: HomogPoly) -> HomogPoly:
        """Exact division; raises InvalidInput if ``other`` does not divide."""
        quotient, remainder = _divmod(self, other)
        if remainder:
            raise InvalidInput("division is not exact")
        return quotient

    def divides(self, other: HomogPoly) -> bool:
        """True iff ``self`` divides ``other``."""
        if not self._terms:
            return not other._terms
        if other.degree < self.degree and other._terms:
            return False
        return not _divmod(other, self)[1]

    def monomial_valuation(self) -> Exponent:
        """Exponent of the largest monomial dividing every term."""
        if not self._terms:
            return (0, 0, 0)
        exps = list(self._terms)
        return tuple(min(e[t] for e in exps) for t in range(3))  # type: ignore[return-value]

    def shift_down(self, exp: Exponent) -> HomogPoly:
        """Divide by the monomial ``x^a y^b z^c``; exact by precondition."""
        a, b, c = exp
        out = {(i - a, j - b, k - c): co for (i, j, k), co in self._terms.items()}
        if any(min(e) < 0 for e in out):
            raise InvalidInput("monomial does not divide")
        return HomogPoly._raw(self.degree - a - b - c, out)

    def permute_exponents(self, perm: Sequence[int]) -> HomogPoly:
        return HomogPoly._raw(self.degree, {tuple(e[p] for p in perm): c
                                            for e, c in self._terms.items()})  # type: ignore[misc]


def _mul_terms(a: Mapping[Exponent, Number],
               b: Mapping[Exponent, Number]) -> dict[Exponent, Number]:
    out: dict[Exponent, Number] = {}
    get = out.get
    for (i, j, k), ca in a.items():
        for (p, q, r), cb in b.items():
            e = (i + p, j + q, k + r)
            out[e] = get(e, 0) + ca * cb
    return {e: _num(c) for e, c in out.items() if c}


def _axpy(acc: dict[Exponent, Number], factor: Number, terms: Mapping[Exponent, Number]) -> None:
    for e, c in terms.items():
        s = acc.get(e, 0) + factor * c
        if s:
            acc[e] = _num(s)
        else:
            acc.pop(e, None)


def _content(values: Iterable[Number]) -> Fraction:
    nums = 0
    dens = 1
    for v in values:
        f = Fraction(v)
        nums = math.gcd(nums, f.numerator)
        dens = dens * f.denominator // math.gcd(dens, f.denominator)
    return Fraction(nums, dens)


def _divmod(p: HomogPoly, q: HomogPoly) -> tuple[HomogPoly, HomogPoly]:
    if not q._terms:
        raise InvalidInput("division by zero polynomial")
    if not p._terms:
        return HomogPoly.zero(max(p.degree - q.degree, 0)), HomogPoly.zero(p.degree)
    qd = q.degree
    if p.degree < qd:
        return HomogPoly.zero(0), p
    lead_e = max(q._terms)
    lead_c = Fraction(q._terms[lead_e])
    rem = dict(p._terms)
    quot: dict[Exponent, Number] = {}
    remainder: dict[Exponent, Number] = {}
    while rem:
        e = max(rem)
        c = rem[e]
        shift = (e[0] - lead_e[0], e[1] - lead_e[1], e[2] - lead_e[2])
        if min(shift) < 0:
            remainder[e] = rem.pop(e)
            continue
        factor = _num(c / lead_c)
        quot[shift] = factor
        for (i, j, k), cq in q._terms.items():
            t = (i + shift[0], j + shift[1], k + shift[2])
            s = rem.get(t, 0) - factor * cq
            if s:
                rem[t] = _num(s)
            else:
                rem.pop(t, None)
    return HomogPoly._raw(p.degree - qd, quot), HomogPoly._raw(p.degree, remainder)


# ---------------------------------------------------------------------------
# gcd: dehomogenize at z = 1, then subresultant PRS in y over Z[x]
# ---------------------------------------------------------------------------

UPoly = list  # dense univariate over Z, index = exponent, no trailing zeros


def _u_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _u_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _u_trim(out)


def _u_neg(a: list[int]) -> list[int]:
    return [-c for c in a]


def _u_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _u_trim(out)


def _u_pow(a: list[int], k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = _u_mul(out, a)
    return out


def _u_content(a: list[int]) -> int:
    return reduce(math.gcd, a, 0)


def _u_divexact(a: list[int], b: list[int]) -> list[int]:
    if not b:
        raise ZeroDivisionError
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        if a:
            raise ArithmeticError("inexact univariate division")
        return []
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        qc, r = divmod(c, lb)
        if r:
            raise ArithmeticError("inexact univariate division")
        q[i - db] = qc
        for j, cb in enumerate(b):
            a[i - db + j] -= qc * cb
    if any(a):
        raise ArithmeticError("inexact univariate division")
    return _u_trim(q)


def _u_prem(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while a and len(a) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [lb * v for v in a]
        for j, cb in enumerate(b):
            a[shift + j] -= c * cb
        _u_trim(a)
    return a


def _u_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive-PRS gcd in Z[x], positive leading coefficient."""
    if not a:
        return _u_normal(b)
    if not b:
        return _u_normal(a)
    ca, cb = _u_content(a), _u_content(b)
    c = math.gcd(ca, cb)
    a = [v // ca for v in a]
    b = [v // cb for v in b]
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _u_prem(a, b)
        a = b
        if r:
            cr = _u_content(r)
            b = [v // cr for v in r]
        else:
            b = []
    out = _u_normal(a)
    return [c * v for v in out]


def _u_normal(a: list[int]) -> list[int]:
    if not a:
        return []
    c = _u_content(a)
    if a[-1] < 0:
        c = -c
    return [v // c for v in a]


BPoly = list  # dense in y, coefficients UPoly in x


def _b_trim(a: list[list[int]]) -> list[list[int]]:
    while a and not a[-1]:
        a.pop()
    return a


def _b_content(a: list[list[int]]) -> list[int]:
    g: list[int] = []
    for coeff in a:
        if coeff:
            g = _u_gcd(g, coeff)
            if len(g) == 1:
                return [1]
    return g


def _b_divexact_u(a: list[list[int]], u: list[int]) -> list[list[int]]:
    return [_u_divexact(c, u) if c else [] for c in a]


def _b_prem(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    # Scaled by exactly lc(b)^(deg a - deg b + 1), as the subresultant
    # recurrence requires.
    a = [list(c) for c in a]
    db = len(b) - 1
    lb = b[-1]
    steps = len(a) - db
    while a and len(a) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [_u_mul(lb, v) for v in a]
        for j, cb in enumerate(b):
            a[shift + j] = _u_add(a[shift + j], _u_neg(_u_mul(c, cb)))
        _b_trim(a)
        steps -= 1
    if a and steps > 0:
        scale = _u_pow(lb, steps)
        a = [_u_mul(scale, v) for v in a]
    return a


def _b_gcd(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """gcd in Z[x][y] via content in Z[x] and the subresultant PRS in y."""
    if not a:
        return b
    if not b:
        return a
    ca, cb = _b_content(a), _b_content(b)
    cont = _u_gcd(ca, cb)
    a = _b_divexact_u(a, ca)
    b = _b_divexact_u(b, cb)
    if len(a) < len(b):
        a, b = b, a
    g: list[int] = [1]
    h: list[int] = [1]
    while True:
        delta = len(a) - len(b)
        r = _b_prem(a, b)
        if not r:
            break
        if len(r) == 1:
            b = [[1]]
            break
        divisor = _u_mul(g, _u_pow(h, delta))
        a, b = b, _b_divexact_u(r, divisor)
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _u_divexact(_u_pow(g, delta), _u_pow(h, delta - 1))
    prim = _b_divexact_u(b, _b_content(b))
    return [_u_mul(cont, c) for c in prim]


def _to_bpoly(p: HomogPoly) -> list[list[int]]:
    """Integer dehomogenization at z = 1: list over y-degree of lists over x-degree."""
    terms = p.integer_terms()
    deg_y = max(j for (_, j, _) in terms)
    out: list[list[int]] = [[] for _ in range(deg_y + 1)]
    for (i, j, _k), c in terms.items():
        row = out[j]
        if len(row) <= i:
            row.extend([0] * (i + 1 - len(row)))
        row[i] += c
    for row in out:
        _u_trim(row)
    return out


def _from_bpoly(b: list[list[int]]) -> HomogPoly:
    d = max(j + len(row) - 1 for j, row in enumerate(b) if row)
    terms = {}
    for j, row in enumerate(b):
        for i, c in enumerate(row):
            if c:
                terms[(i, j, d - i - j)] = c
    return HomogPoly._raw(d, terms)


def poly_mul(p: HomogPoly, q: HomogPoly) -> HomogPoly:
    return p * q


def poly_gcd(p: HomogPoly, q: HomogPoly) -> HomogPoly:
    """Greatest common divisor, monic under graded-lex order.

    Powers of z are split off first so that dehomogenizing at z = 1 is a
    faithful map on what remains; the affine part goes through an exact
    subresultant remainder sequence.
    """
    if p.is_zero() and q.is_zero():
        raise InvalidInput("gcd of two zero polynomials")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    zp = p.monomial_valuation()[2]
    zq = q.monomial_valuation()[2]
    pz = p.shift_down((0, 0, zp))
    qz = q.shift_down((0, 0, zq))
    g = _from_bpoly(_b_gcd(_to_bpoly(pz), _to_bpoly(qz)))
    zk = min(zp, zq)
    if zk:
        g = g * HomogPoly.monomial((0, 0, zk))
    return g.monic()


def gcd_many(polys: Iterable[HomogPoly]) -> HomogPoly:
    result: HomogPoly | None = None
    for f in polys:
        if f.is_zero():
            continue
        result = f.monic() if result is None else poly_gcd(result, f)
        if result.degree == 0:
            return HomogPoly.constant(1)
    if result is None:
        raise InvalidInput("gcd of zero polynomials")
    return result


# ---------------------------------------------------------------------------
# points and multiplicities
# ---------------------------------------------------------------------------


def normalize_point(pt: Sequence[Number | str]) -> tuple[int, int, int]:
    """Primitive integer representative with first nonzero coordinate positive."""
    if len(pt) != 3:
        raise InvalidInput("projective points need three coordinates")
    fr = [Fraction(v) for v in pt]
    if not any(fr):
        raise InvalidInput("(0:0:0) is not a projective point")
    lcm = 1
    for v in fr:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in fr]
    g = reduce(math.gcd, ints, 0)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v)
    if first < 0:
        ints = [-v for v in ints]
    return (ints[0], ints[1], ints[2])


def multiplicity_at(p: HomogPoly, pt: Sequence[Number], upper: int | None = None) -> int:
    """Order of vanishing of ``p`` at the projective point ``pt``.

    The point is translated to the origin of an affine chart where one of
    its coordinates is nonzero (an exact invertible linear change fixing
    the chart coordinate), and the lowest total degree of the expansion is
    returned.  Taylor coefficients are computed order by order in integer
    arithmetic, so low multiplicities are cheap.

    With ``upper`` given, the result is ``min(order, upper)``.
    """
    if p.is_zero():
        raise InvalidInput("multiplicity of the zero polynomial is undefined")
    q = normalize_point(pt)
    chart = max(range(3), key=lambda t: (q[t] != 0, -abs(q[t])))
    u, v = [t for t in range(3) if t != chart]
    a, b, c = q[u], q[v], q[chart]
    terms = p.integer_terms()
    n = p.degree
    apow = [1]
    bpow = [1]
    cpow = [1]
    for _ in range(n):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * b)
        cpow.append(cpow[-1] * c)
    rows = [(e[u], e[v], co * cpow[e[chart]]) for e, co in terms.items()]
    # A nonzero form of degree n has order at most n, so reaching ``top``
    # without a surviving coefficient settles the answer.
    top = n if upper is None else min(n, upper)
    for order in range(top):
        for s in range(order + 1):
            t = order - s
            total = 0
            for eu, ev, co in rows:
                if eu >= s and ev >= t:
                    total += co * math.comb(eu, s) * apow[eu - s] * math.comb(ev, t) * bpow[ev - t]
            if total:
                return order
    return top


# ---------------------------------------------------------------------------
# text format: sums of c*x^i*y^j*z^k
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"([+-]{0,2})([^+-]+)")
_RATIONAL_RE = re.compile(r"^\d+(/\d+)?$")
_POWER_RE = re.compile(r"^([xyz])(?:\^(\d+))?$")


def parse_poly(text: str, degree: int | None = None) -> HomogPoly:
    """Parse ``c*x^i*y^j*z^k + ...``; rejects non-homogeneous input."""
    src = text.replace(" ", "").replace("**", "^")
    if not src:
        raise InvalidInput("empty polynomial")
    pos = 0
    terms: dict[Exponent, Number] = {}
    degrees: set[int] = set()
    for m in _TERM_RE.finditer(src):
        if m.start() != pos:
            raise InvalidInput(f"cannot parse polynomial {text!r}")
        pos = m.end()
        # "+ -3*x" is accepted as well as "- 3*x"
        sign = -1 if m.group(1).count("-") % 2 else 1
        coeff: Number = sign
        exp = [0, 0, 0]
        for factor in m.group(2).split("*"):
            if _RATIONAL_RE.match(factor):
                coeff = _num(coeff * Fraction(factor))
                continue
            pm = _POWER_RE.match(factor)
            if not pm:
                raise InvalidInput(f"bad factor {factor!r} in {text!r}")
            exp[VARIABLES.index(pm.group(1))] += int(pm.group(2) or 1)
        key = (exp[0], exp[1], exp[2])
        degrees.add(sum(key))
        s = _num(terms.get(key, 0) + coeff)
        if s:
            terms[key] = s
        else:
            terms.pop(key, None)
    if pos != len(src):
        raise InvalidInput(f"cannot parse polynomial {text!r}")
    if len(degrees) > 1:
        raise InvalidInput(f"polynomial {text!r} is not homogeneous")
    d = degrees.pop()
    if not terms:
        return HomogPoly.zero(degree if degree is not None else d)
    if degree is not None and degree != d:
        raise InvalidInput(f"expected degree {degree}, got {d}")
    return HomogPoly._raw(d, terms)


def _format_monomial(exp: Exponent) -> str:
    parts = []
    for name, e in zip(VARIABLES, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: HomogPoly) -> str:
    if p.is_zero():
        return "0"
    out: list[str] = []
    for exp, c in p.sorted_terms():
        mono = _format_monomial(exp)
        mag = abs(Fraction(c))
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)
