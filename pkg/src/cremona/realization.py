"""Plane Cremona maps as triples of forms, and the polynomial-level oracle.

A quadratic map with centers ``c1, c2, c3`` is ``Q = M . sigma . M^-1``
where the columns of ``M`` are the centers and ``sigma = (yz : xz : xy)``.
Pulling a map back along ``Q`` is done in three substitutions,

    f o Q = ((f o M) o sigma) / (monomial gcd)  o  adj(M),

and the monomial gcd is the whole common factor: the only curves ``sigma``
contracts are the coordinate lines.

Base points are found by elimination after a random integer change of
coordinates.  The multiplicity of the net at a point is the minimum of the
multiplicities of the three forms.  A generic member's lowest-order part at
the point is a generic combination of the three lowest-order parts; the
combination loses order only on a proper subspace of coefficients, so the
minimum is already attained by one of the three forms.

Only proper rational base points are handled.  Completeness is certified
by the identities ``sum nu^2 = n^2 - 1`` and ``sum nu = 3n - 3``: the
extracted points already exhaust both budgets, so nothing can be missing.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

import flint

from .cluster import Cluster
from .errors import (
    CorpusGenerationFailed,
    DegenerateComposition,
    InfinitelyNearOrIrrational,
    InternalInvariantViolation,
    InvalidComposition,
    InvalidInput,
    NonRationalBasePoint,
    SpecialPosition,
)
from .exact_algebra import (
    HomogPoly,
    format_poly,
    gcd_many,
    multiplicity_at,
    normalize_point,
    parse_poly,
)
from .links import compose_quadratic
from .marked_system import HomaloidalType, validate_homaloidal

__all__ = [
    "RationalMap",
    "compose",
    "quadratic_from_points",
    "base_points",
    "homaloidal_type_of",
    "factor_by_quadratics",
    "verify_factorization",
    "is_projective_linear",
    "apply_quadratic_to_point",
    "CorpusEntry",
    "random_corpus",
]

Point = tuple[int, int, int]
Matrix = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

_X = HomogPoly.var("x")
_Y = HomogPoly.var("y")
_Z = HomogPoly.var("z")
_SIGMA_IMAGES = (_Y * _Z, _X * _Z, _X * _Y)


def _normalize_triple(polys: Sequence[HomogPoly]) -> tuple[HomogPoly, HomogPoly, HomogPoly]:
    values = [c for p in polys for _, c in p.items()]
    if not values:
        raise DegenerateComposition("all three forms vanish identically")
    num = 0
    den = 1
    for v in values:
        f = Fraction(v)
        num = math.gcd(num, f.numerator)
        den = den * f.denominator // math.gcd(den, f.denominator)
    scale = Fraction(den, num)
    first = next(p for p in polys if not p.is_zero())
    if first.leading_term()[1] < 0:
        scale = -scale
    out = tuple(p.scale(scale) for p in polys)
    return out  # type: ignore[return-value]


@dataclass(frozen=True)
class RationalMap:
    """``(f0 : f1 : f2)``, coprime forms of one degree, integer and primitive.

    ``centers`` is set on quadratic maps built from three points; it lets
    pullbacks take the three-substitution route.
    """

    polys: tuple[HomogPoly, HomogPoly, HomogPoly]
    centers: tuple[Point, Point, Point] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        polys = tuple(self.polys)
        if len(polys) != 3:
            raise InvalidInput("a plane map has three components")
        nonzero = [p for p in polys if not p.is_zero()]
        if not nonzero:
            raise DegenerateComposition("all three forms vanish identically")
        n = nonzero[0].degree
        if n < 1 or any(p.degree != n for p in nonzero):
            raise InvalidInput("components must share a positive degree")
        polys = tuple(p if not p.is_zero() else HomogPoly.zero(n) for p in polys)
        object.__setattr__(self, "polys", _normalize_triple(polys))

    @classmethod
    def reduced(cls, polys: Sequence[HomogPoly]) -> RationalMap:
        """Divide out the common factor first."""
        g = gcd_many(polys)
        if g.degree > 0:
            polys = [p.divexact(g) if not p.is_zero() else HomogPoly.zero(p.degree - g.degree)
                     for p in polys]
        return cls(tuple(polys))  # type: ignore[arg-type]

    @classmethod
    def identity(cls) -> RationalMap:
        return cls((_X, _Y, _Z))

    @classmethod
    def linear(cls, matrix: Sequence[Sequence[Any]]) -> RationalMap:
        return cls(tuple(HomogPoly.linear(*row) for row in matrix))  # type: ignore[arg-type]

    @property
    def degree(self) -> int:
        return next(p.degree for p in self.polys if not p.is_zero())

    def __call__(self, pt: Sequence[Any]) -> Point:
        vals = [p.evaluate(pt) for p in self.polys]
        return normalize_point(vals)

    def max_digits(self) -> int:
        return max((len(str(abs(Fraction(c).numerator))) for p in self.polys for _, c in p.items()),
                   default=1)

    def to_json(self) -> dict[str, Any]:
        return {"degree": self.degree, "polys": [format_poly(p) for p in self.polys]}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> RationalMap:
        try:
            texts = data["polys"]
            polys = [parse_poly(t) for t in texts]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed map JSON: {exc}") from exc
        n = data.get("degree")
        nonzero = [p for p in polys if not p.is_zero()]
        if not nonzero:
            raise InvalidInput("map JSON has three zero forms")
        d = nonzero[0].degree
        polys = [p if not p.is_zero() else HomogPoly.zero(d) for p in polys]
        m = cls.reduced(polys)
        if n is not None and int(n) != d:
            raise InvalidInput(f"declared degree {n} but forms have degree {d}")
        return m


# ---------------------------------------------------------------------------
# 3x3 integer linear algebra
# ---------------------------------------------------------------------------


def _det(m: Sequence[Sequence[int]]) -> int:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _adj(m: Sequence[Sequence[int]]) -> Matrix:
    def cof(i: int, j: int) -> int:
        return (m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3])
    return tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))  # type: ignore[return-value]


def _mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(m[i][k] * v[k] for k in range(3)) for i in range(3)]


def _forms(m: Sequence[Sequence[int]]) -> list[HomogPoly]:
    return [HomogPoly.linear(*row) for row in m]


def _columns(pts: Sequence[Point]) -> Matrix:
    return tuple(tuple(pts[j][i] for j in range(3)) for i in range(3))  # type: ignore[return-value]


def _collinear(p: Point, q: Point, r: Point) -> bool:
    return _det((p, q, r)) == 0


# ---------------------------------------------------------------------------
# quadratic maps and composition
# ---------------------------------------------------------------------------


def quadratic_from_points(p1: Sequence[Any], p2: Sequence[Any], p3: Sequence[Any]) -> RationalMap:
    pts = tuple(normalize_point(p) for p in (p1, p2, p3))
    if len(set(pts)) < 3:
        raise SpecialPosition("quadratic centers coincide", centers=[list(p) for p in pts])
    if _collinear(*pts):
        raise SpecialPosition("quadratic centers are collinear", centers=[list(p) for p in pts])
    M = _columns(pts)
    u = _forms(_adj(M))
    s = (u[1] * u[2], u[0] * u[2], u[0] * u[1])
    comps = [s[0].scale(M[i][0]) + s[1].scale(M[i][1]) + s[2].scale(M[i][2]) for i in range(3)]
    return RationalMap(tuple(comps), centers=pts)  # type: ignore[arg-type]


def _pull_quadratic(g: RationalMap, centers: Sequence[Point]) -> RationalMap:
    M = _columns(centers)
    g1 = [p.substitute(_forms(M)) for p in g.polys]
    g2 = [p.substitute(_SIGMA_IMAGES) for p in g1]
    nonzero = [p for p in g2 if not p.is_zero()]
    if not nonzero:
        raise DegenerateComposition("composite vanishes identically")
    vals = [p.monomial_valuation() for p in nonzero]
    common = tuple(min(v[t] for v in vals) for t in range(3))
    d = nonzero[0].degree - sum(common)
    g3 = [p.shift_down(common) if not p.is_zero() else HomogPoly.zero(d) for p in g2]
    g4 = [p.substitute(_forms(_adj(M))) for p in g3]
    return RationalMap(tuple(g4))  # type: ignore[arg-type]


def compose(g: RationalMap, f: RationalMap) -> RationalMap:
    """``g o f``: substitute the components of ``f`` into those of ``g``."""
    if f.centers is not None:
        return _pull_quadratic(g, f.centers)
    comps = [p.substitute(f.polys) for p in g.polys]
    if all(p.is_zero() for p in comps):
        raise DegenerateComposition("composite vanishes identically")
    if (f.degree == 1 and is_projective_linear(f) is not None) or \
            (g.degree == 1 and is_projective_linear(g) is not None):
        # an invertible linear factor cannot create a common divisor
        return RationalMap(tuple(comps))  # type: ignore[arg-type]
    d = next(p.degree for p in comps if not p.is_zero())
    comps = [p if not p.is_zero() else HomogPoly.zero(d) for p in comps]
    return RationalMap.reduced(comps)


def is_projective_linear(m: RationalMap) -> tuple[tuple[Fraction, ...], ...] | None:
    """The invertible 3x3 matrix of a degree-1 map, else None."""
    if m.degree != 1:
        return None
    rows = tuple(tuple(p.coeff(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))) for p in m.polys)
    if _det([[int(v) for v in r] for r in rows]) == 0:
        return None
    return rows


def apply_quadratic_to_point(centers: Sequence[Point], q: Sequence[Any]) -> Point:
    """Image of ``q`` under the quadratic map with these centers."""
    M = _columns(centers)
    u = _mat_vec(_adj(M), normalize_point(q))
    zeros = sum(1 for v in u if v == 0)
    if zeros:
        raise SpecialPosition("point lies on a line through two centers", point=list(q))
    s = [u[1] * u[2], u[0] * u[2], u[0] * u[1]]
    return normalize_point(_mat_vec(M, s))


# ---------------------------------------------------------------------------
# base points by elimination
# ---------------------------------------------------------------------------


def _random_unimodularish(rng: random.Random) -> Matrix:
    while True:
        m = tuple(tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(3))
        if _det(m) != 0:
            return m  # type: ignore[return-value]


def _z_poly_at(p: HomogPoly, x0: int) -> Any:
    # p(x0, 1, z) in Z[z]
    coeffs = [0] * (p.degree + 1)
    for (i, _j, k), c in p.items():
        coeffs[k] += int(c) * x0 ** i
    return flint.fmpz_poly(coeffs)


def _resultant_x(h1: HomogPoly, h2: HomogPoly) -> Any:
    """Res_z(h1, h2) at y = 1 as a polynomial in x.

    Both leading z-coefficients are constants, so the resultant specializes
    exactly.  It is sampled at x = 0..n^2 and rebuilt from forward
    differences in the binomial basis.
    """
    top = h1.degree * h2.degree
    vals = [_z_poly_at(h1, x0).resultant(_z_poly_at(h2, x0)) for x0 in range(top + 1)]
    diffs = []
    for _ in range(top + 1):
        diffs.append(int(vals[0]))
        vals = [v - u for u, v in zip(vals, vals[1:])]
    # sum d_k * binom(x, k), Horner from the top
    out = flint.fmpq_poly([diffs[top]])
    for k in range(top, 0, -1):
        out = out * flint.fmpq_poly([flint.fmpq(-(k - 1), k), flint.fmpq(1, k)]) + diffs[k - 1]
    num = out.numer()
    den = out.denom()
    if den != 1:
        raise AssertionError("interpolated resultant is not integral")
    return num


def _z_slice(p: HomogPoly, u: Fraction) -> Any:
    """p(u, 1, z) as an integer polynomial in z (up to a positive scalar)."""
    n = p.degree
    num, den = u.numerator, u.denominator
    coeffs = [0] * (n + 1)
    for (i, _j, k), c in p.primitive().items():
        coeffs[k] += int(c) * num ** i * den ** (n - i)
    return flint.fmpz_poly(coeffs)


def _rational_roots(poly: Any) -> tuple[list[Fraction], list[Any]]:
    roots: list[Fraction] = []
    nonlinear: list[Any] = []
    if poly.degree() <= 0:
        return roots, nonlinear
    _, factors = poly.factor()
    for fac, _e in factors:
        if fac.degree() == 1:
            c0, c1 = int(fac[0]), int(fac[1])
            roots.append(Fraction(-c0, c1))
        elif fac.degree() > 1:
            nonlinear.append(fac)
    return roots, nonlinear


@dataclass(frozen=True)
class _Elimination:
    points: list[tuple[Point, int]]
    nonlinear_x: list[Any]
    h1: HomogPoly
    combo: Callable[[], HomogPoly]


def _eliminate(m: RationalMap, rng: random.Random) -> _Elimination:
    while True:
        T = _random_unimodularish(rng)
        # the z-vertex of the chart must not be a base point
        if any(p.evaluate([row[2] for row in T]) for p in m.polys):
            break
    g = [p.substitute(_forms(T)) for p in m.polys]
    n = m.degree

    def combo() -> HomogPoly:
        # generic member, monic in z so the resultant has full degree
        while True:
            w = [rng.randint(-9, 9) for _ in range(3)]
            h = g[0].scale(w[0]) + g[1].scale(w[1]) + g[2].scale(w[2])
            if h.coeff((0, 0, n)) != 0:
                return h.primitive()

    for _ in range(8):
        h1, h2 = combo(), combo()
        res = _resultant_x(h1, h2)
        if not res.is_zero():
            break
    else:
        raise InfinitelyNearOrIrrational("elimination degenerated for every trial combination")
    xs, nonlinear = _rational_roots(res)
    found: list[tuple[Point, int]] = []
    for u in xs:
        slices = [_z_slice(p, u) for p in g if not p.is_zero()]
        common = slices[0]
        for s in slices[1:]:
            common = common.gcd(s)
        if common.degree() <= 0:
            continue
        zs, bad = _rational_roots(common)
        if bad:
            raise NonRationalBasePoint("a base point has an irrational coordinate",
                                       x=str(u), factor=str(bad[0]))
        for z0 in zs:
            pt = normalize_point(_mat_vec(T, normalize_point((u, 1, z0))))
            nu = None
            for p in m.polys:
                if p.is_zero():
                    continue
                nu = multiplicity_at(p, pt, upper=nu)
                if nu == 0:
                    break
            if nu:
                found.append((pt, nu))
    return _Elimination(found, nonlinear, h1, combo)


def _nonlinear_is_base(el: _Elimination) -> bool:
    # A nonlinear x-factor carries base points iff it survives elimination
    # against a third generic member as well.
    r = _resultant_x(el.h1, el.combo())
    return any((r % fac).is_zero() for fac in el.nonlinear_x)


def base_points(m: RationalMap, seed: int = 0, tries: int = 3) -> list[tuple[Point, int]]:
    """Proper rational base points with multiplicities, largest first."""
    n = m.degree
    if n == 1:
        return []
    rng = random.Random(seed)
    residual: dict[str, int] = {}
    for _ in range(tries):
        el = _eliminate(m, rng)
        pts = sorted(set(el.points), key=lambda t: (-t[1], t[0]))
        sq = sum(v * v for _, v in pts)
        sm = sum(v for _, v in pts)
        if sq == n * n - 1 and sm == 3 * n - 3:
            return pts
        residual = {"square_deficit": n * n - 1 - sq, "sum_deficit": 3 * n - 3 - sm,
                    "found": len(pts)}
        if el.nonlinear_x and _nonlinear_is_base(el):
            raise NonRationalBasePoint("base points over an irrational x-coordinate", **residual)
    raise InfinitelyNearOrIrrational("extracted points do not satisfy the homaloidal identities",
                                     **residual)


def homaloidal_type_of(m: RationalMap, seed: int = 0) -> HomaloidalType:
    pts = base_points(m, seed=seed)
    t = HomaloidalType(m.degree, Cluster.proper(v for _, v in pts))
    if not validate_homaloidal(t):
        raise InfinitelyNearOrIrrational("extracted type fails the identities")
    return t


# ---------------------------------------------------------------------------
# greedy factorization into quadratic maps
# ---------------------------------------------------------------------------


def _general_triple(points: Sequence[tuple[Point, int]], n: int) -> tuple[int, int, int] | None:
    # triples ordered by decreasing multiplicity sum, then by index
    idx = range(len(points))
    triples = sorted(itertools.combinations(idx, 3),
                     key=lambda t: (-sum(points[i][1] for i in t), t))
    for t in triples:
        if sum(points[i][1] for i in t) <= n:
            break
        c = [points[i][0] for i in t]
        if _collinear(*c):
            continue
        lines_ok = True
        for j, (q, _) in enumerate(points):
            if j in t:
                continue
            if any(_collinear(c[a], c[b], q) for a, b in ((0, 1), (0, 2), (1, 2))):
                lines_ok = False
                break
        if lines_ok:
            return t
    return None


def factor_by_quadratics(m: RationalMap, seed: int = 0) -> list[RationalMap]:
    """Quadratic maps ``Q1, ..., Qk`` with ``m o Q1 o ... o Qk`` linear.

    Each ``Q`` is an involution, so ``m = L o Qk o ... o Q1``.
    """
    factors: list[RationalMap] = []
    current = m
    points = base_points(m, seed=seed)
    while current.degree > 1:
        n = current.degree
        t = _general_triple(points, n)
        if t is None:
            raise SpecialPosition("no three base points in general position untwist the map",
                                  degree=n)
        centers = tuple(points[i][0] for i in t)
        nus = [points[i][1] for i in t]
        q = quadratic_from_points(*centers)
        nxt = compose(current, q)
        expect = 2 * n - sum(nus)
        if nxt.degree != expect:
            raise SpecialPosition("degree did not drop as predicted",
                                  got=nxt.degree, expected=expect)
        moved = []
        for i, (p, v) in enumerate(points):
            if i not in t:
                moved.append((apply_quadratic_to_point(q.centers, p), v))  # type: ignore[arg-type]
        for k in range(3):
            v = n - sum(nus) + nus[k]
            if v:
                moved.append((centers[k], v))
        points = sorted(moved, key=lambda pv: (-pv[1], pv[0]))
        factors.append(q)
        current = nxt
    return factors


def verify_factorization(m: RationalMap, factors: Sequence[RationalMap]) -> bool:
    """True iff composing ``m`` with the factors in order gives a linear map."""
    cur = m
    for q in factors:
        cur = compose(cur, q)
    return is_projective_linear(cur) is not None


# ---------------------------------------------------------------------------
# seeded corpus of maps with tracked types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    """One link of a corpus chain; ``map`` is None in types-only mode.

    ``centers`` are the ids and coordinates of the quadratic map that
    produced this entry from the previous one (empty for the identity).
    """

    map: RationalMap | None
    type: HomaloidalType
    points: tuple[tuple[str, Point], ...]
    centers: tuple[tuple[str, Point], ...] = ()

    def to_json(self) -> dict[str, Any]:
        mult = {p.id: p.mult for p in self.type.cluster.points}
        return {
            "map": self.map.to_json() if self.map is not None else None,
            "type": self.type.to_json(),
            "points": [{"id": i, "coords": list(c), "mult": mult[i]} for i, c in self.points],
            "centers": [{"id": i, "coords": list(c)} for i, c in self.centers],
        }


def _random_point(rng: random.Random, height: int) -> Point:
    while True:
        p = tuple(rng.randint(-height, height) for _ in range(3))
        if any(p):
            return normalize_point(p)


@dataclass(frozen=True)
class _Draw:
    chosen: tuple[str, str, str]
    centers: tuple[Point, Point, Point]
    type: HomaloidalType
    coords: dict[str, Point]
    next_id: int


def _draw_step(t: HomaloidalType, coords: dict[str, Point], rng: random.Random, height: int,
               max_degree: int, max_coord: int | None, reuse: float, next_id: int) -> _Draw:
    mult = {p.id: p.mult for p in t.cluster.points}
    existing = sorted(coords, key=lambda i: (-mult[i], int(i[1:])))
    chosen: list[str] = []
    fresh: dict[str, Point] = {}
    nid = next_id
    for _ in range(3):
        avail = [i for i in existing if i not in chosen]
        if avail and rng.random() < reuse:
            chosen.append(avail[0] if rng.random() < 0.5 else rng.choice(avail))
        else:
            name = f"p{nid}"
            nid += 1
            fresh[name] = _random_point(rng, height)
            chosen.append(name)
    pts = {**coords, **fresh}
    centers = tuple(pts[c] for c in chosen)
    if len(set(centers)) < 3 or _collinear(*centers):
        raise SpecialPosition("centers not in general position")
    if any(p in coords.values() for p in fresh.values()):
        raise SpecialPosition("fresh center hits a base point")
    t2 = compose_quadratic(t, chosen)
    if t2.n > max_degree:
        raise SpecialPosition("degree cap exceeded")
    new_coords: dict[str, Point] = {}
    for name, p in coords.items():
        if name in chosen:
            continue
        # raises when p sits on a side of the center triangle
        q = apply_quadratic_to_point(centers, p)
        if max_coord is not None and max(map(abs, q)) > max_coord:
            raise SpecialPosition("base point height cap exceeded")
        new_coords[name] = q
    for name in chosen:
        if name in t2.cluster:
            new_coords[name] = pts[name]
    return _Draw(tuple(chosen), centers, t2, new_coords, nid)  # type: ignore[arg-type]


def _realize_step(f: RationalMap, d: _Draw, verify: bool) -> RationalMap:
    f2 = compose(f, quadratic_from_points(*d.centers))
    if f2.degree != d.type.n:
        raise InternalInvariantViolation("polynomial degree disagrees with the tracked type",
                                         degree=f2.degree, tracked=d.type.n)
    if verify:
        for p in d.type.cluster.points:
            nu = None
            for comp in f2.polys:
                if not comp.is_zero():
                    nu = multiplicity_at(comp, d.coords[p.id], upper=nu)
            if nu != p.mult:
                raise InternalInvariantViolation("tracked multiplicity not realized",
                                                 point=p.id, found=nu, tracked=p.mult)
    return f2


def random_corpus(seed: int, k: int, height: int, max_degree: int = 20,
                  max_coord: int | None = None, reuse: float = 0.4, budget: int = 200,
                  with_maps: bool = True, verify: bool = True) -> list[CorpusEntry]:
    """A chain ``f_0 = id, f_{i+1} = f_i o Q_i`` with tracked types, k + 1 entries.

    Centers are existing base points (with probability ``reuse``, favoring
    large multiplicities) or fresh points of height at most ``height``.
    Draws in special position, above ``max_degree``, or pushing a base
    point beyond coordinates of size ``max_coord`` are redrawn.

    The tracked type is exact once every draw passes the point-level
    general-position checks, so ``with_maps=False`` yields the same types
    and points without the polynomials.  With maps, ``verify`` also checks
    every tracked multiplicity on the forms.
    """
    if k < 0 or height < 1:
        raise InvalidInput("need k >= 0 and height >= 1")
    rng = random.Random(seed)
    f: RationalMap | None = RationalMap.identity() if with_maps else None
    t = HomaloidalType(1)
    coords: dict[str, Point] = {}
    nid = 1
    out = [CorpusEntry(f, t, ())]
    for _ in range(k):
        for _attempt in range(budget):
            try:
                d = _draw_step(t, coords, rng, height, max_degree, max_coord, reuse, nid)
            except (SpecialPosition, InvalidComposition):
                continue
            if f is not None:
                f = _realize_step(f, d, verify)
            t, coords, nid = d.type, d.coords, d.next_id
            break
        else:
            raise CorpusGenerationFailed("retry budget exhausted", seed=seed)
        out.append(CorpusEntry(f, t, tuple((p.id, coords[p.id]) for p in t.cluster.points),
                               tuple(zip(d.chosen, d.centers))))
    return out
