"""Marked linear systems on P^2 and Hirzebruch surfaces.

A marked system is a surface ``F`` together with a class written as
``H = -a K_F + b f`` (``f`` the fiber class, ``b = 0`` on the plane) and the
cluster of base points of the system.  On ``F_N`` with negative section ``s``
one has ``-K = 2s + (N+2)f``, ``s^2 = -N``, ``s.f = 1``, ``f^2 = 0``, so

    H^2 = 8a^2 + 4ab        -K.H = 8a + 2b
    H = alpha s + beta f    with alpha = 2a, beta = (N+2)a + b.

On the plane ``H^2 = 9a^2`` and ``-K.H = 9a``.  Every state visited by the
link engine satisfies ``H^2 - sum nu^2 = 1`` and ``-K.H - sum nu = 3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .cluster import Cluster, ClusterPoint, lambda_e
from .errors import (InvalidCluster, InvalidInput, InvalidState, NotApplicable, NotHomaloidal,
                     WrongSurface)

__all__ = [
    "Surface",
    "PositionedPoint",
    "MarkedSystem",
    "HomaloidalType",
    "SarkisovDegree",
    "Isomorphism",
    "MaxSingularity",
    "NegativeFiberCoeff",
    "from_homaloidal",
    "validate_homaloidal",
    "noether_inequality",
    "classify",
    "sarkisov_degree",
    "noether_fano_certificate",
    "index_bound_holds",
    "maximal_root",
    "parse_type",
    "format_type",
    "Fano3Data",
    "Fano3Report",
    "fano3_classify",
]


@dataclass(frozen=True)
class Surface:
    """``P2`` when ``N`` is None, otherwise the Hirzebruch surface ``F_N``.

    ``ruling`` (``"a"`` or ``"b"``) tells the two rulings of ``F_0`` apart.
    """

    N: int | None = None
    ruling: str | None = None

    def __post_init__(self) -> None:
        if self.N is None:
            if self.ruling is not None:
                raise InvalidInput("the plane has no ruling")
            return
        if self.N < 0:
            raise InvalidInput("Hirzebruch index must be nonnegative")
        if self.N == 0:
            if self.ruling not in ("a", "b"):
                raise InvalidInput("F0 needs a ruling tag 'a' or 'b'")
        elif self.ruling is not None:
            raise InvalidInput("ruling tag is only meaningful on F0")

    @classmethod
    def p2(cls) -> Surface:
        return cls()

    @classmethod
    def hirzebruch(cls, N: int, ruling: str | None = None) -> Surface:
        if N == 0 and ruling is None:
            ruling = "a"
        return cls(N, ruling)

    @property
    def is_plane(self) -> bool:
        return self.N is None

    @property
    def name(self) -> str:
        if self.N is None:
            return "P2"
        return f"F0{self.ruling}" if self.N == 0 else f"F{self.N}"

    @classmethod
    def parse(cls, text: str) -> Surface:
        m = re.fullmatch(r"P2|F0([ab])|F([1-9]\d*)", text.strip())
        if not m:
            raise InvalidInput(f"unknown surface {text!r}")
        if text.strip() == "P2":
            return cls()
        if m.group(1):
            return cls(0, m.group(1))
        return cls(int(m.group(2)))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class PositionedPoint:
    """A cluster point plus its incidence with the ruling structure.

    ``on_fiber_of`` names another root point on the same fiber.  On ``F_0``
    ``on_cofiber_of`` does the same for the second ruling.  Fiber groups
    are stored with every member pointing at the first member in cluster
    order, which points at nothing.
    """

    point: ClusterPoint
    on_negative_section: bool = False
    on_fiber_of: str | None = None
    on_cofiber_of: str | None = None

    @property
    def id(self) -> str:
        return self.point.id

    @property
    def mult(self) -> int:
        return self.point.mult

    def cleared(self) -> PositionedPoint:
        return PositionedPoint(self.point)


def _canonical_groups(points: Sequence[PositionedPoint], attr: str) -> dict[str, str | None]:
    # union-find over the pointer relation, reps = first member in order
    order = {p.id: i for i, p in enumerate(points)}
    parent = {p.id: p.id for p in points}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in points:
        other = getattr(p, attr)
        if other is None:
            continue
        if other not in parent:
            raise InvalidState(f"{p.id} refers to unknown point {other}")
        ra, rb = find(p.id), find(other)
        if ra != rb:
            if order[ra] < order[rb]:
                parent[rb] = ra
            else:
                parent[ra] = rb
    out: dict[str, str | None] = {}
    for p in points:
        r = find(p.id)
        out[p.id] = None if r == p.id else r
    return out


@dataclass(frozen=True)
class MarkedSystem:
    surface: Surface
    a: Fraction
    b: Fraction
    points: tuple[PositionedPoint, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        pts = tuple(self.points)
        fib = _canonical_groups(pts, "on_fiber_of")
        cof = _canonical_groups(pts, "on_cofiber_of")
        pts = tuple(replace(p, on_fiber_of=fib[p.id], on_cofiber_of=cof[p.id]) for p in pts)
        object.__setattr__(self, "points", pts)
        try:
            cluster = Cluster(tuple(p.point for p in pts))
        except InvalidCluster as exc:
            raise InvalidState(f"cluster invalid: {exc.message}") from exc
        object.__setattr__(self, "_cluster", cluster)
        self._validate()

    def _validate(self) -> None:
        a, b, s = self.a, self.b, self.surface
        if a <= 0:
            raise InvalidState("the -K coefficient a must be positive", a=a)
        for p in self.points:
            flagged = p.on_negative_section or p.on_fiber_of or p.on_cofiber_of
            if flagged and p.point.parent is not None:
                raise InvalidState(f"incidence flags on non-root point {p.id}")
            if s.is_plane and flagged:
                raise InvalidState("incidence flags are meaningless on P2")
            if s.N == 0 and p.on_negative_section:
                raise InvalidState("F0 has no negative section")
            if s.N is not None and s.N > 0 and p.on_cofiber_of:
                raise InvalidState("only F0 has a second ruling")
        if s.is_plane:
            if b != 0:
                raise InvalidState("b must be 0 on P2", b=b)
            if (3 * a).denominator != 1:
                raise InvalidState("3a must be an integer on P2", a=a)
        else:
            alpha, beta = self.alpha_beta()
            if alpha.denominator != 1 or beta.denominator != 1 or beta < 0:
                raise InvalidState("class is not integral and effective in the (s, f) basis",
                                   alpha=alpha, beta=beta)
        sq = sum(p.mult ** 2 for p in self.points)
        sm = sum(p.mult for p in self.points)
        if self.self_intersection() - sq != 1:
            raise InvalidState("H^2 - sum nu^2 != 1", residual=self.self_intersection() - sq - 1)
        if self.anticanonical_degree() - sm != 3:
            raise InvalidState("-K.H - sum nu != 3", residual=self.anticanonical_degree() - sm - 3)

    # derived data ----------------------------------------------------------

    @property
    def cluster(self) -> Cluster:
        return self._cluster  # type: ignore[attr-defined]

    def alpha_beta(self) -> tuple[Fraction, Fraction]:
        if self.surface.is_plane:
            raise InvalidState("(s, f) basis only exists on Hirzebruch surfaces")
        return 2 * self.a, (self.surface.N + 2) * self.a + self.b  # type: ignore[operator]

    def self_intersection(self) -> Fraction:
        if self.surface.is_plane:
            return 9 * self.a * self.a
        return 8 * self.a * self.a + 4 * self.a * self.b

    def anticanonical_degree(self) -> Fraction:
        if self.surface.is_plane:
            return 9 * self.a
        return 8 * self.a + 2 * self.b

    @property
    def degree(self) -> int:
        """Plane degree n = 3a; only defined on P2."""
        if not self.surface.is_plane:
            raise InvalidState("plane degree requested on a Hirzebruch surface")
        return int(3 * self.a)

    def get(self, pid: str) -> PositionedPoint:
        for p in self.points:
            if p.id == pid:
                return p
        raise InvalidInput(f"no point {pid!r} in the marked system")

    def roots(self) -> list[PositionedPoint]:
        return [p for p in self.points if p.point.parent is None]

    def fiber_mates(self, pid: str) -> list[PositionedPoint]:
        rep = self.get(pid).on_fiber_of or pid
        return [p for p in self.roots() if p.id != pid and (p.on_fiber_of or p.id) == rep]

    def cofiber_mates(self, pid: str) -> list[PositionedPoint]:
        rep = self.get(pid).on_cofiber_of or pid
        return [p for p in self.roots() if p.id != pid and (p.on_cofiber_of or p.id) == rep]

    def fiber_groups(self, attr: str = "on_fiber_of") -> list[frozenset[str]]:
        groups: dict[str, set[str]] = {}
        for p in self.points:
            rep = getattr(p, attr) or p.id
            groups.setdefault(rep, set()).add(p.id)
        return [frozenset(g) for g in groups.values() if len(g) > 1]

    def key(self) -> tuple:
        """Order-free identity (surface, class, points with flags)."""
        return (self.surface, self.a, self.b,
                frozenset((p.point, p.on_negative_section) for p in self.points),
                frozenset(self.fiber_groups("on_fiber_of")),
                frozenset(self.fiber_groups("on_cofiber_of")))

    def summary(self) -> dict[str, Any]:
        return {
            "surface": self.surface.name,
            "a": _qstr(self.a),
            "b": _qstr(self.b),
            "points": [dict(p.point.to_json(), on_negative_section=p.on_negative_section,
                            on_fiber_of=p.on_fiber_of, on_cofiber_of=p.on_cofiber_of)
                       for p in self.points],
        }


def _qstr(q: Fraction) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class HomaloidalType:
    n: int
    cluster: Cluster = field(default_factory=Cluster)

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InvalidInput("degree n must be a positive integer")

    @classmethod
    def proper(cls, n: int, mults: Iterable[int]) -> HomaloidalType:
        return cls(n, Cluster.proper(mults))

    def mults(self) -> list[int]:
        return self.cluster.mults()

    def sorted_mults(self) -> tuple[int, ...]:
        return tuple(sorted(self.mults(), reverse=True))

    def same_as(self, other: HomaloidalType) -> bool:
        return self.n == other.n and self.cluster.key() == other.cluster.key()

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "cluster": self.cluster.to_json()}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> HomaloidalType:
        try:
            return cls(int(data["n"]), Cluster.from_json(data["cluster"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed type JSON: {exc}") from exc

    def __str__(self) -> str:
        return format_type(self)


_MULT_RE = re.compile(r"^(\d+)(?:>(\d+))?$")


def parse_type(text: str) -> HomaloidalType:
    """Parse ``"n; nu1,nu2>1,..."``.

    ``nu>i`` makes the point infinitely near (and proximate) to the i-th
    listed point, counting from 1.  Points get ids p1, p2, ...
    """
    head, sep, tail = text.partition(";")
    if not sep:
        raise InvalidInput(f"type {text!r} lacks ';'")
    try:
        n = int(head.strip())
    except ValueError as exc:
        raise InvalidInput(f"bad degree in {text!r}") from exc
    pts: list[ClusterPoint] = []
    items = [s.strip() for s in tail.split(",")] if tail.strip() else []
    for i, item in enumerate(items, 1):
        m = _MULT_RE.match(item)
        if not m:
            raise InvalidInput(f"bad multiplicity {item!r}")
        parent = None
        if m.group(2):
            idx = int(m.group(2))
            if not 1 <= idx < i:
                raise InvalidInput(
                    f"parent index {idx} of point {i} must refer to an earlier point")
            parent = f"p{idx}"
        pts.append(ClusterPoint(f"p{i}", int(m.group(1)), parent))
    try:
        return HomaloidalType(n, Cluster(tuple(pts)))
    except InvalidCluster as exc:
        raise InvalidInput(exc.message) from exc


def format_type(t: HomaloidalType) -> str:
    index = {p.id: i for i, p in enumerate(t.cluster.points, 1)}
    parts = []
    for p in t.cluster.points:
        parts.append(str(p.mult) if p.parent is None else f"{p.mult}>{index[p.parent]}")
    return f"{t.n}; " + ",".join(parts) if parts else f"{t.n};"


def validate_homaloidal(t: HomaloidalType) -> bool:
    m = t.mults()
    return sum(v * v for v in m) == t.n ** 2 - 1 and sum(m) == 3 * t.n - 3


def noether_inequality(t: HomaloidalType) -> bool:
    if t.n == 1:
        raise NotApplicable("the Noether inequality concerns degree n > 1")
    top = sorted(t.mults(), reverse=True)[:3]
    return sum(top) > t.n


def from_homaloidal(t: HomaloidalType) -> MarkedSystem:
    if not validate_homaloidal(t):
        raise NotHomaloidal(f"type {format_type(t)} fails the homaloidal identities")
    pts = tuple(PositionedPoint(p) for p in t.cluster.points)
    return MarkedSystem(Surface.p2(), Fraction(t.n, 3), Fraction(0), pts)


@dataclass(frozen=True)
class Isomorphism:
    pass


@dataclass(frozen=True)
class MaxSingularity:
    point: str


@dataclass(frozen=True)
class NegativeFiberCoeff:
    pass


Classification = Isomorphism | MaxSingularity | NegativeFiberCoeff


def maximal_root(ms: MarkedSystem) -> PositionedPoint | None:
    """Root with nu > a: largest nu, earliest on ties."""
    best = None
    for p in ms.roots():
        if p.mult > ms.a and (best is None or p.mult > best.mult):
            best = p
    return best


def classify(ms: MarkedSystem) -> Classification:
    best = maximal_root(ms)
    if best is not None:
        return MaxSingularity(best.id)
    if not ms.surface.is_plane and ms.b < 0:
        return NegativeFiberCoeff()
    if not (ms.surface.is_plane and ms.a == Fraction(1, 3) and not ms.points):
        raise InvalidState("no maximal singularity but the system is not a line system on P2",
                           surface=ms.surface.name, a=ms.a, b=ms.b, points=len(ms.points))
    return Isomorphism()


def index_bound_holds(ms: MarkedSystem) -> bool:
    """``0 <= s.H < -aK.s = a(2 - N)`` for the negative section ``s``.

    Only meaningful when b < 0; a violation would force N > 1.
    """
    if ms.surface.is_plane:
        raise WrongSurface("the index bound concerns Hirzebruch surfaces")
    bound = ms.a * (2 - ms.surface.N)
    return 0 <= bound + ms.b < bound


@dataclass(frozen=True, order=True)
class SarkisovDegree:
    mu: Fraction
    lam: Fraction
    e: int

    def to_json(self) -> list[Any]:
        return [_qstr(self.mu), _qstr(self.lam), self.e]


def sarkisov_degree(ms: MarkedSystem) -> SarkisovDegree:
    lam, e = lambda_e(ms.cluster)
    return SarkisovDegree(ms.a, lam, e)


def noether_fano_certificate(ms: MarkedSystem) -> bool:
    lam, _ = lambda_e(ms.cluster)
    return lam <= ms.a and (ms.surface.is_plane or ms.b >= 0)


# ---------------------------------------------------------------------------
# Fano threefold maximal-singularity thresholds (inequality checker only)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fano3Data:
    n: int
    r: int
    hcube: int
    curves: tuple[tuple[int, Fraction], ...] = ()
    points: tuple[Fraction, ...] = ()
    near_curves: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        for name in ("n", "r", "hcube"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise InvalidInput(f"{name} must be a positive integer")
        curves = tuple((int(d), Fraction(m)) for d, m in self.curves)
        if any(d < 1 or m <= 0 for d, m in curves):
            raise InvalidInput("curve degrees and multiplicities must be positive")
        pts = tuple(Fraction(m) for m in self.points)
        near = tuple(Fraction(m) for m in self.near_curves)
        if any(m <= 0 for m in pts + near):
            raise InvalidInput("multiplicities must be positive")
        object.__setattr__(self, "curves", curves)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "near_curves", near)


@dataclass(frozen=True)
class Fano3Report:
    curve_threshold: Fraction
    point_threshold: Fraction
    degree_bound: int
    curve_flags: tuple[bool, ...]
    point_flags: tuple[bool, ...]
    near_flags: tuple[bool, ...]
    near_label: str = "indeterminate bound"

    @property
    def open_cases(self) -> tuple[int, ...]:
        out = []
        if any(self.curve_flags):
            out.append(1)
        if any(self.point_flags):
            out.append(2)
        if any(self.near_flags):
            out.append(3)
        return tuple(out)

    def to_json(self) -> dict[str, Any]:
        return {
            "thresholds": {
                "curve_mult": _qstr(self.curve_threshold),
                "point_mult": _qstr(self.point_threshold),
                "curve_degree_below": self.degree_bound,
                "near_curve_mult": _qstr(self.curve_threshold),
            },
            "curves": list(self.curve_flags),
            "points": list(self.point_flags),
            "near_curves": list(self.near_flags),
            "near_curve_degree": self.near_label,
            "open_cases": list(self.open_cases),
        }


def fano3_classify(d: Fano3Data) -> Fano3Report:
    """Which maximal-singularity cases the supplied data leaves open.

    A curve counts when its multiplicity exceeds n/r and its degree is
    below r^2 H^3; a point when its multiplicity exceeds 2n/r.  For curves
    over the first blow-up of a point only the n/r threshold is checked;
    no degree bound is known there.
    """
    ct = Fraction(d.n, d.r)
    pt = Fraction(2 * d.n, d.r)
    bound = d.r * d.r * d.hcube
    return Fano3Report(
        curve_threshold=ct,
        point_threshold=pt,
        degree_bound=bound,
        curve_flags=tuple(m > ct and deg < bound for deg, m in d.curves),
        point_flags=tuple(m > pt for m in d.points),
        near_flags=tuple(m > ct for m in d.near_curves),
    )
