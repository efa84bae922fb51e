"""Elementary links between P^2 and Hirzebruch surfaces, and the untwisting loop.

Links act on :class:`MarkedSystem` states:

* ``A``: blow up a point of P^2, landing on F_1.  ``H = -aK`` becomes
  ``-((3a - nu)/2) K + (3(nu - a)/2) f``.
* ``AInv``: contract the (-1)-section of F_1.  ``a' = a + b/3`` and the
  section becomes a base point of multiplicity ``H.s = a + b``.
* ``B``: elementary transformation at a point of F_N.  ``a`` is unchanged,
  ``b' = b + a - nu``, and the contracted fiber becomes a base point of
  multiplicity ``H.f - nu = 2a - nu``.
* ``C``: swap the two rulings of F_0: ``(a, b) -> (a + b/2, -b)``.

Incidence is tracked only as far as the links need it: which root points
lie on the negative section, and which share a fiber (on F_0, also which
share a fiber of the second ruling).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .cluster import Cluster, ClusterPoint
from .errors import (
    CremonaError,
    InternalInvariantViolation,
    InvalidComposition,
    InvalidContraction,
    InvalidInput,
    InvalidState,
    InvalidTrace,
    NotProperPoint,
    SpecialPosition,
    WrongSurface,
)
from .marked_system import (
    HomaloidalType,
    Isomorphism,
    MarkedSystem,
    MaxSingularity,
    PositionedPoint,
    SarkisovDegree,
    Surface,
    classify,
    from_homaloidal,
    index_bound_holds,
    noether_fano_certificate,
    sarkisov_degree,
    validate_homaloidal,
)

__all__ = [
    "FreshPoint",
    "Link",
    "TraceStep",
    "LinkTrace",
    "apply_A",
    "apply_AInv",
    "apply_B",
    "apply_C",
    "factorize",
    "compose_quadratic",
    "recompose",
]

MAX_STEPS = 100_000


@dataclass(frozen=True)
class FreshPoint:
    """A general point outside the cluster (multiplicity 0) used as a center.

    ``fiber_of`` / ``cofiber_of`` name a root point sharing its fiber in the
    first / second ruling.
    """

    on_negative_section: bool = False
    fiber_of: str | None = None
    cofiber_of: str | None = None


@dataclass(frozen=True)
class Link:
    kind: str
    center: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("A", "AInv", "B", "C"):
            raise InvalidInput(f"unknown link {self.kind!r}")

    def __str__(self) -> str:
        return self.kind if self.center is None else f"{self.kind}({self.center})"


@dataclass(frozen=True)
class TraceStep:
    link: Link
    before: MarkedSystem
    after: MarkedSystem
    degree: SarkisovDegree
    new_point: str | None = None
    # where the created point sits, kept even when its multiplicity is 0
    new_position: FreshPoint | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "link": self.link.kind,
            "center": self.link.center,
            "surface_after": self.after.surface.name,
            "a": str(self.after.a),
            "b": str(self.after.b),
            "degree": self.degree.to_json(),
            "new_point": self.new_point,
        }


@dataclass(frozen=True)
class LinkTrace:
    steps: tuple[TraceStep, ...] = ()
    initial: MarkedSystem | None = None

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def kinds(self) -> list[str]:
        return [s.link.kind for s in self.steps]

    @property
    def final(self) -> MarkedSystem | None:
        if self.steps:
            return self.steps[-1].after
        return self.initial

    def to_json(self) -> list[dict[str, Any]]:
        return [s.to_json() for s in self.steps]


# ---------------------------------------------------------------------------
# individual links
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Outcome:
    state: MarkedSystem
    new_point: str | None
    new_position: FreshPoint | None


def _center(ms: MarkedSystem, center: str | FreshPoint) -> tuple[PositionedPoint | None, int]:
    if isinstance(center, FreshPoint):
        return None, 0
    p = ms.get(center)
    if p.point.parent is not None:
        raise NotProperPoint(f"{center} is infinitely near {p.point.parent}", center=center)
    return p, p.mult


def _check_no_satellites(ms: MarkedSystem, cid: str) -> None:
    for d in ms.cluster.descendants(cid):
        if cid in d.prox and d.parent != cid:
            raise SpecialPosition(
                f"{d.id} is a satellite of {cid}; it would lie on a curve, not at a point",
                point=d.id, center=cid)


def _as_root(p: PositionedPoint, **flags: Any) -> PositionedPoint:
    pt = ClusterPoint(p.id, p.mult)
    return PositionedPoint(pt, **flags)


def _new_id(ms: MarkedSystem, new_id: str | None) -> str:
    if new_id is None:
        return ms.cluster.fresh_id()
    if new_id in ms.cluster:
        raise InvalidInput(f"id {new_id} already in use")
    return new_id


def _step_A(ms: MarkedSystem, center: str | FreshPoint) -> _Outcome:
    if not ms.surface.is_plane:
        raise WrongSurface("link A starts on P2", surface=ms.surface.name)
    if isinstance(center, FreshPoint) and (center.on_negative_section or center.fiber_of
                                           or center.cofiber_of):
        raise InvalidInput("a fresh point on P2 carries no incidence")
    cp, nu = _center(ms, center)
    a1 = (3 * ms.a - nu) / 2
    b1 = 3 * (nu - ms.a) / 2
    pts: list[PositionedPoint] = []
    if cp is not None:
        _check_no_satellites(ms, cp.id)
    for p in ms.points:
        if cp is not None and p.id == cp.id:
            continue
        if cp is not None and p.point.parent == cp.id:
            pts.append(_as_root(p, on_negative_section=True))
        else:
            pts.append(p)
    return _Outcome(MarkedSystem(Surface.hirzebruch(1), a1, b1, tuple(pts)), None, None)


def _step_AInv(ms: MarkedSystem, new_id: str | None) -> _Outcome:
    if ms.surface.N != 1:
        raise WrongSurface("link AInv starts on F1", surface=ms.surface.name)
    m = ms.a + ms.b
    if m < 0 or m.denominator != 1:
        raise InvalidContraction("the section has negative or fractional degree", degree=m)
    m = int(m)
    flagged = [p for p in ms.roots() if p.on_negative_section]
    load = sum(p.mult for p in flagged)
    if load > m:
        raise InvalidContraction("points on the section exceed its degree",
                                 degree=m, on_section=load)
    if m > 0 and ms.fiber_groups():
        raise SpecialPosition("base points on a common fiber would become collinear "
                              "with the new base point")
    a2 = ms.a + ms.b / 3
    if m == 0:
        pts = tuple(p.cleared() for p in ms.points)
        return _Outcome(MarkedSystem(Surface.p2(), a2, 0, pts), None, None)
    w = _new_id(ms, new_id)
    flagged_ids = {p.id for p in flagged}
    head: list[PositionedPoint] = []
    tail: list[PositionedPoint] = []
    under: set[str] = set()
    for p in ms.points:
        if p.id in flagged_ids:
            under.add(p.id)
            tail.append(PositionedPoint(ClusterPoint(p.id, p.mult, w)))
        elif p.point.parent in under:
            under.add(p.id)
            tail.append(p.cleared())
        else:
            head.append(p.cleared())
    pts = tuple(head) + (PositionedPoint(ClusterPoint(w, m)),) + tuple(tail)
    return _Outcome(MarkedSystem(Surface.p2(), a2, 0, pts), w, FreshPoint())


def _step_B(ms: MarkedSystem, center: str | FreshPoint, new_id: str | None,
            ruling: str = "a") -> _Outcome:
    N = ms.surface.N
    if N is None:
        raise WrongSurface("link B starts on a Hirzebruch surface", surface="P2")
    cp, nu = _center(ms, center)
    if cp is not None:
        flag = cp.on_negative_section
        mates = ms.fiber_mates(cp.id)
        comates = ms.cofiber_mates(cp.id) if N == 0 else []
        _check_no_satellites(ms, cp.id)
        cid: str | None = cp.id
    else:
        assert isinstance(center, FreshPoint)
        flag = center.on_negative_section
        if N == 0 and flag:
            raise InvalidInput("F0 has no negative section")
        mates = _group(ms, center.fiber_of, "on_fiber_of")
        comates = _group(ms, center.cofiber_of, "on_cofiber_of") if N == 0 else []
        cid = None
    if nu > 2 * ms.a:
        raise InvalidState("center multiplicity exceeds the fiber degree 2a", nu=nu, a=ms.a)
    z_mult = 2 * ms.a - nu
    if z_mult.denominator != 1:
        raise InvalidState("fiber degree is not integral", a=ms.a)
    z_mult = int(z_mult)
    if any(q.on_negative_section for q in mates):
        raise SpecialPosition("a point on the contracted fiber lies on the negative section")
    if sum(q.mult for q in mates) > z_mult or (mates and z_mult == 0):
        raise InvalidState("points on the fiber exceed its degree")

    if N == 0:
        N2 = 1
    elif flag:
        N2 = N + 1
    else:
        N2 = N - 1
    surface = Surface.hirzebruch(N2, ruling if N2 == 0 else None)
    b2 = ms.b + ms.a - nu

    # incidence of the new point z on the target surface
    z_flag = N2 > 0 and N != 0 and not flag
    mate_ids = {q.id for q in mates}
    comate_ids = {q.id for q in comates}
    child_ids = [p.id for p in ms.points if cid is not None and p.point.parent == cid]
    old_flagged = [p.id for p in ms.roots() if p.on_negative_section and p.id != cid]
    z = _new_id(ms, new_id) if z_mult > 0 else None

    def carry(p: PositionedPoint) -> PositionedPoint:
        fib = p.on_fiber_of
        if N == 0:
            # F0 -> F1: second ruling forgotten, center's cofiber becomes the section
            return replace(p, on_negative_section=p.id in comate_ids, on_cofiber_of=None,
                           on_fiber_of=fib)
        if N2 == 0:
            # F1 -> F0: the section becomes a fiber of the second ruling
            return replace(p, on_negative_section=False, on_fiber_of=fib)
        return p

    pts: list[PositionedPoint] = []
    z_inserted = False
    z_point: PositionedPoint | None = None
    if z is not None:
        z_point = PositionedPoint(ClusterPoint(z, z_mult), on_negative_section=z_flag)
    for p in ms.points:
        if cid is not None and p.id == cid:
            if z_point is not None and not z_inserted:
                pts.append(z_point)
                z_inserted = True
            continue
        if p.id in mate_ids:
            if z_point is not None and not z_inserted:
                pts.append(z_point)
                z_inserted = True
            pts.append(PositionedPoint(ClusterPoint(p.id, p.mult, z)))
            continue
        if cid is not None and p.point.parent == cid:
            pts.append(PositionedPoint(ClusterPoint(p.id, p.mult)))
            continue
        pts.append(carry(p))
    if z_point is not None and not z_inserted:
        pts.append(z_point)

    # fiber through z: z itself and the former children of the center
    fiber_members = ([z] if z is not None else []) + child_ids
    cofiber_members: list[str] = []
    if N2 == 0:
        cofiber_members = ([z] if z is not None else []) + old_flagged
    rep_f = fiber_members[0] if fiber_members else None
    rep_c = cofiber_members[0] if cofiber_members else None
    fixed: list[PositionedPoint] = []
    for p in pts:
        if p.id in fiber_members and p.id != rep_f:
            p = replace(p, on_fiber_of=rep_f)
        if p.id in cofiber_members and p.id != rep_c:
            p = replace(p, on_cofiber_of=rep_c)
        fixed.append(p)
    state = MarkedSystem(surface, ms.a, b2, tuple(fixed))
    position = FreshPoint(
        on_negative_section=z_flag,
        fiber_of=next((i for i in child_ids), None),
        cofiber_of=next((i for i in old_flagged), None) if N2 == 0 else None,
    )
    return _Outcome(state, z, position)


def _group(ms: MarkedSystem, pid: str | None, attr: str) -> list[PositionedPoint]:
    if pid is None:
        return []
    p = ms.get(pid)
    if p.point.parent is not None:
        raise InvalidInput(f"{pid} is not a root point")
    rep = getattr(p, attr) or p.id
    return [q for q in ms.roots() if (getattr(q, attr) or q.id) == rep]


def _step_C(ms: MarkedSystem) -> _Outcome:
    if ms.surface.N != 0:
        raise WrongSurface("link C acts on F0", surface=ms.surface.name)
    other = "b" if ms.surface.ruling == "a" else "a"
    pts = tuple(replace(p, on_fiber_of=p.on_cofiber_of, on_cofiber_of=p.on_fiber_of)
                for p in ms.points)
    state = MarkedSystem(Surface(0, other), ms.a + ms.b / 2, -ms.b, pts)
    return _Outcome(state, None, None)


def apply_A(ms: MarkedSystem, center: str | FreshPoint) -> MarkedSystem:
    return _step_A(ms, center).state


def apply_AInv(ms: MarkedSystem, new_id: str | None = None) -> MarkedSystem:
    return _step_AInv(ms, new_id).state


def apply_B(ms: MarkedSystem, center: str | FreshPoint, new_id: str | None = None,
            ruling: str = "a") -> MarkedSystem:
    return _step_B(ms, center, new_id, ruling).state


def apply_C(ms: MarkedSystem) -> MarkedSystem:
    return _step_C(ms).state


# ---------------------------------------------------------------------------
# untwisting
# ---------------------------------------------------------------------------


class _Ids:
    def __init__(self, taken: Iterable[str]) -> None:
        self.taken = set(taken)
        self.k = 0

    def __call__(self) -> str:
        while True:
            self.k += 1
            name = f"e{self.k}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def factorize(t: HomaloidalType) -> LinkTrace:
    """Untwist a homaloidal type into links until the system is a net of lines.

    The loop checks, at every state, that the classifier and the
    Noether-Fano certificate agree, that the Sarkisov degree drops
    strictly, and that the plane degree drops between visits to P^2.
    """
    t = HomaloidalType(t.n, t.cluster.prune())
    ms = from_homaloidal(t)
    initial = ms
    ids = _Ids(t.cluster.ids())
    steps: list[TraceStep] = []
    last_n = t.n
    while True:
        if len(steps) > MAX_STEPS:
            raise InternalInvariantViolation("step budget exhausted")
        try:
            verdict = classify(ms)
        except InvalidState as exc:
            raise InternalInvariantViolation(f"classifier assertion: {exc.message}") from exc
        if isinstance(verdict, Isomorphism) != noether_fano_certificate(ms):
            raise InternalInvariantViolation("classifier and Noether-Fano certificate disagree")
        if isinstance(verdict, Isomorphism):
            break
        try:
            if ms.surface.is_plane:
                assert isinstance(verdict, MaxSingularity)
                link = Link("A", verdict.point)
                out = _step_A(ms, verdict.point)
            elif isinstance(verdict, MaxSingularity):
                link = Link("B", verdict.point)
                out = _step_B(ms, verdict.point, ids())
            elif not index_bound_holds(ms):
                raise InternalInvariantViolation(
                    "index bound fails on F_N with no maximal singularity",
                    N=ms.surface.N, a=str(ms.a), b=str(ms.b))
            elif ms.surface.N == 1:
                link = Link("AInv")
                out = _step_AInv(ms, ids())
            else:
                link = Link("C")
                out = _step_C(ms)
        except (InvalidState, InvalidContraction) as exc:
            raise InternalInvariantViolation(f"link broke an invariant: {exc.message}") from exc
        before_deg = sarkisov_degree(ms)
        after_deg = sarkisov_degree(out.state)
        if not after_deg < before_deg:
            raise InternalInvariantViolation("Sarkisov degree did not decrease",
                                             before=before_deg.to_json(), after=after_deg.to_json())
        if out.state.surface.is_plane:
            n = out.state.degree
            if n >= last_n:
                raise InternalInvariantViolation("plane degree did not decrease", n=n, last=last_n)
            last_n = n
        steps.append(TraceStep(link, ms, out.state, after_deg, out.new_point, out.new_position))
        ms = out.state
    return LinkTrace(tuple(steps), initial)


def _comparable(ms: MarkedSystem) -> tuple:
    # fiber groups are not recoverable after passing through P^2
    return (ms.surface, ms.a, ms.b,
            frozenset((p.point, p.on_negative_section) for p in ms.points))


def recompose(trace: LinkTrace) -> HomaloidalType:
    """Replay the inverse links from the line system back to the start."""
    ms = MarkedSystem(Surface.p2(), Fraction(1, 3), Fraction(0))
    if not trace.steps:
        if trace.initial is not None and _comparable(trace.initial) != _comparable(ms):
            raise InvalidTrace("empty trace must start from the line system")
        return HomaloidalType(1)
    if _comparable(trace.steps[-1].after) != _comparable(ms):
        raise InvalidTrace("trace does not end at the line system")
    for i in range(len(trace.steps) - 1, -1, -1):
        step = trace.steps[i]
        target = step.before
        if i + 1 < len(trace.steps) and trace.steps[i + 1].before != step.after:
            raise InvalidTrace(f"steps {i} and {i + 1} do not chain")
        try:
            kind = step.link.kind
            if kind == "A":
                ms = _step_AInv(ms, step.link.center).state
            elif kind == "AInv":
                ms = _step_A(ms, step.new_point or FreshPoint()).state
            elif kind == "B":
                if step.new_point is not None:
                    center: str | FreshPoint = step.new_point
                else:
                    center = step.new_position or FreshPoint()
                ms = _step_B(ms, center, step.link.center, target.surface.ruling or "a").state
            else:
                ms = _step_C(ms).state
        except CremonaError as exc:
            raise InvalidTrace(f"inverse of step {i} ({step.link}) failed: {exc.message}") from exc
        if _comparable(ms) != _comparable(target):
            raise InvalidTrace(f"inverse of step {i} ({step.link}) does not reproduce its source")
        ms = target
    if not ms.surface.is_plane:
        raise InvalidTrace("trace does not start on P2")
    return HomaloidalType(ms.degree, ms.cluster)


# ---------------------------------------------------------------------------
# quadratic action on types
# ---------------------------------------------------------------------------


def compose_quadratic(t: HomaloidalType, centers: Sequence[str]) -> HomaloidalType:
    """Type of ``f o Q`` for a general quadratic map ``Q`` with the given centers.

    Centers that are not ids of the cluster are fresh general points; a
    fresh center that ends up with positive multiplicity keeps its name.
    """
    if len(centers) != 3:
        raise InvalidInput("a quadratic map has three centers")
    if len(set(centers)) != 3:
        raise InvalidInput("quadratic centers must be distinct", centers=list(centers))
    nus = []
    for c in centers:
        if c in t.cluster:
            p = t.cluster.get(c)
            if p.parent is not None:
                raise NotProperPoint(f"{c} is infinitely near", center=c)
            if t.cluster.children(c):
                raise SpecialPosition(f"center {c} carries infinitely near points", center=c)
            nus.append(p.mult)
        else:
            nus.append(0)
    n2 = 2 * t.n - sum(nus)
    if n2 < 1:
        raise InvalidComposition("composite degree would be below 1", degree=n2)
    new = {c: t.n - (sum(nus) - nu) for c, nu in zip(centers, nus)}
    if any(v < 0 for v in new.values()):
        raise InvalidComposition("negative multiplicity", mults=new)
    pts = [p.with_mult(new[p.id]) if p.id in new else p for p in t.cluster.points]
    for c in centers:
        if c not in t.cluster:
            pts.append(ClusterPoint(c, new[c]))
    out = HomaloidalType(n2, Cluster(tuple(pts)).prune())
    if validate_homaloidal(t) and not validate_homaloidal(out):
        raise InternalInvariantViolation("quadratic action broke the homaloidal identities")
    return out
