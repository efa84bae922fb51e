"""Clusters of base points, possibly infinitely near, with explicit proximity.

Point ``k`` is *proximate* to ``j`` when it lies on the strict transform of
the exceptional curve of ``j``.  A child is always proximate to its parent;
a satellite point is additionally proximate to one earlier ancestor.

From the proximity relation alone we get the discrepancies ``a_k`` of the
exceptional curves over the blown-up surface and the total multiplicities
``b_k`` of the pulled-back linear system.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .errors import InvalidCluster

__all__ = [
    "INF",
    "Infinity",
    "ClusterPoint",
    "Cluster",
    "discrepancies",
    "total_multiplicities",
    "lambda_e",
    "canonical_threshold",
]


class Infinity:
    """The +infinity sentinel for thresholds of empty clusters."""

    _instance: Infinity | None = None

    def __new__(cls) -> Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("cremona.INF")

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True


INF = Infinity()


@dataclass(frozen=True)
class ClusterPoint:
    id: str
    mult: int
    parent: str | None = None
    prox: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id:
            raise InvalidCluster("point ids must be nonempty strings")
        if isinstance(self.mult, bool) or not isinstance(self.mult, int) or self.mult < 0:
            raise InvalidCluster(f"multiplicity of {self.id} must be a nonnegative integer")
        prox = frozenset(self.prox)
        if self.parent is not None:
            prox = prox | {self.parent}
        elif prox:
            raise InvalidCluster(f"root point {self.id} cannot be proximate to anything")
        object.__setattr__(self, "prox", prox)

    @property
    def is_root(self) -> bool:
        return self.parent is None

    def with_mult(self, mult: int) -> ClusterPoint:
        return replace(self, mult=mult)

    def to_json(self) -> dict[str, Any]:
        return {"id": self.id, "parent": self.parent, "prox": sorted(self.prox), "mult": self.mult}


@dataclass(frozen=True)
class Cluster:
    """Points listed parents-first.

    Construction validates the forest structure, the proximity relation and
    the proximity inequality ``nu_j >= sum of nu_k over k proximate to j``.
    """

    points: tuple[ClusterPoint, ...] = ()

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        seen: dict[str, ClusterPoint] = {}
        load: dict[str, int] = {}
        for p in pts:
            if p.id in seen:
                raise InvalidCluster(f"duplicate point id {p.id}")
            if p.parent is not None:
                if p.parent not in seen:
                    raise InvalidCluster(
                        f"point {p.id} precedes its parent {p.parent} or the parent is missing")
                ancestors = self._ancestors_in(seen, p.parent)
                extra = p.prox - {p.parent}
                if not extra <= ancestors:
                    raise InvalidCluster(f"point {p.id} is proximate to a non-ancestor")
                if len(extra) > 1:
                    raise InvalidCluster(f"point {p.id} is proximate to more than two points")
                for j in extra:
                    if j not in seen[p.parent].prox:
                        raise InvalidCluster(
                            f"satellite {p.id} proximate to {j} needs its parent proximate to {j}")
                for j in p.prox:
                    load[j] = load.get(j, 0) + p.mult
            seen[p.id] = p
        for j, total in load.items():
            if seen[j].mult < total:
                raise InvalidCluster(
                    f"proximity inequality fails at {j}: {seen[j].mult} < {total}",
                    point=j, mult=seen[j].mult, proximate_total=total)

    @staticmethod
    def _ancestors_in(seen: Mapping[str, ClusterPoint], start: str) -> set[str]:
        out = set()
        cur: str | None = start
        while cur is not None:
            out.add(cur)
            cur = seen[cur].parent
        return out

    # constructors --------------------------------------------------------

    @classmethod
    def proper(cls, mults: Iterable[int], prefix: str = "p") -> Cluster:
        return cls(tuple(ClusterPoint(f"{prefix}{i}", m) for i, m in enumerate(mults, 1)))

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Cluster:
        try:
            rows = data["points"]
            pts = tuple(
                ClusterPoint(str(r["id"]), r["mult"], r.get("parent"), frozenset(r.get("prox", ())))
                for r in rows)
        except (KeyError, TypeError) as exc:
            raise InvalidCluster(f"malformed cluster JSON: {exc}") from exc
        return cls(pts)

    def to_json(self) -> dict[str, Any]:
        return {"points": [p.to_json() for p in self.points]}

    # queries ---------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, pid: object) -> bool:
        return any(p.id == pid for p in self.points)

    def ids(self) -> list[str]:
        return [p.id for p in self.points]

    def get(self, pid: str) -> ClusterPoint:
        for p in self.points:
            if p.id == pid:
                return p
        raise InvalidCluster(f"no point {pid!r} in cluster")

    def mults(self) -> list[int]:
        return [p.mult for p in self.points]

    def roots(self) -> list[ClusterPoint]:
        return [p for p in self.points if p.parent is None]

    def children(self, pid: str) -> list[ClusterPoint]:
        return [p for p in self.points if p.parent == pid]

    def descendants(self, pid: str) -> list[ClusterPoint]:
        below = {pid}
        out = []
        for p in self.points:
            if p.parent in below:
                below.add(p.id)
                out.append(p)
        return out

    def key(self) -> frozenset[ClusterPoint]:
        """Order-free identity of the cluster."""
        return frozenset(self.points)

    def prune(self) -> Cluster:
        """Drop points of multiplicity zero.

        Their descendants are zero too by the proximity inequality.
        """
        return Cluster(tuple(p for p in self.points if p.mult > 0))

    def fresh_id(self, prefix: str = "e", taken: Iterable[str] = ()) -> str:
        used = set(self.ids()) | set(taken)
        i = 1
        while f"{prefix}{i}" in used:
            i += 1
        return f"{prefix}{i}"


def _proximity_sums(c: Cluster, base: Sequence[int]) -> list[int]:
    index = {p.id: i for i, p in enumerate(c.points)}
    out: list[int] = []
    for i, p in enumerate(c.points):
        out.append(base[i] + sum(out[index[j]] for j in p.prox))
    return out


def discrepancies(c: Cluster) -> tuple[int, ...]:
    """a_k = 1 + sum of a_j over the points j that k is proximate to."""
    return tuple(_proximity_sums(c, [1] * len(c)))


def total_multiplicities(c: Cluster) -> tuple[int, ...]:
    """b_k = nu_k + sum of b_j over the points j that k is proximate to."""
    return tuple(_proximity_sums(c, c.mults()))


def lambda_e(c: Cluster) -> tuple[Fraction, int]:
    if not c.points:
        return Fraction(0), 0
    ratios = [Fraction(b, a) for a, b in zip(discrepancies(c), total_multiplicities(c))]
    lam = max(ratios)
    return lam, ratios.count(lam)


def canonical_threshold(c: Cluster) -> Fraction | Infinity:
    pairs = [(a, b) for a, b in zip(discrepancies(c), total_multiplicities(c)) if b > 0]
    if not pairs:
        return INF
    return min(Fraction(a, b) for a, b in pairs)
