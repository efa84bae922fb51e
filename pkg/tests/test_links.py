from fractions import Fraction

import pytest
from hypothesis import given, settings
from strategies import corpus_types

from cremona.cluster import Cluster, ClusterPoint
from cremona.errors import (
    InvalidComposition,
    InvalidInput,
    InvalidTrace,
    NotProperPoint,
    SpecialPosition,
    WrongSurface,
)
from cremona.links import (
    FreshPoint,
    LinkTrace,
    apply_A,
    apply_AInv,
    apply_B,
    apply_C,
    compose_quadratic,
    factorize,
    recompose,
)
from cremona.marked_system import (
    HomaloidalType,
    MarkedSystem,
    PositionedPoint,
    SarkisovDegree,
    Surface,
    from_homaloidal,
    parse_type,
    sarkisov_degree,
    validate_homaloidal,
)

INFINITELY_NEAR = [
    "2;1,1>1,1",
    "2;1,1>1,1>2",
    "3;2,1>1,1,1,1",
    "3;2,1>1,1>2,1>3,1",
    "4;3,1>1,1>2,1>3,1>4,1>5,1>6",
    "5;4,1>1,1>2,1>3,1>4,1>5,1>6,1>7,1>8",
    "5;2,2>1,2,2,2,2",
]


def conserved(ms: MarkedSystem) -> bool:
    sq = sum(p.mult ** 2 for p in ms.points)
    sm = sum(p.mult for p in ms.points)
    return ms.self_intersection() - sq == 1 and ms.anticanonical_degree() - sm == 3


def test_standard_quadratic_trace():
    trace = factorize(parse_type("2;1,1,1"))
    assert trace.kinds == ["A", "B", "B", "AInv"]
    half = Fraction(1, 2)
    assert [s.degree for s in trace.steps] == [
        SarkisovDegree(half, Fraction(1), 2),
        SarkisovDegree(half, Fraction(1), 1),
        SarkisovDegree(half, Fraction(0), 0),
        SarkisovDegree(Fraction(1, 3), Fraction(0), 0),
    ]
    assert [s.after.surface.name for s in trace.steps] == ["F1", "F0a", "F1", "P2"]


def test_identity_has_empty_trace():
    trace = factorize(parse_type("1;"))
    assert len(trace) == 0
    assert recompose(trace).same_as(parse_type("1;"))


def test_six_double_points_swaps_rulings():
    trace = factorize(parse_type("5;2,2,2,2,2,2"))
    assert trace.kinds == ["A"] + ["B"] * 5 + ["C"] + ["B"] * 5 + ["AInv"]


@pytest.mark.parametrize("text", INFINITELY_NEAR)
def test_infinitely_near_round_trip(text):
    t = parse_type(text)
    trace = factorize(t)
    assert trace.final.surface.is_plane and trace.final.a == Fraction(1, 3)
    assert not trace.final.points
    assert recompose(trace).same_as(t)


@settings(max_examples=80, deadline=None)
@given(corpus_types(k=8))
def test_factorize_properties(t):
    trace = factorize(t)
    states = [trace.initial] + [s.after for s in trace.steps]
    assert all(conserved(ms) for ms in states)
    degrees = [sarkisov_degree(trace.initial)] + [s.degree for s in trace.steps]
    assert all(b < a for a, b in zip(degrees, degrees[1:]))
    assert recompose(trace).same_as(t)


def test_satellite_center_is_special():
    c = Cluster((ClusterPoint("p1", 2), ClusterPoint("p2", 1, "p1"),
                 ClusterPoint("p3", 1, "p2", frozenset({"p1"})),
                 ClusterPoint("p4", 1), ClusterPoint("p5", 1)))
    t = HomaloidalType(3, c)
    assert validate_homaloidal(t)
    with pytest.raises(SpecialPosition):
        factorize(t)


def test_A_then_AInv():
    ms = from_homaloidal(parse_type("3;2,1,1,1,1"))
    f1 = apply_A(ms, "p1")
    assert f1.surface.N == 1
    assert (f1.a, f1.b) == (Fraction(1, 2), Fraction(3, 2))
    back = apply_AInv(f1, "p1")
    assert back.key() == ms.key()


def test_A_at_fresh_point():
    ms = from_homaloidal(parse_type("2;1,1,1"))
    f1 = apply_A(ms, FreshPoint())
    assert (f1.a, f1.b) == (Fraction(1), Fraction(-1))
    assert conserved(f1)
    assert apply_AInv(f1).key() == ms.key()


def test_C_is_an_involution():
    trace = factorize(parse_type("5;2,2,2,2,2,2"))
    f0 = next(s.before for s in trace.steps if s.link.kind == "C")
    assert apply_C(apply_C(f0)) == f0
    assert apply_C(f0).surface.ruling != f0.surface.ruling


def test_B_is_undone_by_B():
    trace = factorize(parse_type("2;1,1,1"))
    step = trace.steps[1]
    assert step.link.kind == "B"
    forward = apply_B(step.before, "p2")
    assert forward == step.after
    back = apply_B(forward, step.new_position or FreshPoint(), "p2",
                   step.before.surface.ruling or "a")
    assert back.a == step.before.a and back.b == step.before.b
    assert back.surface == step.before.surface
    assert sorted(p.mult for p in back.points) == sorted(p.mult for p in step.before.points)


def test_link_surface_errors():
    p2 = from_homaloidal(parse_type("2;1,1,1"))
    with pytest.raises(WrongSurface):
        apply_AInv(p2)
    with pytest.raises(WrongSurface):
        apply_B(p2, "p1")
    with pytest.raises(WrongSurface):
        apply_C(p2)
    f1 = apply_A(p2, "p1")
    with pytest.raises(WrongSurface):
        apply_A(f1, "p2")


def test_center_must_be_proper():
    ms = from_homaloidal(parse_type("2;1,1>1,1"))
    with pytest.raises(NotProperPoint):
        apply_A(ms, "p2")


def test_recompose_rejects_truncated_trace():
    trace = factorize(parse_type("2;1,1,1"))
    with pytest.raises(InvalidTrace):
        recompose(LinkTrace(trace.steps[:-1], trace.initial))


def test_compose_quadratic():
    line = HomaloidalType(1)
    q = compose_quadratic(line, ["a", "b", "c"])
    assert q.n == 2 and sorted(q.mults()) == [1, 1, 1]
    assert compose_quadratic(q, ["a", "b", "c"]).same_as(line)
    cubic = compose_quadratic(q, ["a", "d", "e"])
    assert cubic.n == 3 and sorted(cubic.mults()) == [1, 1, 1, 1, 2]


def test_compose_quadratic_errors():
    q = parse_type("2;1,1,1")
    with pytest.raises(InvalidInput):
        compose_quadratic(q, ["p1", "p1", "x"])
    with pytest.raises(InvalidInput):
        compose_quadratic(q, ["p1", "p2"])
    near = parse_type("2;1,1>1,1")
    with pytest.raises(NotProperPoint):
        compose_quadratic(near, ["p2", "p3", "x"])
    with pytest.raises(SpecialPosition):
        compose_quadratic(near, ["p1", "p3", "x"])
    with pytest.raises(InvalidComposition):
        compose_quadratic(HomaloidalType(2, Cluster.proper([2, 2, 1])), ["p1", "p2", "p3"])


def test_trace_json_shape():
    row = factorize(parse_type("2;1,1,1")).to_json()[0]
    assert row == {"link": "A", "center": "p1", "surface_after": "F1", "a": "1/2", "b": "1/2",
                   "degree": ["1/2", "1", 2], "new_point": None}


def test_AInv_hangs_section_points_under_new_point():
    # a point on the negative section of F1 is infinitely near the contracted point
    f1 = MarkedSystem(Surface.hirzebruch(1), Fraction(1, 2), Fraction(1, 2),
                      (PositionedPoint(ClusterPoint("p", 1), on_negative_section=True),
                       PositionedPoint(ClusterPoint("q", 1))))
    back = apply_AInv(f1, "w")
    assert back.cluster.get("p").parent == "w"
