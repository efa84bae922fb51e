from fractions import Fraction

import pytest
from hypothesis import given, settings
from strategies import corpus_types

from cremona.cluster import ClusterPoint
from cremona.errors import InvalidInput, InvalidState, NotApplicable, NotHomaloidal
from cremona.marked_system import (
    Fano3Data,
    HomaloidalType,
    Isomorphism,
    MarkedSystem,
    MaxSingularity,
    NegativeFiberCoeff,
    PositionedPoint,
    SarkisovDegree,
    Surface,
    classify,
    fano3_classify,
    format_type,
    from_homaloidal,
    noether_fano_certificate,
    noether_inequality,
    parse_type,
    sarkisov_degree,
    validate_homaloidal,
)


def pp(pid, mult, **kw):
    return PositionedPoint(ClusterPoint(pid, mult), **kw)


@pytest.mark.parametrize("text", ["1;", "2;1,1,1", "3;2,1,1,1,1", "5;2,2,2,2,2,2",
                                  "2;1,1>1,1", "4;3,1,1,1,1,1,1", "8;3,3,3,3,3,3,3",
                                  "17;6,6,6,6,6,6,6,6"])
def test_classical_types_are_homaloidal(text):
    t = parse_type(text)
    assert validate_homaloidal(t)
    if t.n > 1:
        assert noether_inequality(t)


def test_parse_format_round_trip():
    t = parse_type("3; 2, 1>1, 1, 1, 1")
    assert t.cluster.get("p2").parent == "p1"
    assert parse_type(format_type(t)).same_as(t)


@pytest.mark.parametrize("bad", ["", "2", "x;1", "2;1,a", "2;1>3,1,1", "0;"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidInput):
        parse_type(bad)


def test_identities_fail():
    assert not validate_homaloidal(parse_type("3;1,1"))
    with pytest.raises(NotHomaloidal):
        from_homaloidal(parse_type("3;1,1"))


def test_noether_not_applicable_to_lines():
    with pytest.raises(NotApplicable):
        noether_inequality(parse_type("1;"))


def test_from_homaloidal():
    ms = from_homaloidal(parse_type("2;1,1,1"))
    assert ms.surface == Surface.p2()
    assert (ms.a, ms.b) == (Fraction(2, 3), 0)
    assert ms.self_intersection() - sum(p.mult ** 2 for p in ms.points) == 1
    assert ms.anticanonical_degree() - sum(p.mult for p in ms.points) == 3


def test_surface_names():
    assert Surface.p2().name == "P2"
    assert Surface.hirzebruch(0).name == "F0a"
    assert Surface.hirzebruch(0, "b").name == "F0b"
    assert Surface.hirzebruch(3).name == "F3"
    for name in ("P2", "F0a", "F0b", "F1", "F12"):
        assert Surface.parse(name).name == name
    with pytest.raises(InvalidInput):
        Surface.parse("F0")


def test_hirzebruch_numerics():
    # H = -aK + bf on F_N: H^2 = 8a^2 + 4ab, -K.H = 8a + 2b
    ms = MarkedSystem(Surface.hirzebruch(1), Fraction(1, 2), Fraction(1, 2),
                      (pp("p", 1), pp("q", 1)))
    assert ms.self_intersection() == 3
    assert ms.anticanonical_degree() == 5


def test_integrality_uses_section_class():
    # on F_1, a = 1/2 and b = 0 gives half the class s + 2f, not integral
    with pytest.raises(InvalidState):
        MarkedSystem(Surface.hirzebruch(1), Fraction(1, 2), Fraction(0))


def test_invalid_states():
    with pytest.raises(InvalidState):
        MarkedSystem(Surface.p2(), Fraction(2, 3), 0, (pp("p", 1),))
    with pytest.raises(InvalidState):
        MarkedSystem(Surface.hirzebruch(0), Fraction(1, 2), 0,
                     (pp("p", 1, on_negative_section=True),))
    with pytest.raises(InvalidState):
        MarkedSystem(Surface.p2(), Fraction(-1, 3), 0)


def test_classify():
    assert classify(from_homaloidal(parse_type("1;"))) == Isomorphism()
    assert classify(from_homaloidal(parse_type("2;1,1,1"))) == MaxSingularity("p1")
    ms = MarkedSystem(Surface.hirzebruch(1), Fraction(1, 2), Fraction(-1, 2))
    assert classify(ms) == NegativeFiberCoeff()


def test_sarkisov_degree_order():
    assert SarkisovDegree(Fraction(1), Fraction(2), 1) < SarkisovDegree(Fraction(1), Fraction(2), 2)
    assert SarkisovDegree(Fraction(1), Fraction(5), 9) < SarkisovDegree(Fraction(2), Fraction(0), 0)
    d = sarkisov_degree(from_homaloidal(parse_type("5;2,2,2,2,2,2")))
    assert d == SarkisovDegree(Fraction(5, 3), Fraction(2), 6)


@settings(max_examples=60, deadline=None)
@given(corpus_types())
def test_certificate_only_at_lines(t):
    ms = from_homaloidal(t)
    assert noether_fano_certificate(ms) == (t.n == 1)


def test_type_json_round_trip():
    t = parse_type("2;1,1>1,1")
    assert HomaloidalType.from_json(t.to_json()).same_as(t)


# maximal-singularity thresholds on a Fano threefold with r = 4, H^3 = 1
FANO_TABLE = [
    # (n, curves, points, near_curves, curve flags, point flags, near flags)
    (8, ((15, 3),), (), (), (True,), (), ()),
    (8, ((16, 3),), (), (), (False,), (), ()),
    (8, ((15, 2),), (), (), (False,), (), ()),
    (8, ((1, Fraction(5, 2)),), (), (), (True,), (), ()),
    (8, (), (5, 4), (), (), (True, False), ()),
    (12, (), (Fraction(13, 2), 6), (), (), (True, False), ()),
    (8, (), (), (3, 2), (), (), (True, False)),
]


@pytest.mark.parametrize("n, curves, points, near, cf, pf, nf", FANO_TABLE)
def test_fano_thresholds(n, curves, points, near, cf, pf, nf):
    rep = fano3_classify(Fano3Data(n, 4, 1, curves, points, near))
    assert rep.curve_threshold == Fraction(n, 4)
    assert rep.point_threshold == Fraction(n, 2)
    assert rep.degree_bound == 16
    assert rep.curve_flags == cf
    assert rep.point_flags == pf
    assert rep.near_flags == nf
    assert rep.to_json()["near_curve_degree"] == "indeterminate bound"


def test_fano_rejects_bad_data():
    with pytest.raises(InvalidInput):
        Fano3Data(0, 4, 1)
    with pytest.raises(InvalidInput):
        Fano3Data(8, 4, 1, curves=((0, 1),))
