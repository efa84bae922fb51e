import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona.errors import (
    InfinitelyNearOrIrrational,
    InvalidInput,
    NonRationalBasePoint,
    SpecialPosition,
)
from cremona.exact_algebra import normalize_point, parse_poly
from cremona.realization import (
    RationalMap,
    apply_quadratic_to_point,
    base_points,
    compose,
    factor_by_quadratics,
    homaloidal_type_of,
    is_projective_linear,
    quadratic_from_points,
    random_corpus,
    verify_factorization,
)

DATA = Path(__file__).parent / "data"
STANDARD = RationalMap.from_json({"degree": 2, "polys": ["y*z", "x*z", "x*y"]})

small = st.integers(-3, 3)
points = st.tuples(small, small, small).filter(any).map(normalize_point)


def general_quadratic(draw):
    while True:
        try:
            return quadratic_from_points(*(draw(points) for _ in range(3)))
        except SpecialPosition:
            continue


def test_standard_quadratic():
    q = quadratic_from_points((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert q == STANDARD
    assert base_points(q) == [((0, 0, 1), 1), ((0, 1, 0), 1), ((1, 0, 0), 1)]


def test_quadratic_is_an_involution():
    q = quadratic_from_points((1, 2, 3), (0, 1, -1), (2, 1, 1))
    rows = is_projective_linear(compose(q, q))
    assert rows is not None
    # a scalar matrix
    assert rows[0][1] == rows[0][2] == rows[1][0] == 0 and rows[0][0] == rows[1][1] == rows[2][2]


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_point_image_matches_evaluation(data):
    q = general_quadratic(data.draw)
    pt = data.draw(points)
    try:
        image = apply_quadratic_to_point(q.centers, pt)
    except SpecialPosition:
        return
    assert normalize_point(q(pt)) == image


def test_collinear_centers():
    with pytest.raises(SpecialPosition):
        quadratic_from_points((1, 0, 0), (0, 1, 0), (1, 1, 0))
    with pytest.raises(SpecialPosition):
        quadratic_from_points((1, 0, 0), (2, 0, 0), (0, 0, 1))


def test_compose_with_identity():
    ident = RationalMap.identity()
    assert compose(STANDARD, ident) == STANDARD
    assert compose(ident, STANDARD) == STANDARD


def test_de_jonquieres_cubic():
    q1 = quadratic_from_points((1, 0, 0), (0, 1, 0), (0, 0, 1))
    q2 = quadratic_from_points((1, 0, 0), (1, 1, 1), (1, -1, 2))
    f = compose(q1, q2)
    assert f.degree == 3
    t = homaloidal_type_of(f)
    assert sorted(t.mults(), reverse=True) == [2, 1, 1, 1, 1]
    factors = factor_by_quadratics(f)
    assert len(factors) == 2
    assert verify_factorization(f, factors)


def test_conjugate_base_points():
    m = RationalMap.reduced([parse_poly(p) for p in ("x*z", "y*z", "x^2 - 2*y^2")])
    with pytest.raises(NonRationalBasePoint):
        base_points(m)


def test_infinitely_near_base_point():
    m = RationalMap.reduced([parse_poly(p) for p in ("x^2", "x*y", "y*z")])
    with pytest.raises(InfinitelyNearOrIrrational):
        base_points(m)


def test_map_json():
    m = RationalMap.from_json({"degree": 2, "polys": ["2*y*z", "2*x*z", "2*x*y"]})
    assert m == STANDARD
    assert m.to_json() == {"degree": 2, "polys": ["y*z", "x*z", "x*y"]}
    with pytest.raises(InvalidInput):
        RationalMap.from_json({"degree": 3, "polys": ["y*z", "x*z", "x*y"]})
    with pytest.raises(InvalidInput):
        RationalMap.from_json({"polys": ["y*z", "x", "x*y"]})
    with pytest.raises(InvalidInput):
        RationalMap.from_json({"degree": 2})


def test_corpus_golden():
    golden = (DATA / "corpus_seed2_k5_h2.jsonl").read_text().splitlines()
    fresh = [json.dumps(e.to_json(), sort_keys=True, ensure_ascii=False)
             for e in random_corpus(2, 5, 2)]
    assert fresh == golden


def test_corpus_entries_are_consistent():
    for entry in random_corpus(2, 5, 2)[1:]:
        found = dict(base_points(entry.map))
        mult = {p.id: p.mult for p in entry.type.cluster.points}
        assert found == {c: mult[i] for i, c in entry.points}


@pytest.mark.parametrize("seed", range(6))
def test_types_only_mode_agrees(seed):
    full = random_corpus(seed, 4, 2)
    light = random_corpus(seed, 4, 2, with_maps=False)
    assert [e.type for e in full] == [e.type for e in light]
    assert [e.points for e in full] == [e.points for e in light]
    assert all(e.map is None for e in light)


def test_corpus_rejects_bad_arguments():
    with pytest.raises(InvalidInput):
        random_corpus(0, -1, 2)
    with pytest.raises(InvalidInput):
        random_corpus(0, 3, 0)


def test_random_linear_change_keeps_type():
    rng = random.Random(3)
    f = random_corpus(3, 3, 2)[-1].map
    while True:
        rows = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        lin = RationalMap.linear(rows)
        if is_projective_linear(lin) is not None:
            break
    g = compose(lin, f)
    assert sorted(homaloidal_type_of(g).mults()) == sorted(homaloidal_type_of(f).mults())
