import pytest

from weylcalc import (
    Inconclusive,
    aw_identity,
    from_parts,
    omega_elements,
    simple_reflections,
    translation,
)
from weylcalc.oracle import brute_min_length, brute_straight_check, cayley_ball


def test_ball_radius_zero(pgl2):
    ball = cayley_ball(pgl2, 0)
    omega_keys = {w.key for w in omega_elements(pgl2)}
    assert set(ball.elements) == omega_keys
    assert all(d == 0 for d in ball.distances.values())


def test_ball_sl2_radius_3(sl2):
    # infinite dihedral growth: 1 + 2 + 2 + 2
    ball = cayley_ball(sl2, 3)
    assert len(ball.elements) == 7
    by_level = {}
    for key, d in ball.distances.items():
        by_level.setdefault(d, 0)
        by_level[d] += 1
    assert by_level == {0: 1, 1: 2, 2: 2, 3: 2}


def test_ball_distances_match_length(sl2, pgl2, sl3, sp4):
    for datum in (sl2, pgl2, sl3, sp4):
        ball = cayley_ball(datum, 4)
        for key, w in ball.elements.items():
            assert w.length == ball.distances[key]


def test_ball_neighbor_distance_property(sl3):
    ball = cayley_ball(sl3, 4)
    inner = {k: w for k, w in ball.elements.items() if ball.distances[k] < 4}
    for key, w in inner.items():
        for _, s in simple_reflections(sl3):
            sw = s * w
            assert abs(ball.distances[key] - ball.distances[sw.key]) == 1


def test_ball_closed_under_inverse(sl3):
    ball = cayley_ball(sl3, 4)
    for key, w in ball.elements.items():
        assert w.inv().key in ball.distances
        assert ball.distances[w.inv().key] == ball.distances[key]


def test_brute_min_examples(sl2):
    w = from_parts(sl2, (2,), [0])  # s0 s1 s0
    assert brute_min_length(w, 2) == 1
    assert brute_min_length(aw_identity(sl2), 2) == 0
    t = translation(sl2, (-1,))  # straight
    assert brute_min_length(t, 3) == t.length


def test_brute_min_inconclusive(sl2):
    # radius 0 cannot certify anything that still descends at the boundary
    w = from_parts(sl2, (2,), [0])
    with pytest.raises(Inconclusive):
        brute_min_length(w, 0)


def test_brute_straight_examples(sl2, pgl2):
    assert brute_straight_check(translation(sl2, (-1,)), 12)
    assert not brute_straight_check(from_parts(sl2, (0,), [0]), 2)
    for tau in omega_elements(pgl2):
        assert brute_straight_check(tau, 6)
