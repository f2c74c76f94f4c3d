from hypothesis import given
from hypothesis import strategies as st

from flipred.predicates import incircle, incircle_sos, orient, segments_cross

coord = st.integers(-50, 50)
point = st.tuples(coord, coord)


def test_orient_signs():
    assert orient((0, 0), (1, 0), (0, 1)) > 0
    assert orient((0, 0), (0, 1), (1, 0)) < 0
    assert orient((0, 0), (1, 1), (2, 2)) == 0


def test_incircle_unit_square():
    a, b, c = (0, 0), (2, 0), (2, 2)
    assert incircle(a, b, c, (1, 1)) > 0
    assert incircle(a, b, c, (5, 5)) < 0
    assert incircle(a, b, c, (0, 2)) == 0


def test_incircle_sos_breaks_cocircular_ties():
    pts = [(0, 0), (2, 0), (2, 2), (0, 2)]
    s = incircle_sos(pts, 0, 1, 2, 3)
    assert s in (-1, 1)
    # the same four points in the other diagonal's order get the opposite verdict
    assert incircle_sos(pts, 1, 2, 3, 0) == -s


@given(point, point, point)
def test_orient_antisymmetric(p, q, r):
    assert orient(p, q, r) == -orient(q, p, r) == orient(q, r, p)


@given(point, point, point, point)
def test_incircle_rotation_invariant(a, b, c, d):
    assert incircle(a, b, c, d) == incircle(b, c, a, d)


def test_segments_cross():
    assert segments_cross((0, 0), (2, 2), (0, 2), (2, 0))
    assert not segments_cross((0, 0), (1, 1), (2, 2), (3, 3))
    # shared endpoints do not count as crossing
    assert not segments_cross((0, 0), (2, 0), (2, 0), (2, 2))
