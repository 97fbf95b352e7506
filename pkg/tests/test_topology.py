import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from opgeo.compass import DistanceValue
from opgeo.model import Frame
from opgeo.scalar import Ordering, Tri, compare, sqrt
from opgeo.topology import (
    EMPTY,
    MATHEMATICIAN,
    WHOLE,
    OpenBall,
    balls_disjoint,
    check_open,
    contains_coords,
    hausdorff_witness,
    interior_ball,
    intersection,
    margin,
    member,
    sample_coords,
    union,
)

from conftest import coords

def ball(frame, center, r):
    return OpenBall(frame.mark(center), DistanceValue.of(r))

class TestMembership:
    def test_center_is_inside(self, plane):
        b = ball(plane, (1, 2), Fraction(1, 1000))
        assert member(b, b.center) is Tri.TRUE

    def test_boundary_excluded(self, plane):
        b = ball(plane, (0, 0), 5)
        assert member(b, plane.mark((3, 4))) is Tri.FALSE
        assert member(b, plane.mark((3, Fraction(399, 100)))) is Tri.TRUE

    def test_irrational_boundary(self, plane):
        b = OpenBall(plane.base, DistanceValue(sqrt(2)))
        assert member(b, plane.mark((1, 1))) is Tri.FALSE
        assert member(b, plane.mark((1, Fraction(99, 100)))) is Tri.TRUE

    def test_intersection_needs_both(self, plane):
        u, v = ball(plane, (0, 0), 2), ball(plane, (3, 0), 2)
        s = intersection(u, v)
        assert member(s, plane.mark((Fraction(3, 2), 0))) is Tri.TRUE
        assert member(s, plane.mark((Fraction(1, 2), 0))) is Tri.FALSE
        assert member(union(u, v), plane.mark((Fraction(1, 2), 0))) is Tri.TRUE

    def test_whole_and_empty(self, plane):
        p = plane.mark((9, 9))
        assert member(WHOLE, p) is Tri.TRUE
        assert member(EMPTY, p) is Tri.FALSE

    def test_radius_must_be_positive(self, plane):
        with pytest.raises(ValueError):
            ball(plane, (0, 0), 0)

    @given(coords(2), coords(2), st.integers(min_value=1, max_value=50))
    def test_membership_against_squares(self, c, x, r):
        f = Frame(2)
        b = OpenBall(f.mark(c), DistanceValue.of(r))
        d2 = sum((xi - ci) ** 2 for xi, ci in zip(x, c))
        assert member(b, f.mark(x)) is Tri.of(d2 < r * r)

class TestWitness:
    def test_single_ball_centre(self, plane):
        b = ball(plane, (0, 0), 2)
        w = interior_ball(b, b.center)
        assert w.radius == DistanceValue.of(1)
        assert interior_ball(b, b.center, MATHEMATICIAN).radius == DistanceValue.of(2)

    def test_three_ball_intersection_uses_smallest_margin(self, plane):
        s = intersection(ball(plane, (0, 0), 3), ball(plane, (1, 0), 3), ball(plane, (0, 1), 2))
        a = plane.mark((0, 0))
        # margins: 3, 2, 1
        assert compare(margin(s, a), 1) is Ordering.EQUAL
        assert interior_ball(s, a).radius == DistanceValue.of(Fraction(1, 2))

    def test_union_witness_from_own_leaf(self, plane):
        s = union(ball(plane, (0, 0), 1), ball(plane, (10, 0), 4))
        assert interior_ball(s, plane.mark((10, 0))).radius == DistanceValue.of(2)
        assert interior_ball(s, plane.mark((0, 0))).radius == DistanceValue.of(Fraction(1, 2))

    def test_outside_point_has_no_witness(self, plane):
        with pytest.raises(ValueError):
            interior_ball(ball(plane, (0, 0), 1), plane.mark((5, 5)))

    def test_factor_range(self, plane):
        b = ball(plane, (0, 0), 1)
        with pytest.raises(ValueError):
            interior_ball(b, b.center, 0)
        with pytest.raises(ValueError):
            interior_ball(b, b.center, Fraction(3, 2))

    def test_check_open_single_ball(self, plane):
        b = ball(plane, (0, 0), 3)
        rng = random.Random(4)
        probes = [plane.mark(xs) for xs in sample_coords(b, 100, rng)]
        rep = check_open(b, probes, samples=50, seed=1)
        assert len(rep.witnesses) == 100
        assert rep.ok

    def test_mathematician_witness_still_inside(self, space):
        s = intersection(ball(space, (0, 0, 0), 2), ball(space, (1, 1, 0), 2))
        probes = [space.mark((Fraction(1, 2), Fraction(1, 3), Fraction(k, 10))) for k in range(5)]
        rep = check_open(s, probes, MATHEMATICIAN, samples=200, seed=3)
        assert rep.ok

class TestHausdorff:
    def test_default_radius_half_distance(self, plane):
        u, v = hausdorff_witness(plane.mark((0, 0)), plane.mark((2, 0)))
        assert u.radius == DistanceValue.of(1) and v.radius == DistanceValue.of(1)
        assert balls_disjoint(u, v) is Tri.TRUE

    def test_cautious_divisor(self, plane):
        u, v = hausdorff_witness(plane.mark((0, 0)), plane.mark((2, 0)), 4)
        assert u.radius == DistanceValue.of(Fraction(1, 2))
        assert balls_disjoint(u, v) is Tri.TRUE

    def test_same_point(self, plane):
        p = plane.mark((1, 1))
        with pytest.raises(ValueError):
            hausdorff_witness(p, p)
        with pytest.raises(ValueError):
            hausdorff_witness(p, plane.mark((0, 0)), 2)

    def test_overlap_detected(self, plane):
        assert balls_disjoint(ball(plane, (0, 0), 2), ball(plane, (3, 0), 2)) is Tri.FALSE

    @given(coords(3), coords(3))
    def test_samples_never_in_both(self, x, y):
        f = Frame(3)
        a, b = f.mark(x), f.mark(y)
        if a == b:
            return
        u, v = hausdorff_witness(a, b)
        rng = random.Random(0)
        for xs in sample_coords(u, 20, rng) + sample_coords(v, 20, rng):
            assert (contains_coords(u, xs) & contains_coords(v, xs)) is Tri.FALSE

def test_samples_are_strictly_inside(space):
    b = OpenBall(space.mark((1, 2, 3)), DistanceValue(sqrt(3)))
    for xs in sample_coords(b, 300, random.Random(9)):
        assert contains_coords(b, xs) is Tri.TRUE
    assert len(space) == 2  # base point and centre; samples are not marked
