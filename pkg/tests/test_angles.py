from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from opgeo.angles import (
    AngleValue,
    Arc,
    Orientation,
    PlaneChart,
    angle,
    angle_add,
    angle_equivalent,
    angle_scale,
    angle_sum_construction,
    arc_length,
    format_angle,
    measured_angle_report,
    partition_length,
    rotate_point,
    rotate_vector,
    rotation_aligning,
    rotation_by,
    sin_cos,
    tape_measure_angle,
    triangle_ratios,
    uniform_partition,
)
from opgeo.compass import DistanceValue
from opgeo.model import Frame
from opgeo.scalar import PI, ONE, ZERO, Ordering, Tri, compare, sqrt
from opgeo.vectors import VectorClass

from conftest import coords, positive_rationals

CCW, CW = Orientation.CCW, Orientation.CW
mpmath.mp.dps = 40


def vec(frame, *xs):
    return VectorClass.of(frame, xs)


def oracle_angle(a, b):
    """Counterclockwise opening from a to b with mpmath, in [0, 2pi)."""
    t = mpmath.atan2(b[1], b[0]) - mpmath.atan2(a[1], a[0])
    return t % (2 * mpmath.pi)


class TestAngle:
    def test_quarter_turn(self, plane):
        assert angle(vec(plane, 1, 0), vec(plane, 0, 1)) == AngleValue(PI / 2)

    def test_coincident(self, plane):
        a = vec(plane, 3, -7)
        assert compare(angle(a, a).value, ZERO) is Ordering.EQUAL

    def test_clockwise(self, plane):
        alpha = angle(vec(plane, 1, 0), vec(plane, 0, 1), CW)
        assert compare(alpha.value, 3 * PI / 2) is Ordering.EQUAL
        assert alpha.orientation is CW

    def test_zero_vector_has_no_direction(self, plane):
        with pytest.raises(ValueError):
            angle(VectorClass.zero(plane), vec(plane, 1, 0))

    @given(coords(2), coords(2))
    def test_against_atan2(self, x, y):
        if not any(x) or not any(y):
            return
        f = Frame(2)
        got = angle(VectorClass.of(f, x), VectorClass.of(f, y))
        want = oracle_angle([mpmath.mpf(c.numerator) / c.denominator for c in x],
                            [mpmath.mpf(c.numerator) / c.denominator for c in y])
        assert abs(float(got.value) - float(want)) < 1e-12 or abs(float(got.value) - float(want)) > 6.28

    def test_chart_in_space(self, space):
        chart = PlaneChart.from_vectors(vec(space, 1, 0, 1), vec(space, 0, 1, 0))
        a, b = vec(space, 1, 0, 1), vec(space, 0, 2, 0)
        assert angle(a, b, chart=chart) == AngleValue(PI / 2)
        with pytest.raises(ValueError):
            angle(a, vec(space, 0, 0, 1), chart=chart)
        with pytest.raises(ValueError):
            angle(a, b)


class TestArithmetic:
    def test_add(self):
        half = AngleValue(PI / 2)
        assert angle_add(half, half) == AngleValue(PI)
        assert angle_add(half, AngleValue(ZERO)) == half

    def test_winding(self):
        three_quarters = AngleValue(3 * PI / 2)
        total = angle_add(three_quarters, three_quarters)
        assert total.winding == 1
        assert compare(total.value, PI) is Ordering.EQUAL

    def test_scale(self):
        alpha = AngleValue(PI / 3)
        assert angle_scale(1, alpha) == alpha
        neg = angle_scale(-1, alpha)
        assert neg.orientation is CW
        assert compare(angle_add(alpha, neg).value, ZERO) is Ordering.EQUAL
        assert angle_scale(Fraction(3, 2), alpha) == AngleValue(PI / 2)

    def test_equivalence_of_rotated_pairs(self, plane):
        a, b = vec(plane, 2, 1), vec(plane, -1, 3)
        rot = rotation_by(AngleValue(PI / 4), frame=plane)
        pair2 = (rotate_vector(rot, a), rotate_vector(rot, b))
        assert angle_equivalent((a, b), pair2) is Tri.TRUE


class TestRotation:
    def test_aligning_axes(self, plane):
        rot = rotation_aligning(vec(plane, 1, 0), vec(plane, 0, 1))
        assert rot.angle == AngleValue(PI / 2)
        assert rotate_vector(rot, vec(plane, 1, 0)) == vec(plane, 0, 1)

    def test_identity(self, plane):
        a = vec(plane, 3, 4)
        rot = rotation_aligning(a, a)
        assert rotate_vector(rot, vec(plane, 5, -2)) == vec(plane, 5, -2)

    def test_rotation_is_isometry(self, plane):
        rot = rotation_by(AngleValue(PI / 6), plane.mark((1, 1)))
        p, q = plane.mark((3, 0)), plane.mark((-2, 5))
        from opgeo.compass import distance

        assert distance(rotate_point(rot, p), rotate_point(rot, q)) == distance(p, q)

    @given(coords(2), coords(2), coords(2), coords(2))
    def test_sum_construction_matches_addition(self, w, x, y, z):
        if not all(any(v) for v in (w, x, y, z)):
            return
        f = Frame(2)
        a, b, c, d = (VectorClass.of(f, v) for v in (w, x, y, z))
        drawn = angle_sum_construction(a, b, c, d)
        summed = angle_add(angle(a, b), angle(c, d))
        # the construction yields the principal value of the sum
        assert drawn.equals(summed.normalized()) is Tri.TRUE


def quarter_arc(frame, radius):
    return Arc(frame.base, DistanceValue.of(radius), vec(frame, 1, 0), vec(frame, 0, 1))


class TestPartitions:
    def test_semicircle_two_marks_is_diameter(self, plane):
        arc = Arc(plane.base, DistanceValue.of(1), vec(plane, 1, 0), vec(plane, -1, 0))
        assert partition_length(arc, 2) == DistanceValue.of(2)

    @pytest.mark.parametrize("n", [2, 3, 5, 9, 17, 100])
    def test_uniform_sum_against_mpmath(self, plane, n):
        arc = quarter_arc(plane, 2)
        want = 2 * 2 * (n - 1) * mpmath.sin(mpmath.pi / 2 / (2 * (n - 1)))
        assert abs(float(partition_length(arc, n).magnitude) - float(want)) < 1e-12

    def test_explicit_partition_matches_uniform(self, plane):
        arc = quarter_arc(plane, 2)
        p = uniform_partition(arc, 5)
        assert len(p.points) == 5
        assert partition_length(arc, p) == partition_length(arc, 5)

    def test_refinement_never_shortens(self, plane):
        arc = quarter_arc(plane, 2)
        prev = partition_length(arc, 2).magnitude
        for n in (3, 5, 9, 17, 33):
            cur = partition_length(arc, n).magnitude
            assert compare(prev, cur) is Ordering.LESS
            prev = cur

    def test_arc_length_quarter(self, plane):
        l = arc_length(quarter_arc(plane, 2), Fraction(1, 10**6)).magnitude
        assert abs(float(l) - float(mpmath.pi)) < 1e-6

    def test_arc_length_full_circle(self, plane):
        arc = Arc(plane.base, DistanceValue.of(1), vec(plane, 1, 0), vec(plane, 1, 0), full_turn=True)
        l = arc_length(arc, Fraction(1, 10**4)).magnitude
        assert abs(float(l) - 2 * float(mpmath.pi)) < 1e-4

    def test_zero_opening(self, plane):
        arc = Arc(plane.base, DistanceValue.of(1), vec(plane, 1, 0), vec(plane, 2, 0))
        assert arc_length(arc, Fraction(1, 100)) == DistanceValue.of(0)

    def test_radius_must_be_positive(self, plane):
        with pytest.raises(ValueError):
            Arc(plane.base, DistanceValue.of(0), vec(plane, 1, 0), vec(plane, 0, 1))

    @given(positive_rationals, positive_rationals)
    def test_ratio_constancy(self, r1, r2):
        f = Frame(2)
        s1 = partition_length(quarter_arc(f, r1), 7).magnitude / r1
        s2 = partition_length(quarter_arc(f, r2), 7).magnitude / r2
        assert compare(s1, s2) is Ordering.EQUAL


class TestTape:
    def test_classroom_reading(self):
        alpha = tape_measure_angle(10, Fraction(97, 10), Fraction(1, 10))
        assert alpha.value.as_fraction() == Fraction(100, 97)
        assert format_angle(alpha, 2) == "1.03"

    def test_semicircle_quantized(self, plane):
        arc = Arc(plane.base, DistanceValue.of(1), vec(plane, 1, 0), vec(plane, -1, 0))
        reading = measured_angle_report(arc, Fraction(1, 10))
        assert reading.value.as_fraction() == Fraction(31, 10)
        assert abs(float(reading.value) - float(mpmath.pi)) <= 0.1

    def test_fine_tape_approaches_exact(self, plane):
        arc = quarter_arc(plane, 3)
        exact = float(angle(vec(plane, 1, 0), vec(plane, 0, 1)).value)
        for res in (Fraction(1, 10), Fraction(1, 1000), Fraction(1, 10**6)):
            err = abs(float(measured_angle_report(arc, res).value) - exact)
            assert err <= 2 * float(res)

    def test_radius_below_resolution(self):
        with pytest.raises(ValueError):
            tape_measure_angle(1, Fraction(1, 100), Fraction(1, 10))


class TestTrig:
    def test_zero_angle(self):
        s, c = sin_cos(AngleValue(ZERO))
        assert compare(s, ZERO) is Ordering.EQUAL and compare(c, ONE) is Ordering.EQUAL

    @pytest.mark.parametrize("k", range(1, 12))
    def test_twelfths_against_mpmath(self, k):
        s, c = sin_cos(AngleValue(k * PI / 6))
        assert abs(float(s) - float(mpmath.sin(k * mpmath.pi / 6))) < 1e-15
        assert abs(float(c) - float(mpmath.cos(k * mpmath.pi / 6))) < 1e-15

    def test_pi_over_eight_is_a_radical(self):
        s, c = sin_cos(AngleValue(PI / 8))
        assert compare(s * s, (2 - sqrt(2)) / 4) is Ordering.EQUAL
        assert c.is_algebraic()

    def test_non_constructible_angle_uses_atoms(self):
        s, c = sin_cos(AngleValue(Fraction(1)))
        assert abs(float(s) - float(mpmath.sin(1))) < 1e-15
        # not decidable from enclosures alone: undecided, never wrong, and tight
        one = s * s + c * c
        assert compare(one, ONE) is Ordering.UNCERTAIN
        lo, hi = one.interval(512)
        assert lo <= 1 <= hi and hi - lo < Fraction(1, 2**400)

    @given(coords(2), coords(2), st.sampled_from([Fraction(1, 3), 1, 2, Fraction(7, 2), 10]))
    def test_ratios_do_not_depend_on_scale(self, x, y, k):
        if not any(x) or not any(y):
            return
        f = Frame(2)
        a, b = VectorClass.of(f, x), VectorClass.of(f, y)
        s1, c1 = triangle_ratios(a, b, 1)
        sk, ck = triangle_ratios(a, b, k)
        assert compare(s1, sk) is Ordering.EQUAL and compare(c1, ck) is Ordering.EQUAL
        assert compare(s1 * s1 + c1 * c1, ONE) is Ordering.EQUAL
