"""Angles as arc length over radius, rotations, and the trigonometric ratios.

Directions of constructible vectors enter the scalar tower as atoms
(``atan2`` symbols) so that angle values stay exact expressions: the opening
from a to b is atom(b) - atom(a), shifted by 2*pi when needed.  Cosines and
sines come back as radicals whenever the opening is built from direction
atoms and pi/12 with power-of-two denominators, which covers every uniform
dyadic partition of an arc.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .compass import DistanceValue, distance
from .model import Frame, PointId, frame_of
from .scalar import (
    ONE,
    PI,
    ZERO,
    Number,
    Ordering,
    Scalar,
    Tri,
    UncertainComparison,
    as_scalar,
    compare,
    cos_sin,
    direction_angle,
    exact_unit,
    sqrt,
)
from .straightedge import foot, Line
from .vectors import VectorClass, point_plus_vector

__all__ = [
    "Orientation",
    "AngleValue",
    "Arc",
    "Partition",
    "Rotation",
    "PlaneChart",
    "angle",
    "angle_equivalent",
    "angle_add",
    "angle_sum_construction",
    "angle_scale",
    "partition_length",
    "uniform_partition",
    "arc_length",
    "rotation_aligning",
    "rotation_by",
    "rotate_vector",
    "rotate_point",
    "sin_cos",
    "triangle_ratios",
    "measured_angle_report",
    "tape_measure_angle",
    "format_angle",
    "chord_error_bound",
]

TWO_PI = 2 * PI


class Orientation(enum.Enum):
    CCW = "ccw"
    CW = "cw"

    @property
    def sign(self) -> int:
        return 1 if self is Orientation.CCW else -1

    def reversed(self) -> Orientation:
        return Orientation.CW if self is Orientation.CCW else Orientation.CCW


# ---------------------------------------------------------------------------
# planes of 3D frames


@dataclass(frozen=True, eq=False)
class PlaneChart:
    """Orthonormal frame (u, v) of a plane through the base point."""

    u: VectorClass
    v: VectorClass

    @classmethod
    def from_vectors(cls, e1: VectorClass, e2: VectorClass) -> PlaneChart:
        n1 = sqrt(e1.dot(e1))
        u = VectorClass(e1.frame, tuple(c / n1 for c in e1.components))
        w = tuple(c - e2.dot(u) * uc for c, uc in zip(e2.components, u.components))
        nw = sqrt(sum((c * c for c in w), ZERO))
        if nw.is_zero_form() or compare(nw, ZERO) is Ordering.EQUAL:
            raise ValueError("a plane needs two non-parallel vectors")
        return cls(u, VectorClass(e1.frame, tuple(c / nw for c in w)))

    def to_plane(self, a: VectorClass) -> tuple[Scalar, Scalar]:
        x, y = a.dot(self.u), a.dot(self.v)
        rest = [c - x * uc - y * vc for c, uc, vc in zip(a.components, self.u.components, self.v.components)]
        if any(compare(r, ZERO) is not Ordering.EQUAL for r in rest):
            raise ValueError("vector does not lie in the plane of the chart")
        return x, y

    def from_plane(self, x: Scalar, y: Scalar) -> VectorClass:
        return VectorClass(
            self.u.frame,
            tuple(x * uc + y * vc for uc, vc in zip(self.u.components, self.v.components)),
        )


def _planar(a: VectorClass, chart: PlaneChart | None) -> tuple[Scalar, Scalar]:
    if chart is not None:
        return chart.to_plane(a)
    if a.frame.dimension != 2:
        raise ValueError("angles in a 3D frame need a PlaneChart")
    return a.components[0], a.components[1]


def _unplanar(frame: Frame, x: Scalar, y: Scalar, chart: PlaneChart | None) -> VectorClass:
    if chart is not None:
        return chart.from_plane(x, y)
    return VectorClass(frame, (x, y))


def _direction(a: VectorClass, chart: PlaneChart | None) -> Scalar:
    x, y = _planar(a, chart)
    if compare(x, ZERO) is Ordering.EQUAL and compare(y, ZERO) is Ordering.EQUAL:
        raise ValueError("the zero vector has no direction")
    return direction_angle(x, y)


# ---------------------------------------------------------------------------
# angle values


def _winding_split(magnitude: Scalar) -> tuple[Scalar, int]:
    """magnitude = value + 2*pi*k with value in [0, 2*pi)."""
    k = math.floor(float(magnitude) / (2 * math.pi))
    for _ in range(4):
        if compare(magnitude, TWO_PI * k) is Ordering.LESS:
            k -= 1
        elif compare(magnitude, TWO_PI * (k + 1)) in (Ordering.GREATER, Ordering.EQUAL):
            k += 1
        else:
            break
    lo = compare(magnitude, TWO_PI * k)
    hi = compare(magnitude, TWO_PI * (k + 1))
    if Ordering.UNCERTAIN in (lo, hi):
        raise UncertainComparison("winding index is undecided")
    return magnitude - TWO_PI * k, k


@dataclass(frozen=True, eq=False)
class AngleValue:
    """Oriented opening: total = value + 2*pi*winding, value in [0, 2*pi).

    ``rad`` is only a label for these numbers.
    """

    value: Scalar
    orientation: Orientation = Orientation.CCW
    winding: int = 0

    @property
    def total(self) -> Scalar:
        return self.value + TWO_PI * self.winding if self.winding else self.value

    @property
    def signed(self) -> Scalar:
        return self.total if self.orientation is Orientation.CCW else -self.total

    @classmethod
    def from_signed(cls, total: Number) -> AngleValue:
        total = as_scalar(total)
        o = compare(total, ZERO)
        if o is Ordering.UNCERTAIN:
            raise UncertainComparison("orientation of the angle is undecided")
        orientation = Orientation.CW if o is Ordering.LESS else Orientation.CCW
        magnitude = -total if o is Ordering.LESS else total
        value, k = _winding_split(magnitude)
        return cls(value, orientation, k)

    def normalized(self) -> AngleValue:
        """Drop the winding index, keeping the principal value."""
        return AngleValue(self.value, self.orientation, 0)

    def as_ccw(self) -> AngleValue:
        """Same opening measured counterclockwise, principal value only."""
        if self.orientation is Orientation.CCW or compare(self.value, ZERO) is Ordering.EQUAL:
            return AngleValue(self.value, Orientation.CCW, 0)
        return AngleValue(TWO_PI - self.value, Orientation.CCW, 0)

    def equals(self, other: AngleValue) -> Tri:
        o = compare(self.signed, other.signed)
        if o is Ordering.UNCERTAIN:
            return Tri.UNCERTAIN
        return Tri.of(o is Ordering.EQUAL)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AngleValue):
            return NotImplemented
        return bool(self.equals(other))

    __hash__ = None

    def __add__(self, other: AngleValue) -> AngleValue:
        return angle_add(self, other)

    def __rmul__(self, lam: Number) -> AngleValue:
        return angle_scale(lam, self)

    def __float__(self) -> float:
        return float(self.signed)

    def __str__(self) -> str:
        k = f"_{self.winding}" if self.winding else ""
        return f"{self.orientation.value}{k}({self.value})"


def angle(a: VectorClass, b: VectorClass, orientation: Orientation = Orientation.CCW,
          chart: PlaneChart | None = None) -> AngleValue:
    """Opening swept from the support of a to the support of b, as l/R."""
    ta, tb = _direction(a, chart), _direction(b, chart)
    diff = tb - ta if orientation is Orientation.CCW else ta - tb
    o = compare(diff, ZERO)
    if o is Ordering.UNCERTAIN:
        raise UncertainComparison("cannot order the two directions")
    if o is Ordering.LESS:
        diff = diff + TWO_PI
    return AngleValue(diff, orientation, 0)


def angle_equivalent(pair1: tuple[VectorClass, VectorClass], pair2: tuple[VectorClass, VectorClass],
                     chart: PlaneChart | None = None) -> Tri:
    return angle(*pair1, chart=chart).equals(angle(*pair2, chart=chart))


def angle_add(alpha: AngleValue, beta: AngleValue) -> AngleValue:
    """Sum of openings with explicit winding bookkeeping."""
    return AngleValue.from_signed(alpha.signed + beta.signed)


def angle_scale(lam: Number, alpha: AngleValue) -> AngleValue:
    """lam * l / R; negative factors swap the orientation."""
    return AngleValue.from_signed(as_scalar(lam) * alpha.signed)


# ---------------------------------------------------------------------------
# rotations


@dataclass(frozen=True, eq=False)
class Rotation:
    """Orientation-preserving isometry of the plane fixing ``center``."""

    center: PointId
    angle: AngleValue
    cos: Scalar
    sin: Scalar
    chart: PlaneChart | None = None

    def apply(self, x: Scalar, y: Scalar) -> tuple[Scalar, Scalar]:
        return self.cos * x - self.sin * y, self.sin * x + self.cos * y


def rotation_by(alpha: AngleValue, center: PointId | None = None, frame: Frame | None = None,
                chart: PlaneChart | None = None) -> Rotation:
    if center is None:
        if frame is None:
            raise ValueError("rotation needs a centre or a frame")
        center = frame.base
    c, s = cos_sin(alpha.signed)
    return Rotation(center, alpha, c, s, chart)


def rotation_aligning(b: VectorClass, c: VectorClass, center: PointId | None = None,
                      chart: PlaneChart | None = None) -> Rotation:
    """The rotation carrying the support of b onto a parallel, co-directed copy of c."""
    bx, by = _planar(b, chart)
    cx, cy = _planar(c, chart)
    nb = sqrt(bx * bx + by * by)
    nc = sqrt(cx * cx + cy * cy)
    if nb.is_zero_form() or nc.is_zero_form():
        raise ValueError("rotation_aligning needs nonzero vectors")
    den = nb * nc
    cos = (bx * cx + by * cy) / den
    sin = (bx * cy - by * cx) / den
    return Rotation(center or b.frame.base, angle(b, c, chart=chart), cos, sin, chart)


def rotate_vector(rot: Rotation, a: VectorClass) -> VectorClass:
    x, y = _planar(a, rot.chart)
    rx, ry = rot.apply(x, y)
    return _unplanar(a.frame, rx, ry, rot.chart)


def rotate_point(rot: Rotation, a: PointId) -> PointId:
    frame_of(rot.center, a)
    from .vectors import vector_between

    moved = rotate_vector(rot, vector_between(rot.center, a))
    return point_plus_vector(rot.center, moved)


def angle_sum_construction(a: VectorClass, b: VectorClass, c: VectorClass, d: VectorClass,
                           chart: PlaneChart | None = None) -> AngleValue:
    """Rotate (a, b) until R(b) runs along c, then measure from R(a) to d."""
    rot = rotation_aligning(b, c, chart=chart)
    return angle(rotate_vector(rot, a), d, chart=chart)


# ---------------------------------------------------------------------------
# arcs and partitions


@dataclass(frozen=True, eq=False)
class Arc:
    center: PointId
    radius: DistanceValue
    start_dir: VectorClass
    end_dir: VectorClass
    orientation: Orientation = Orientation.CCW
    full_turn: bool = False
    chart: PlaneChart | None = None

    def __post_init__(self):
        if compare(self.radius.magnitude, ZERO) is not Ordering.GREATER:
            raise ValueError("an arc needs a positive radius")

    def sweep(self) -> Scalar:
        """Opening of the arc in radians."""
        if self.full_turn:
            return TWO_PI
        return angle(self.start_dir, self.end_dir, self.orientation, self.chart).value

    def start_angle(self) -> Scalar:
        return _direction(self.start_dir, self.chart)

    def direction_at(self, offset: Number) -> Scalar:
        """Polar angle of the arc point reached after sweeping ``offset``."""
        return self.start_angle() + self.orientation.sign * as_scalar(offset)

    def point_at(self, offset: Number) -> PointId:
        """Mark the arc point after sweeping ``offset``; exact constructions only."""
        unit = exact_unit(self.direction_at(offset))
        if unit is None:
            raise ValueError("arc point is not constructible with compass and straightedge")
        r = self.radius.magnitude
        v = _unplanar(self.center.frame, r * unit[0], r * unit[1], self.chart)
        return point_plus_vector(self.center, v)

    def approx_point(self, offset: float) -> tuple[float, ...]:
        """Floating-point location, for drawing only."""
        phi = float(self.direction_at(Fraction(0))) + self.orientation.sign * offset
        r = float(self.radius.magnitude)
        x, y = r * math.cos(phi), r * math.sin(phi)
        c = [float(t) for t in self.center.frame.coords(self.center)]
        if self.chart is None:
            return (c[0] + x, c[1] + y)
        u = [float(t) for t in self.chart.u.components]
        v = [float(t) for t in self.chart.v.components]
        return tuple(ci + x * ui + y * vi for ci, ui, vi in zip(c, u, v))


@dataclass(frozen=True)
class Partition:
    """Ordered marks on an arc, first = arc start and last = arc end."""

    points: tuple[PointId, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("a partition needs at least two points")


def uniform_partition(arc: Arc, n: int) -> Partition:
    """N marks at equal angular steps; every mark must be constructible."""
    if n < 2:
        raise ValueError("a partition needs at least two points")
    step = arc.sweep() / (n - 1)
    return Partition(tuple(arc.point_at(step * i) for i in range(n)))


def _chord(arc: Arc, step: Scalar) -> Scalar:
    """d(C_i, C_{i+1}) for two marks ``step`` apart on the arc."""
    if step.is_zero_form():
        return ZERO
    try:
        c0 = arc.point_at(ZERO)
        c1 = arc.point_at(step)
    except ValueError:
        _, s = cos_sin(step / 2)
        return 2 * arc.radius.magnitude * s
    return distance(c0, c1).magnitude


def partition_length(arc: Arc, partition: int | Partition) -> DistanceValue:
    """Sum of compass apertures between consecutive partition marks.

    An integer N means the uniform partition with N marks (N - 1 chords).
    Equal steps give equal chords, so one chord is measured and multiplied;
    when the marks are not constructible the chord is 2R sin(step/2).
    """
    if isinstance(partition, Partition):
        total = ZERO
        for p, q in zip(partition.points, partition.points[1:]):
            total = total + distance(p, q).magnitude
        return DistanceValue(total)
    n = partition
    if n < 2:
        raise ValueError("a partition needs at least two points")
    step = arc.sweep() / (n - 1)
    return DistanceValue((n - 1) * _chord(arc, step))


def chord_error_bound(arc: Arc, chords: int) -> Fraction:
    """Upper bound of R*theta - S for a uniform partition with this many chords."""
    _, r_hi = arc.radius.magnitude.interval(64)
    _, t_hi = arc.sweep().interval(64)
    return r_hi * t_hi**3 / (24 * chords * chords)


def arc_length(arc: Arc, tol: Number, max_doublings: int = 40) -> DistanceValue:
    """Supremum of partition sums to within ``tol``.

    Partitions are refined by halving every step (nested refinements).  Stops
    when the last increment and the chord-sum error bound are both below tol.
    """
    tol = as_scalar(tol)
    if compare(tol, ZERO) is not Ordering.GREATER:
        raise ValueError("tolerance must be positive")
    theta = arc.sweep()
    if compare(theta, ZERO) is Ordering.EQUAL:
        return DistanceValue(ZERO)
    tol_f = tol.interval(64)[0]
    chords = 1
    prev = partition_length(arc, chords + 1).magnitude
    for _ in range(max_doublings):
        chords *= 2
        cur = partition_length(arc, chords + 1).magnitude
        inc_hi = (cur - prev).interval(64)[1]
        if inc_hi < tol_f and chord_error_bound(arc, chords) <= tol_f:
            return DistanceValue(cur)
        prev = cur
    raise RuntimeError("arc length did not converge")


def tape_measure_angle(length: Number, radius: Number, resolution: Number) -> AngleValue:
    """Angle from a tailor's tape reading: both lengths rounded to the tape marks."""
    lq = _quantize(as_scalar(length), as_scalar(resolution))
    rq = _quantize(as_scalar(radius), as_scalar(resolution))
    if rq == 0:
        raise ValueError("radius is below the tape resolution")
    return AngleValue(Scalar(lq / rq))


def _quantize(x: Scalar, res: Scalar) -> Fraction:
    res_q = res.as_fraction()
    if res_q <= 0:
        raise ValueError("tape resolution must be positive")
    bits = 64
    while True:
        lo, hi = x.interval(bits)
        a = math.floor(lo / res_q + Fraction(1, 2))
        b = math.floor(hi / res_q + Fraction(1, 2))
        if a == b:
            return a * res_q
        # x sits on a half mark: round half up
        if compare(x, (b - Fraction(1, 2)) * res_q) is Ordering.EQUAL:
            return b * res_q
        bits *= 2
        if bits > 4096:
            return b * res_q


def measured_angle_report(arc: Arc, tape_resolution: Number) -> AngleValue:
    """The classroom measurement: wrap a tape round the arc, read l and R, divide."""
    res = as_scalar(tape_resolution)
    if compare(res, ZERO) is not Ordering.GREATER:
        raise ValueError("tape resolution must be positive")
    exact_length = arc.radius.magnitude * arc.sweep()
    value = tape_measure_angle(exact_length, arc.radius.magnitude, res)
    return AngleValue(value.value, arc.orientation, 0)


def format_angle(alpha: AngleValue, decimals: int = 2) -> str:
    mid = alpha.signed.approx()
    q = Fraction(10) ** decimals
    n = math.floor(mid * q + Fraction(1, 2))
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 10**decimals}.{n % 10**decimals:0{decimals}d}"


# ---------------------------------------------------------------------------
# trigonometric ratios


def triangle_ratios(a: VectorClass, b: VectorClass, scale: Number = 1,
                    chart: PlaneChart | None = None) -> tuple[Scalar, Scalar]:
    """(sin, cos) of the angle from a to b read off a right triangle.

    B is marked on the ray of b at distance ``scale`` from O, A is the foot of
    the perpendicular from B onto the line of a.  The ratios d(A,B)/d(O,B) and
    d(O,A)/d(O,B) carry signs from the side of a that B falls on and whether A
    lies on the ray of a.
    """
    frame = a.frame
    o = frame.base
    s = as_scalar(scale)
    bx, by = _planar(b, chart)
    nb = sqrt(bx * bx + by * by)
    b_pt = point_plus_vector(o, _unplanar(frame, s * bx / nb, s * by / nb, chart))
    a_pt = point_plus_vector(o, a)
    f = foot(b_pt, Line(o, a_pt))
    hyp = distance(o, b_pt).magnitude
    opp = distance(f, b_pt).magnitude / hyp
    adj = distance(o, f).magnitude / hyp
    ax, ay = _planar(a, chart)
    side = compare(ax * by - ay * bx, ZERO)
    ahead = compare(ax * bx + ay * by, ZERO)
    if side is Ordering.LESS:
        opp = -opp
    if ahead is Ordering.LESS:
        adj = -adj
    return opp, adj


def sin_cos(alpha: AngleValue, scale: Number = 1, frame: Frame | None = None) -> tuple[Scalar, Scalar]:
    """(sin, cos) of an angle value.

    Constructible openings are realised as a right triangle against the first
    axis of ``frame`` (a scratch 2D frame by default); the rest fall back to
    trigonometric atoms with certified enclosures.
    """
    unit = exact_unit(alpha.signed)
    if unit is None:
        c, s = cos_sin(alpha.signed)
        return s, c
    if frame is None:
        frame = Frame(2, name="trig")
    if frame.dimension != 2:
        raise ValueError("sin_cos draws its triangle in a 2D frame")
    ref = VectorClass(frame, (ONE, ZERO))
    if unit[0].is_zero_form() and unit[1].is_zero_form():
        raise AssertionError("unit vector vanished")
    return triangle_ratios(ref, VectorClass(frame, unit), scale)
