"""What a compass can do: apertures, spheres, the order and sum of distances."""
from __future__ import annotations

from dataclasses import dataclass

from .model import Frame, PointId, frame_of
from .scalar import (
    ZERO,
    Number,
    Ordering,
    Scalar,
    Tri,
    UncertainComparison,
    as_scalar,
    compare as scalar_compare,
)

__all__ = [
    "DistanceValue",
    "Sphere",
    "distance",
    "compare",
    "add",
    "scale",
    "sphere",
    "sum_construction",
    "order_by_drawing",
]


@dataclass(frozen=True, eq=False)
class DistanceValue:
    """An element of the value space of lengths, in units of the frame."""

    magnitude: Scalar

    def __post_init__(self):
        if scalar_compare(self.magnitude, ZERO) is Ordering.LESS:
            raise ValueError(f"distance values are nonnegative, got {self.magnitude}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DistanceValue):
            return NotImplemented
        return self.magnitude == other.magnitude

    __hash__ = None

    def __lt__(self, other: DistanceValue) -> bool:
        return compare(self, other) is Ordering.LESS

    def __le__(self, other: DistanceValue) -> bool:
        return compare(self, other) in (Ordering.LESS, Ordering.EQUAL)

    def __add__(self, other: DistanceValue) -> DistanceValue:
        return add(self, other)

    def __str__(self) -> str:
        return str(self.magnitude)

    @classmethod
    def of(cls, x: Number) -> DistanceValue:
        return cls(as_scalar(x))


def _squared_gap(a, b) -> Scalar:
    total = ZERO
    for x, y in zip(a, b):
        d = x - y
        total = total + d * d
    return total


def distance(a: PointId, b: PointId) -> DistanceValue:
    """Compass aperture between two marked points of the same frame."""
    frame = frame_of(a, b)
    if a == b:
        return DistanceValue(ZERO)
    return DistanceValue(_squared_gap(frame.coords(a), frame.coords(b)).sqrt())


def compare(d1: DistanceValue, d2: DistanceValue) -> Ordering:
    return scalar_compare(d1.magnitude, d2.magnitude)


def add(d1: DistanceValue, d2: DistanceValue) -> DistanceValue:
    return DistanceValue(d1.magnitude + d2.magnitude)


def scale(q: Number, d: DistanceValue) -> DistanceValue:
    q = as_scalar(q)
    if scalar_compare(q, ZERO) is Ordering.LESS:
        raise ValueError("lengths cannot be scaled by a negative number")
    return DistanceValue(q * d.magnitude)


@dataclass(frozen=True, eq=False)
class Sphere:
    center: PointId
    radius: DistanceValue

    def contains(self, x: PointId) -> Tri:
        o = compare(distance(self.center, x), self.radius)
        if o is Ordering.UNCERTAIN:
            return Tri.UNCERTAIN
        return Tri.of(o is Ordering.EQUAL)

    def __contains__(self, x: PointId) -> bool:
        return bool(self.contains(x))


def sphere(center: PointId, radius: DistanceValue) -> Sphere:
    return Sphere(center, radius)


def point_along(frame: Frame, origin: PointId, toward: PointId, length: Scalar) -> PointId:
    """Mark the point of ray origin->toward at the given distance from origin."""
    o = frame.coords(origin)
    t = frame.coords(toward)
    span = distance(origin, toward).magnitude
    if span.is_zero_form() or scalar_compare(span, ZERO) is Ordering.EQUAL:
        raise ValueError("ray needs two distinct points")
    k = length / span
    return frame.mark([a + k * (b - a) for a, b in zip(o, t)])


def sum_construction(
    origin: PointId, toward: PointId, d1: DistanceValue, d2: DistanceValue
) -> tuple[PointId, PointId]:
    """Draw the sum of two apertures from ``origin``.

    O' is taken on the sphere of radius d1 about ``origin`` along the ray to
    ``toward``; M is the point of the sphere of radius d2 about O' farthest
    from ``origin``.  Returns (O', M); d(origin, M) == d1 + d2.
    """
    frame = frame_of(origin, toward)
    o_prime = point_along(frame, origin, toward, d1.magnitude)
    if d2.magnitude.is_zero_form():
        return o_prime, o_prime
    if d1.magnitude.is_zero_form():
        m = point_along(frame, origin, toward, d2.magnitude)
        return o_prime, m
    # farthest point of a sphere from an external centre lies on the ray through its own centre
    m = point_along(frame, origin, o_prime, d1.magnitude + d2.magnitude)
    if frame.debug:
        _check_maximal(frame, origin, o_prime, m, d2)
    return o_prime, m


def _check_maximal(frame: Frame, origin: PointId, o_prime: PointId, m: PointId, d2) -> None:
    # probe axis points of the d2-sphere about O': none may be farther than M
    c = frame.coords(o_prime)
    best = distance(origin, m)
    r = d2.magnitude
    for k in range(frame.dimension):
        for sgn in (1, -1):
            p = list(c)
            p[k] = p[k] + sgn * r
            probe = frame.mark(p)
            if compare(distance(origin, probe), best) is Ordering.GREATER:
                raise AssertionError("maximal-point construction disagrees with magnitude sum")


def require(o: Ordering) -> Ordering:
    if o is Ordering.UNCERTAIN:
        raise UncertainComparison("comparison of distances is undecided")
    return o


def order_by_drawing(origin: PointId, h: PointId, radius: DistanceValue) -> Ordering:
    """Compare d(origin, h) with ``radius`` the way it is drawn.

    A line is stretched from ``origin`` to ``h``; if it crosses the sphere of
    the given radius about ``origin`` then d(origin, h) is the larger one.
    """
    frame = frame_of(origin, h)
    if origin == h:
        return Ordering.EQUAL if radius.magnitude.is_zero_form() else scalar_compare(ZERO, radius.magnitude)
    crossing = point_along(frame, origin, h, radius.magnitude)
    if crossing == h:
        return Ordering.EQUAL
    # crossing lies on the drawn segment iff d(O,X) + d(X,H) == d(O,H)
    on_segment = scalar_compare(
        distance(origin, crossing).magnitude + distance(crossing, h).magnitude,
        distance(origin, h).magnitude,
    )
    if on_segment is Ordering.UNCERTAIN:
        return on_segment
    return Ordering.GREATER if on_segment is Ordering.EQUAL else Ordering.LESS
