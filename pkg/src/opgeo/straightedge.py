"""Stretched-thread constructions: betweenness, segments, lines, parallels, planes.

Every set here is a lazy membership predicate.  Lines are the union of the
three betweenness cases through their anchors, planes are tested by exact
coplanarity with the union-of-lines construction available for cross checks.
"""
from __future__ import annotations

from dataclasses import dataclass

from .compass import DistanceValue, Sphere, distance
from .model import Frame, PointId, frame_of
from .scalar import ZERO, Ordering, Scalar, Tri, compare

__all__ = [
    "is_between",
    "Segment",
    "Line",
    "Cylinder",
    "Plane",
    "line",
    "segment",
    "dist_point_line",
    "foot",
    "cylinder",
    "parallel_through",
    "plane",
    "crossing",
    "sphere_line_crossings",
    "collinear",
    "coplanar",
]


def _vec(frame: Frame, a: PointId, b: PointId) -> list[Scalar]:
    pa, pb = frame.coords(a), frame.coords(b)
    return [y - x for x, y in zip(pa, pb)]


def _dot(u, v) -> Scalar:
    total = ZERO
    for x, y in zip(u, v):
        total = total + x * y
    return total


def _cross3(u, v) -> list[Scalar]:
    return [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]


def is_between(a: PointId, x: PointId, b: PointId) -> Tri:
    """X lies between A and B when d(A,X) + d(X,B) == d(A,B)."""
    frame_of(a, x, b)
    o = compare(distance(a, x).magnitude + distance(x, b).magnitude, distance(a, b).magnitude)
    if o is Ordering.UNCERTAIN:
        return Tri.UNCERTAIN
    return Tri.of(o is Ordering.EQUAL)


def collinear(a: PointId, b: PointId, c: PointId) -> bool:
    """Coordinate oracle: the cross product of AB and AC vanishes."""
    frame = frame_of(a, b, c)
    u, v = _vec(frame, a, b), _vec(frame, a, c)
    if frame.dimension == 2:
        return compare(u[0] * v[1] - u[1] * v[0], ZERO) is Ordering.EQUAL
    return all(compare(w, ZERO) is Ordering.EQUAL for w in _cross3(u, v))


def coplanar(p: PointId, a: PointId, b: PointId, x: PointId) -> bool:
    frame = frame_of(p, a, b, x)
    if frame.dimension == 2:
        return True
    u, v, w = _vec(frame, p, a), _vec(frame, p, b), _vec(frame, p, x)
    return compare(_dot(_cross3(u, v), w), ZERO) is Ordering.EQUAL


@dataclass(frozen=True)
class Segment:
    a: PointId
    b: PointId

    def contains(self, x: PointId) -> Tri:
        return is_between(self.a, x, self.b)


def segment(a: PointId, b: PointId) -> Segment:
    frame_of(a, b)
    return Segment(a, b)


@dataclass(frozen=True)
class Line:
    a: PointId
    b: PointId

    def __post_init__(self):
        frame_of(self.a, self.b)
        if self.a == self.b:
            raise ValueError("a straight line needs two distinct anchors")

    @property
    def frame(self) -> Frame:
        return self.a.frame

    def direction(self) -> list[Scalar]:
        return _vec(self.frame, self.a, self.b)

    def contains(self, x: PointId) -> Tri:
        """r(XAB) or r(AXB) or r(ABX)."""
        verdict = is_between(x, self.a, self.b)
        if verdict is Tri.TRUE:
            return verdict
        verdict = verdict | is_between(self.a, x, self.b)
        if verdict is Tri.TRUE:
            return verdict
        return verdict | is_between(self.a, self.b, x)

    def __contains__(self, x: PointId) -> bool:
        return bool(self.contains(x))

    def point_at(self, t) -> PointId:
        """A + t*(B - A)."""
        pa = self.frame.coords(self.a)
        return self.frame.mark([x + t * d for x, d in zip(pa, self.direction())])

    def same_as(self, other: Line) -> Tri:
        return self.contains(other.a) & self.contains(other.b)


def line(a: PointId, b: PointId) -> Line:
    return Line(a, b)


def foot(p: PointId, r: Line) -> PointId:
    """Perpendicular foot of P on r: the point where d(P, .) is smallest."""
    frame = frame_of(p, r.a)
    d = r.direction()
    t = _dot(_vec(frame, r.a, p), d) / _dot(d, d)
    return r.point_at(t)


def dist_point_line(p: PointId, r: Line) -> DistanceValue:
    return distance(p, foot(p, r))


@dataclass(frozen=True)
class Cylinder:
    axis: Line
    radius: DistanceValue

    def contains(self, x: PointId) -> Tri:
        o = compare(dist_point_line(x, self.axis).magnitude, self.radius.magnitude)
        if o is Ordering.UNCERTAIN:
            return Tri.UNCERTAIN
        return Tri.of(o is Ordering.EQUAL)


def cylinder(axis: Line, radius: DistanceValue) -> Cylinder:
    if compare(radius.magnitude, ZERO) is not Ordering.GREATER:
        raise ValueError("a cylinder needs a positive radius")
    return Cylinder(axis, radius)


def parallel_through(p: PointId, r: Line) -> Line:
    """The unique line through P keeping constant distance d(P, r) from r.

    When P already lies on r the cylinder shrinks to its axis and r itself is
    returned.
    """
    frame = frame_of(p, r.a)
    if r.contains(p) is Tri.TRUE:
        return r
    q = frame.mark([x + d for x, d in zip(frame.coords(p), r.direction())])
    return Line(p, q)


def crossing(r: Line, s: Line) -> PointId | None:
    """Meeting point of two coplanar lines, None when they are parallel or skew."""
    frame = frame_of(r.a, s.a)
    u, v = r.direction(), s.direction()
    w = _vec(frame, r.a, s.a)
    # solve r.a + t*u = s.a + k*v via the normal equations
    uu, uv, vv = _dot(u, u), _dot(u, v), _dot(v, v)
    det = uu * vv - uv * uv
    if compare(det, ZERO) is Ordering.EQUAL:
        return None
    wu, wv = _dot(w, u), _dot(w, v)
    t = (wu * vv - wv * uv) / det
    x = r.point_at(t)
    if s.contains(x) is not Tri.TRUE:
        return None
    return x


def sphere_line_crossings(sph: Sphere, r: Line) -> list[PointId]:
    """Points of r at distance radius from the sphere centre (0, 1 or 2 of them)."""
    frame = frame_of(sph.center, r.a)
    d = r.direction()
    w = _vec(frame, sph.center, r.a)
    a = _dot(d, d)
    b = 2 * _dot(d, w)
    c = _dot(w, w) - sph.radius.magnitude * sph.radius.magnitude
    disc = b * b - 4 * a * c
    o = compare(disc, ZERO)
    if o is Ordering.LESS:
        return []
    if o is Ordering.EQUAL:
        return [r.point_at(-b / (2 * a))]
    root = disc.sqrt()
    return [r.point_at((-b - root) / (2 * a)), r.point_at((-b + root) / (2 * a))]


@dataclass(frozen=True)
class Plane:
    r: Line
    s: Line
    p: PointId

    def contains(self, x: PointId) -> Tri:
        if self.s.contains(x) is Tri.TRUE:
            return Tri.TRUE
        verdict = Tri.of(coplanar(self.p, self.r.a, self.r.b, x))
        if verdict is Tri.TRUE and self.p.frame.debug:
            self._recheck(x)
        return verdict

    def __contains__(self, x: PointId) -> bool:
        return bool(self.contains(x))

    def crossing_on_r(self, x: PointId) -> PointId | None:
        """The point X' of r with x on the line through P and X'.

        None for points on the parallel to r through P, which the union of
        lines r(X'P) never reaches.
        """
        if x == self.p:
            return None
        return crossing(self.r, Line(self.p, x))

    def _recheck(self, x: PointId) -> None:
        if x == self.p:
            return
        hit = self.crossing_on_r(x)
        if hit is None:
            through_p = parallel_through(self.p, self.r)
            assert through_p.contains(x) is Tri.TRUE, "coplanar point reached by no line"
            return
        assert Line(self.p, hit).contains(x) is Tri.TRUE


def plane(r: Line, s: Line, p: PointId) -> Plane:
    frame_of(r.a, s.a, p)
    if s.contains(p) is not Tri.TRUE:
        raise ValueError("P must lie on s")
    if r.contains(p) is not Tri.FALSE:
        raise ValueError("r must not pass through P")
    if not (coplanar(p, r.a, r.b, s.a) and coplanar(p, r.a, r.b, s.b)):
        raise ValueError("s does not lie in the plane spanned by r and P")
    return Plane(r, s, p)
