"""Displacement vectors as classes of ordered point pairs under parallel transport.

A class is stored by its canonical representative, the pair whose origin is
the frame's base point, so class equality is a comparison of end points.  The
set-square and compass procedures (transport, the sum through S1, compass
steps, the intercept construction for m/n) are available as explicit
constructions that act on marked points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .compass import DistanceValue, Sphere
from .model import Frame, FrameError, PointId, frame_of
from .scalar import ZERO, Number, Ordering, Scalar, Tri, as_scalar, compare
from .straightedge import Line, crossing, parallel_through, sphere_line_crossings

__all__ = [
    "OrderedPair",
    "VectorClass",
    "transport",
    "equivalent",
    "vector_between",
    "vec_add",
    "vec_scale",
    "point_plus_vector",
    "norm",
    "sum_construction",
    "natural_multiple_construction",
    "rational_construction",
    "rational_approximation_trace",
]


@dataclass(frozen=True)
class OrderedPair:
    origin: PointId
    end: PointId

    def __post_init__(self):
        frame_of(self.origin, self.end)

    @property
    def frame(self) -> Frame:
        return self.origin.frame

    def offsets(self) -> tuple[Scalar, ...]:
        f = self.frame
        return tuple(b - a for a, b in zip(f.coords(self.origin), f.coords(self.end)))


def _coords_equal(xs: Sequence[Scalar], ys: Sequence[Scalar]) -> Tri:
    verdict = Tri.TRUE
    for x, y in zip(xs, ys):
        o = compare(x, y)
        if o is Ordering.UNCERTAIN:
            verdict = Tri.UNCERTAIN
        elif o is not Ordering.EQUAL:
            return Tri.FALSE
    return verdict


@dataclass(frozen=True, eq=False)
class VectorClass:
    """An element of the space of displacement vectors of one frame."""

    frame: Frame
    components: tuple[Scalar, ...]

    @classmethod
    def of(cls, frame: Frame, components: Sequence[Number]) -> VectorClass:
        if len(components) != frame.dimension:
            raise ValueError(f"expected {frame.dimension} components")
        return cls(frame, tuple(as_scalar(c) for c in components))

    @classmethod
    def zero(cls, frame: Frame) -> VectorClass:
        return cls(frame, (ZERO,) * frame.dimension)

    def representative(self) -> OrderedPair:
        base = self.frame.base
        return OrderedPair(base, point_plus_vector(base, self))

    def equals(self, other: VectorClass) -> Tri:
        _same_frame(self, other)
        return _coords_equal(self.components, other.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorClass):
            return NotImplemented
        return bool(self.equals(other))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(compare(c, ZERO) is Ordering.EQUAL for c in self.components)

    def __add__(self, other: VectorClass) -> VectorClass:
        return vec_add(self, other)

    def __sub__(self, other: VectorClass) -> VectorClass:
        return vec_add(self, vec_scale(-1, other))

    def __neg__(self) -> VectorClass:
        return vec_scale(-1, self)

    def __rmul__(self, lam: Number) -> VectorClass:
        return vec_scale(lam, self)

    def dot(self, other: VectorClass) -> Scalar:
        # coordinate oracle only; the operational inner product lives in verify
        total = ZERO
        for x, y in zip(self.components, other.components):
            total = total + x * y
        return total

    def __repr__(self) -> str:
        return f"VectorClass({', '.join(str(c) for c in self.components)})"


def _same_frame(a: VectorClass, b: VectorClass) -> None:
    if a.frame is not b.frame:
        raise FrameError("vectors of different frames cannot be combined")


def transport(p: OrderedPair, new_origin: PointId) -> OrderedPair:
    """Slide the set square carrying (origin, end) until origin sits on new_origin."""
    frame = frame_of(p.origin, new_origin)
    end = frame.mark([x + d for x, d in zip(frame.coords(new_origin), p.offsets())])
    return OrderedPair(new_origin, end)


def equivalent(p: OrderedPair, q: OrderedPair) -> Tri:
    frame = frame_of(p.origin, q.origin)
    moved = transport(p, q.origin)
    return _coords_equal(frame.coords(moved.end), frame.coords(q.end))


def vector_between(a: PointId, b: PointId) -> VectorClass:
    frame = frame_of(a, b)
    return VectorClass(frame, OrderedPair(a, b).offsets())


def class_of(p: OrderedPair) -> VectorClass:
    return vector_between(p.origin, p.end)


def point_plus_vector(a: PointId, v: VectorClass) -> PointId:
    """The unique B with vector_between(A, B) == v."""
    frame = frame_of(a)
    if v.frame is not frame:
        raise FrameError("point and vector belong to different frames")
    return frame.mark([x + c for x, c in zip(frame.coords(a), v.components)])


def vec_add(a: VectorClass, b: VectorClass) -> VectorClass:
    _same_frame(a, b)
    return VectorClass(a.frame, tuple(x + y for x, y in zip(a.components, b.components)))


def vec_scale(lam: Number, a: VectorClass) -> VectorClass:
    lam = as_scalar(lam)
    return VectorClass(a.frame, tuple(lam * c for c in a.components))


def norm(a: VectorClass) -> DistanceValue:
    total = ZERO
    for c in a.components:
        total = total + c * c
    return DistanceValue(total.sqrt())


# ---------------------------------------------------------------------------
# constructions


def sum_construction(a: VectorClass, b: VectorClass, s1: PointId) -> tuple[PointId, PointId]:
    """Transport both vectors to S1, then each along the other's support line.

    The two transported ends must coincide; that common point is S2 and the
    sum is the class of (S1, S2).
    """
    _same_frame(a, b)
    ra = transport(a.representative(), s1)
    rb = transport(b.representative(), s1)
    via_a = transport(b.representative(), ra.end).end
    via_b = transport(a.representative(), rb.end).end
    if via_a != via_b:
        raise AssertionError("transported ends failed to meet in one point")
    return s1, via_a


def natural_multiple_construction(n: int, a: VectorClass, origin: PointId | None = None) -> list[PointId]:
    """Compass steps A0, A1, ..., An along the support line of a, aperture fixed at |a|."""
    if n < 0:
        raise ValueError("natural multiples need n >= 0")
    frame = a.frame
    a0 = frame.base if origin is None else origin
    if a.is_zero():
        return [a0] * (n + 1)
    a1 = point_plus_vector(a0, a)
    pts = [a0, a1][: n + 1]
    support = Line(a0, a1)
    aperture = norm(a)
    while len(pts) < n + 1:
        hits = sphere_line_crossings(Sphere(pts[-1], aperture), support)
        nxt = [h for h in hits if h != pts[-2]]
        if len(nxt) != 1:
            raise AssertionError("compass step did not give a single new point")
        pts.append(nxt[0])
    return pts


def _auxiliary_direction(a: VectorClass) -> list[Scalar]:
    """A direction different from a's support line (any will do)."""
    dim = a.frame.dimension
    for k in range(dim):
        e = [ZERO] * dim
        e[k] = Scalar(1)
        cand = VectorClass(a.frame, tuple(e))
        # reject directions parallel to a
        cross_zero = True
        for i in range(dim):
            for j in range(i + 1, dim):
                m = a.components[i] * cand.components[j] - a.components[j] * cand.components[i]
                if compare(m, ZERO) is not Ordering.EQUAL:
                    cross_zero = False
        if not cross_zero:
            return e
    raise AssertionError("no auxiliary direction found")


def _fraction_of_unit(
    m: int, n: int, a0: PointId, a1: PointId, aux: Sequence[Scalar], trace: list | None
) -> PointId:
    """B'_m for 0 <= m <= n on segment A0A1 via the intercept construction."""
    if m == 0:
        return a0
    if m == n:
        return a1
    frame = frame_of(a0, a1)
    aux_end = frame.mark([x + d for x, d in zip(frame.coords(a0), aux)])
    ray = VectorClass(frame, tuple(aux))
    bs = natural_multiple_construction(n, ray, a0)  # B0 = A0, B1, ..., Bn
    closing = Line(bs[n], a1)
    support = Line(a0, a1)
    b_m = bs[m]
    par = parallel_through(b_m, closing)
    hit = crossing(par, support)
    if hit is None:
        raise AssertionError("parallel failed to meet the support line")
    if trace is not None:
        trace.append({"aux_end": aux_end, "marks": bs, "closing": closing, "parallel": par, "hit": hit})
    return hit


def rational_construction(
    q: Fraction | int | str,
    a: VectorClass,
    origin: PointId | None = None,
    aux: Sequence[Number] | None = None,
    trace: list | None = None,
) -> PointId:
    """End point of (m/n)*a drawn from ``origin`` with compass, thread and set squares.

    For m <= n the auxiliary ray from A0 receives n equal compass steps, B_n is
    joined to A1 and the parallel through B_m cuts the support line at B'_m.
    For m > n the ratio is split as 1 + m'/n and the pieces are chained.
    Negative ratios reverse the vector first.
    """
    q = Fraction(q)
    frame = a.frame
    a0 = frame.base if origin is None else origin
    if q < 0:
        a = vec_scale(-1, a)
        q = -q
    if a.is_zero() or q == 0:
        return a0
    direction = [as_scalar(x) for x in aux] if aux is not None else _auxiliary_direction(a)
    m, n = q.numerator, q.denominator
    start = a0
    while m > n:
        # m/n = 1 + m'/n
        start = point_plus_vector(start, a)
        m -= n
    end = point_plus_vector(start, a)
    return _fraction_of_unit(m, n, start, end, direction, trace)


def _floor(x: Scalar) -> int:
    bits = 64
    while True:
        lo, hi = x.interval(bits)
        flo, fhi = math.floor(lo), math.floor(hi)
        if flo == fhi:
            return flo
        if compare(x, fhi) is not Ordering.LESS:
            return fhi
        if bits > 4096:
            return flo
        bits *= 2


def rational_approximation_trace(
    lam: Number, a: VectorClass, tol: Number, max_terms: int = 64
) -> Iterator[tuple[Fraction, VectorClass]]:
    """Continued-fraction convergents p/q of lam with the drawn vector (p/q)*a.

    Stops at the first convergent whose vector lies within tol of lam*a.
    """
    lam, tol = as_scalar(lam), as_scalar(tol)
    if compare(tol, ZERO) is not Ordering.GREATER:
        raise ValueError("tolerance must be positive")
    target = vec_scale(lam, a)
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    x = lam
    for _ in range(max_terms):
        t = _floor(x)
        h0, h1 = h1, t * h1 + h0
        k0, k1 = k1, t * k1 + k0
        p = Fraction(h1, k1)
        end = rational_construction(p, a)
        v = vector_between(a.frame.base, end)
        yield p, v
        gap = norm(vec_add(v, vec_scale(-1, target))).magnitude
        if compare(gap, tol) is not Ordering.GREATER:
            return
        frac = x - t
        if compare(frac, ZERO) is Ordering.EQUAL:
            return
        x = 1 / frac
