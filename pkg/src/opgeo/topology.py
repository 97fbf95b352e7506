"""Open sets built from compass balls, interior witnesses, Hausdorff separation.

Global openness of every combinator tree holds by construction (leaves are
open, unions and finite intersections keep openness); what is certified here
is the witness ball at individual member points.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union as _U

from .compass import DistanceValue, distance
from .model import Frame, PointId, frame_of
from .report import Report
from .scalar import ZERO, Number, Ordering, Scalar, Tri, as_scalar, compare

__all__ = [
    "OpenBall",
    "Union",
    "Intersection",
    "Whole",
    "Empty",
    "WHOLE",
    "EMPTY",
    "OpenSet",
    "union",
    "intersection",
    "balls_disjoint",
    "InteriorWitness",
    "member",
    "margin",
    "interior_ball",
    "hausdorff_witness",
    "check_open",
    "sample_in_ball",
    "sample_coords",
    "contains_coords",
    "PHYSICIST",
    "MATHEMATICIAN",
]

PHYSICIST = Fraction(1, 2)
MATHEMATICIAN = Fraction(1)


@dataclass(frozen=True, eq=False)
class OpenBall:
    center: PointId
    radius: DistanceValue

    def __post_init__(self):
        if compare(self.radius.magnitude, ZERO) is not Ordering.GREATER:
            raise ValueError("open balls need a positive radius")
        r = self.radius.magnitude
        object.__setattr__(self, "_r2", r * r)
        object.__setattr__(self, "_c", self.center.frame.coords(self.center))


@dataclass(frozen=True, eq=False)
class Union:
    parts: tuple["OpenSet", ...]


@dataclass(frozen=True, eq=False)
class Intersection:
    parts: tuple["OpenSet", ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("an intersection needs at least one operand")


class Whole:
    """The whole space of the frame."""

    def __repr__(self) -> str:
        return "WHOLE"


class Empty:
    def __repr__(self) -> str:
        return "EMPTY"


WHOLE = Whole()
EMPTY = Empty()

OpenSet = _U[OpenBall, Union, Intersection, Whole, Empty]


def union(*parts: OpenSet) -> Union:
    return Union(tuple(parts))


def intersection(*parts: OpenSet) -> Intersection:
    return Intersection(tuple(parts))


def _inside(ball: OpenBall, xs: Sequence[Scalar]) -> Tri:
    # both sides are nonnegative, so compare the squares and skip the root
    gap = ZERO
    for a, b in zip(ball._c, xs):
        d = a - b
        gap = gap + d * d
    o = compare(gap, ball._r2)
    if o is Ordering.UNCERTAIN:
        return Tri.UNCERTAIN
    return Tri.of(o is Ordering.LESS)


def _strictly_inside(ball: OpenBall, x: PointId) -> Tri:
    frame_of(ball.center, x)
    return _inside(ball, x.frame.coords(x))


def contains_coords(s: OpenSet, xs: Sequence[Scalar]) -> Tri:
    """Membership of an unmarked location given by coordinates in the set's frame."""
    if isinstance(s, Whole):
        return Tri.TRUE
    if isinstance(s, Empty):
        return Tri.FALSE
    if isinstance(s, OpenBall):
        return _inside(s, xs)
    if isinstance(s, Union):
        verdict = Tri.FALSE
        for p in s.parts:
            verdict = verdict | contains_coords(p, xs)
            if verdict is Tri.TRUE:
                break
        return verdict
    if isinstance(s, Intersection):
        verdict = Tri.TRUE
        for p in s.parts:
            verdict = verdict & contains_coords(p, xs)
            if verdict is Tri.FALSE:
                break
        return verdict
    raise TypeError(f"not an open set: {s!r}")


def _frame_of_set(s: OpenSet) -> Frame | None:
    if isinstance(s, OpenBall):
        return s.center.frame
    if isinstance(s, (Union, Intersection)):
        for p in s.parts:
            f = _frame_of_set(p)
            if f is not None:
                return f
    return None


def member(s: OpenSet, x: PointId) -> Tri:
    """Strict membership: d(X, centre) < radius at every leaf ball."""
    f = _frame_of_set(s)
    if f is not None:
        f.check(x)
    return contains_coords(s, x.frame.coords(x))


def margin(s: OpenSet, a: PointId) -> Scalar | None:
    """Largest radius r with B(a, r) inside s, None for the whole space.

    Leaves give radius - d(a, centre); unions the best containing branch;
    intersections the worst branch.  Raises ValueError when a is not a member.
    """
    if isinstance(s, Whole):
        return None
    if isinstance(s, Empty):
        raise ValueError("the empty set has no members")
    if isinstance(s, OpenBall):
        if _strictly_inside(s, a) is not Tri.TRUE:
            raise ValueError("point is not inside the ball")
        return s.radius.magnitude - distance(s.center, a).magnitude
    if isinstance(s, Union):
        best: Scalar | None = ZERO
        found = False
        for p in s.parts:
            if member(p, a) is not Tri.TRUE:
                continue
            m = margin(p, a)
            found = True
            if m is None:
                return None
            if best is None or compare(m, best) is Ordering.GREATER:
                best = m
        if not found:
            raise ValueError("point is not in any branch of the union")
        return best
    if isinstance(s, Intersection):
        worst: Scalar | None = None
        for p in s.parts:
            m = margin(p, a)
            if m is not None and (worst is None or compare(m, worst) is Ordering.LESS):
                worst = m
        return worst
    raise TypeError(f"not an open set: {s!r}")


@dataclass(frozen=True, eq=False)
class InteriorWitness:
    point: PointId
    radius: DistanceValue
    cautious_factor: Fraction

    @property
    def ball(self) -> OpenBall:
        return OpenBall(self.point, self.radius)


def interior_ball(s: OpenSet, a: PointId, factor: Number = PHYSICIST) -> InteriorWitness:
    """An open ball about a contained in s.

    The physicist halves the available room (factor 1/2); factor 1 uses all
    of it, which is still inside s because the balls are open.
    """
    factor = Fraction(factor)
    if not 0 < factor <= 1:
        raise ValueError("cautious factor must lie in (0, 1]")
    if member(s, a) is not Tri.TRUE:
        raise ValueError("interior_ball needs a member point")
    m = margin(s, a)
    if m is None:
        m = as_scalar(1)  # any radius fits inside the whole space
    return InteriorWitness(a, DistanceValue(factor * m), factor)


def hausdorff_witness(a: PointId, b: PointId, n: int | None = None) -> tuple[OpenBall, OpenBall]:
    """Disjoint balls around distinct points, radius d(A,B)/2 or d(A,B)/n for n > 2."""
    frame_of(a, b)
    if a == b:
        raise ValueError("a point cannot be separated from itself")
    if n is not None and n <= 2:
        raise ValueError("the cautious divisor must exceed 2")
    d = distance(a, b).magnitude
    r = d / (n or 2)
    return OpenBall(a, DistanceValue(r)), OpenBall(b, DistanceValue(r))


def balls_disjoint(u: OpenBall, v: OpenBall) -> Tri:
    """Analytic disjointness of two open balls: r1 + r2 <= d(c1, c2)."""
    o = compare(u.radius.magnitude + v.radius.magnitude, distance(u.center, v.center).magnitude)
    if o is Ordering.UNCERTAIN:
        return Tri.UNCERTAIN
    return Tri.of(o is not Ordering.GREATER)


_SAMPLE_DENOM = 1 << 20


def _unit_ball_ints(rng: random.Random, dim: int) -> list[int]:
    """Integer vector u with |u| < _SAMPLE_DENOM, uniform in the ball."""
    n = _SAMPLE_DENOM
    while True:
        u = [rng.randint(-n + 1, n - 1) for _ in range(dim)]
        if sum(x * x for x in u) < n * n:
            return u


def sample_coords(ball: OpenBall, count: int, rng: random.Random) -> list[tuple[Scalar, ...]]:
    """Locations strictly inside the ball, drawn from a rational inner ball."""
    frame = ball.center.frame
    inner, _ = ball.radius.magnitude.interval(64)
    if inner <= 0:
        raise ValueError("ball too small to sample")
    c = frame.coords(ball.center)
    step = as_scalar(inner / _SAMPLE_DENOM)
    out = []
    for _ in range(count):
        u = _unit_ball_ints(rng, frame.dimension)
        out.append(tuple(ci + step * ui for ci, ui in zip(c, u)))
    return out


def sample_in_ball(ball: OpenBall, count: int, rng: random.Random) -> list[PointId]:
    """Like :func:`sample_coords` but marks the points in the frame."""
    frame = ball.center.frame
    return [frame.mark(xs) for xs in sample_coords(ball, count, rng)]


def check_open(s: OpenSet, probes: Sequence[PointId], factor: Number = PHYSICIST,
               samples: int = 0, seed: int = 0) -> Report:
    """Produce an interior witness at every probe; optionally confirm each by sampling."""
    rep = Report("open", seed if samples else None, len(probes))
    wit = rep.axiom("interior_witness")
    rep.witnesses = []  # type: ignore[attr-defined]
    sampled = rep.axiom("witness_sampling") if samples else None
    rng = random.Random(seed)
    for i, p in enumerate(probes):
        if member(s, p) is not Tri.TRUE:
            raise ValueError(f"probe {i} lies outside the set")
        w = interior_ball(s, p, factor)
        rep.witnesses.append(w)  # type: ignore[attr-defined]
        wit.record(True)
        if sampled is not None:
            bad = None
            for xs in sample_coords(w.ball, samples, rng):
                v = contains_coords(s, xs)
                if v is not Tri.TRUE:
                    bad = v
                    break
            if bad is None:
                sampled.record(True)
            else:
                sampled.record(None if bad is Tri.UNCERTAIN else False, {"probe": i})
    return rep
