"""The hidden rigid-body model: frames, marked points and steady unions.

Coordinates live here and nowhere else.  Instrument modules read them through
:meth:`Frame.coords`; user code only marks points and compares scalars.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .scalar import Number, Ordering, Scalar, as_scalar, compare

__all__ = [
    "Frame",
    "PointId",
    "BodyId",
    "FrameError",
    "mark_point",
    "steady_union",
    "same_frame",
]

_GRID = 1e-6
_frame_ids = itertools.count()


class FrameError(ValueError):
    """Mixing points or bodies that belong to different frames."""


@dataclass(frozen=True)
class PointId:
    frame: "Frame" = field(repr=False)
    index: int

    def __repr__(self) -> str:
        return f"PointId({self.frame.name}:{self.index})"


@dataclass(frozen=True)
class BodyId:
    frame: "Frame" = field(repr=False)
    name: str


class Frame:
    """A rigid frame of reference of dimension 2 or 3.

    Marked coordinates never change.  Marking the same location twice yields
    the same :class:`PointId`.
    """

    def __init__(self, dimension: int, name: str | None = None, debug: bool = False):
        if dimension not in (2, 3):
            raise ValueError(f"frame dimension must be 2 or 3, got {dimension}")
        self.dimension = dimension
        self.uid = next(_frame_ids)
        self.name = name or f"F{self.uid}"
        self.debug = debug
        self._coords: list[tuple[Scalar, ...]] = []
        self._buckets: dict[tuple[int, ...], list[int]] = {}
        self._parent: dict[str, str] = {}
        self._rank: dict[str, int] = {}
        self.base = self.mark((0,) * dimension)

    def __repr__(self) -> str:
        return f"Frame({self.name!r}, dim={self.dimension}, points={len(self._coords)})"

    # -- points ---------------------------------------------------------------
    def mark(self, coords: Sequence[Number]) -> PointId:
        if len(coords) != self.dimension:
            raise ValueError(
                f"expected {self.dimension} coordinates, got {len(coords)}"
            )
        xs = tuple(as_scalar(c) for c in coords)
        cell = tuple(math.floor(float(x) / _GRID) for x in xs)
        for near in itertools.product((-1, 0, 1), repeat=self.dimension):
            key = tuple(c + o for c, o in zip(cell, near))
            for idx in self._buckets.get(key, ()):
                if all(compare(a, b) is Ordering.EQUAL for a, b in zip(xs, self._coords[idx])):
                    return PointId(self, idx)
        idx = len(self._coords)
        self._coords.append(xs)
        self._buckets.setdefault(cell, []).append(idx)
        return PointId(self, idx)

    def coords(self, p: PointId) -> tuple[Scalar, ...]:
        self.check(p)
        return self._coords[p.index]

    def check(self, *points: PointId) -> None:
        for p in points:
            if p.frame is not self:
                raise FrameError(
                    f"point {p!r} belongs to frame {p.frame.name}, not {self.name}"
                )

    def __len__(self) -> int:
        return len(self._coords)

    def points(self) -> list[PointId]:
        return [PointId(self, i) for i in range(len(self._coords))]

    # -- bodies -------------------------------------------------------------
    def add_body(self, name: str) -> BodyId:
        if name not in self._parent:
            self._parent[name] = name
            self._rank[name] = 0
        return BodyId(self, name)

    def _body(self, b: BodyId) -> str:
        if b.frame is not self:
            raise FrameError(f"body {b.name} belongs to another frame")
        if b.name not in self._parent:
            raise KeyError(f"unknown body {b.name!r}")
        return b.name

    def _find(self, name: str) -> str:
        root = name
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[name] != root:
            self._parent[name], name = root, self._parent[name]
        return root

    def union(self, a: BodyId, b: BodyId) -> None:
        ra, rb = self._find(self._body(a)), self._find(self._body(b))
        if ra != rb:
            if self._rank[ra] < self._rank[rb]:
                ra, rb = rb, ra
            self._parent[rb] = ra
            if self._rank[ra] == self._rank[rb]:
                self._rank[ra] += 1
        if self.debug:
            self._check_partition()

    def same(self, a: BodyId, b: BodyId) -> bool:
        return self._find(self._body(a)) == self._find(self._body(b))

    def body_classes(self) -> list[list[str]]:
        groups: dict[str, list[str]] = {}
        for name in self._parent:
            groups.setdefault(self._find(name), []).append(name)
        return sorted(sorted(g) for g in groups.values())

    def _check_partition(self) -> None:
        seen: set[str] = set()
        for cls in self.body_classes():
            assert not seen.intersection(cls), "steady-union classes overlap"
            seen.update(cls)
        assert seen == set(self._parent), "steady-union classes do not cover all bodies"


def mark_point(frame: Frame, coords: Sequence[Number]) -> PointId:
    return frame.mark(coords)


def steady_union(frame: Frame, body_a: BodyId, body_b: BodyId) -> None:
    frame.union(body_a, body_b)


def same_frame(frame: Frame, body_a: BodyId, body_b: BodyId) -> bool:
    return frame.same(body_a, body_b)


def frame_of(*points: PointId) -> Frame:
    """The common frame of the given points; FrameError if they disagree."""
    frame = points[0].frame
    frame.check(*points)
    return frame


def coords_of(points: Iterable[PointId]) -> list[tuple[Scalar, ...]]:
    return [p.frame.coords(p) for p in points]
