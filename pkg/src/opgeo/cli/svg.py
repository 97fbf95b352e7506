"""Deterministic SVG 1.1 drawings of construction scenes.

Coordinates are converted to floats only here, at the last moment, and
printed with a fixed number of decimals so identical scenes give identical
bytes.  3D scenes are projected orthographically onto a coordinate plane.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

__all__ = ["Scene", "Cross", "Circle", "Segment", "Ray", "ArcPath", "Arrow", "render_svg"]

_PLANES = {"xy": (0, 1), "xz": (0, 2), "yz": (1, 2)}


@dataclass(frozen=True)
class Cross:
    at: tuple[float, ...]
    label: str = ""


@dataclass(frozen=True)
class Circle:
    center: tuple[float, ...]
    radius: float
    label: str = ""
    dashed: bool = False


@dataclass(frozen=True)
class Segment:
    a: tuple[float, ...]
    b: tuple[float, ...]
    label: str = ""
    thin: bool = False


@dataclass(frozen=True)
class Ray:
    """A straight line through a and b, drawn across the whole picture."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    label: str = ""


@dataclass(frozen=True)
class ArcPath:
    center: tuple[float, ...]
    radius: float
    start: float  # polar angle of the first end, radians
    sweep: float  # signed, counterclockwise positive
    label: str = ""


@dataclass(frozen=True)
class Arrow:
    a: tuple[float, ...]
    b: tuple[float, ...]
    label: str = ""


@dataclass
class Scene:
    name: str
    elements: list = field(default_factory=list)
    plane: str = "xy"

    def add(self, el) -> None:
        self.elements.append(el)


def _fmt(x: float, digits: int) -> str:
    s = f"{x:.{digits}f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(scene: Scene, digits: int = 6, size: float = 480.0) -> bytes:
    if not scene.elements:
        raise ValueError("cannot render an empty scene")
    i, j = _PLANES[scene.plane]

    def proj(p):
        return (p[i], p[j])

    # bounding box of everything drawn
    xs, ys = [], []
    for el in scene.elements:
        if isinstance(el, Cross):
            pts = [proj(el.at)]
        elif isinstance(el, (Circle, ArcPath)):
            cx, cy = proj(el.center)
            pts = [(cx - el.radius, cy - el.radius), (cx + el.radius, cy + el.radius)]
        else:
            pts = [proj(el.a), proj(el.b)]
        for x, y in pts:
            xs.append(x)
            ys.append(y)
    minx, maxx, miny, maxy = min(xs), max(xs), min(ys), max(ys)
    span = max(maxx - minx, maxy - miny, 1e-9)
    pad = 0.08 * span
    minx, maxx, miny, maxy = minx - pad, maxx + pad, miny - pad, maxy + pad
    k = size / max(maxx - minx, maxy - miny)
    w, h = (maxx - minx) * k, (maxy - miny) * k

    def X(x):
        return _fmt((x - minx) * k, digits)

    def Y(y):
        return _fmt((maxy - y) * k, digits)

    f = lambda v: _fmt(v, digits)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{f(w)}" height="{f(h)}" '
        f'viewBox="0 0 {f(w)} {f(h)}">',
        f"<title>{escape(scene.name)}</title>",
        "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" "
        "orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\" fill=\"black\"/></marker></defs>",
        '<g fill="none" stroke="black" stroke-width="1.2" font-family="serif" font-size="13">',
    ]
    arm = 5.0
    for el in scene.elements:
        if isinstance(el, Cross):
            x, y = proj(el.at)
            px, py = (x - minx) * k, (maxy - y) * k
            out.append(
                f'<path d="M{f(px - arm)},{f(py - arm)} L{f(px + arm)},{f(py + arm)} '
                f'M{f(px - arm)},{f(py + arm)} L{f(px + arm)},{f(py - arm)}"/>'
            )
            if el.label:
                out.append(_label(el.label, px + arm + 2, py - arm - 2, f))
        elif isinstance(el, Circle):
            cx, cy = proj(el.center)
            dash = ' stroke-dasharray="5,4"' if el.dashed else ""
            out.append(f'<circle cx="{X(cx)}" cy="{Y(cy)}" r="{f(el.radius * k)}"{dash}/>')
            if el.label:
                out.append(_label(el.label, (cx - minx + el.radius * 0.72) * k, (maxy - cy - el.radius * 0.72) * k, f))
        elif isinstance(el, Segment):
            (ax, ay), (bx, by) = proj(el.a), proj(el.b)
            width = ' stroke-width="0.6"' if el.thin else ""
            out.append(f'<line x1="{X(ax)}" y1="{Y(ay)}" x2="{X(bx)}" y2="{Y(by)}"{width}/>')
            if el.label:
                out.append(_label(el.label, ((ax + bx) / 2 - minx) * k + 4, (maxy - (ay + by) / 2) * k - 4, f))
        elif isinstance(el, Ray):
            (ax, ay), (bx, by) = proj(el.a), proj(el.b)
            dx, dy = bx - ax, by - ay
            n = math.hypot(dx, dy) or 1.0
            reach = 2 * span / n
            p, q = (ax - reach * dx, ay - reach * dy), (ax + reach * dx, ay + reach * dy)
            out.append(f'<line x1="{X(p[0])}" y1="{Y(p[1])}" x2="{X(q[0])}" y2="{Y(q[1])}" stroke-width="0.8"/>')
            if el.label:
                out.append(_label(el.label, (bx - minx) * k + 4, (maxy - by) * k + 14, f))
        elif isinstance(el, ArcPath):
            cx, cy = proj(el.center)
            a0, a1 = el.start, el.start + el.sweep
            p0 = (cx + el.radius * math.cos(a0), cy + el.radius * math.sin(a0))
            p1 = (cx + el.radius * math.cos(a1), cy + el.radius * math.sin(a1))
            large = 1 if abs(el.sweep) > math.pi else 0
            sweep_flag = 0 if el.sweep > 0 else 1  # y axis points down in SVG
            r = f(el.radius * k)
            if abs(abs(el.sweep) - 2 * math.pi) < 1e-12:
                out.append(f'<circle cx="{X(cx)}" cy="{Y(cy)}" r="{r}" stroke-width="2"/>')
            else:
                out.append(
                    f'<path d="M{X(p0[0])},{Y(p0[1])} A{r},{r} 0 {large} {sweep_flag} {X(p1[0])},{Y(p1[1])}" '
                    'stroke-width="2"/>'
                )
            if el.label:
                mid = a0 + el.sweep / 2
                out.append(_label(el.label, (cx + 1.1 * el.radius * math.cos(mid) - minx) * k,
                                  (maxy - cy - 1.1 * el.radius * math.sin(mid)) * k, f))
        elif isinstance(el, Arrow):
            (ax, ay), (bx, by) = proj(el.a), proj(el.b)
            out.append(
                f'<line x1="{X(ax)}" y1="{Y(ay)}" x2="{X(bx)}" y2="{Y(by)}" stroke-width="1.6" '
                'marker-end="url(#head)"/>'
            )
            if el.label:
                out.append(_label(el.label, ((ax + bx) / 2 - minx) * k + 5, (maxy - (ay + by) / 2) * k - 5, f))
        else:
            raise TypeError(f"cannot draw {el!r}")
    out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def _label(text: str, x: float, y: float, f) -> str:
    return f'<text x="{f(x)}" y="{f(y)}" stroke="none" fill="black">{escape(text)}</text>'
