"""Execute parsed scripts against the kernel and collect values, reports and scenes."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .. import angles as ang
from .. import topology as topo
from ..compass import DistanceValue, Sphere, distance
from ..exprs import parse_scalar
from ..model import Frame, PointId
from ..report import Report
from ..scalar import Scalar, precision
from ..straightedge import Line, Segment as SegmentSet, crossing, foot, parallel_through
from ..vectors import (
    VectorClass,
    norm,
    point_plus_vector,
    rational_construction,
    sum_construction,
    vec_add,
    vec_scale,
    vector_between,
)
from ..verify import SuiteConfig, run_suite
from . import svg
from .dsl import Script, ScriptError, Statement

__all__ = ["RunConfig", "Outputs", "run"]


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int | None = None
    exploratory: bool = False
    digits: int = 6


@dataclass
class Binding:
    name: str
    type: str
    value: Any
    frame: Frame | None = None
    # extra drawing attached to the value (construction lines, arrows)
    decorations: list = field(default_factory=list)
    anchor: PointId | None = None
    reading: str | None = None  # rounded reading, as an instrument would show it


@dataclass
class Outputs:
    values: dict[str, Binding] = field(default_factory=dict)
    reports: list[Report] = field(default_factory=list)
    scenes: dict[str, bytes] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return any(not r.ok for r in self.reports)

    def value_table(self) -> list[dict[str, Any]]:
        return [_describe(b) for b in self.values.values()]

    def to_dict(self) -> dict[str, Any]:
        return {
            "values": self.value_table(),
            "reports": [r.to_dict(timing=False) for r in self.reports],
            "scenes": sorted(self.scenes),
        }

    def to_text(self) -> str:
        lines = []
        for row in self.value_table():
            exact = row.get("exact")
            if isinstance(exact, list):
                exact = "(" + ", ".join(exact) + ")"
            line = f"{row['name']:<8} {row['type']:<9} {exact}"
            if "decimal" in row:
                line += f"  ~ {row['decimal']}"
            if "reading" in row:
                line += f"  reads {row['reading']}"
            lines.append(line)
        for r in self.reports:
            lines.append(r.to_text(timing=False))
        return "\n".join(lines)


def _scalar_row(x: Scalar) -> dict[str, Any]:
    lo, hi = x.enclosure(12)
    return {"exact": str(x), "decimal": x.decimal(12), "enclosure": [lo, hi]}


def _describe(b: Binding) -> dict[str, Any]:
    row: dict[str, Any] = {"name": b.name, "type": b.type}
    v = b.value
    if b.type == "point":
        row["exact"] = [str(c) for c in v.frame.coords(v)]
    elif b.type == "vector":
        row["exact"] = [str(c) for c in v.components]
    elif b.type == "distance":
        row.update(_scalar_row(v.magnitude))
    elif b.type == "scalar":
        row.update(_scalar_row(v))
    elif b.type == "angle":
        row.update(_scalar_row(v.signed))
        row["orientation"] = v.orientation.value
        row["winding"] = v.winding
    elif b.type == "truth":
        row["exact"] = v.name.lower()
    elif b.type == "frame":
        row["exact"] = f"{v.dimension}D"
    elif b.type == "witness":
        row.update(_scalar_row(v.radius.magnitude))
        row["cautious_factor"] = str(v.cautious_factor)
    else:
        row["exact"] = b.type
    if b.reading is not None:
        row["reading"] = b.reading
    return row


def _fl(p: PointId) -> tuple[float, ...]:
    return tuple(float(c) for c in p.frame.coords(p))


class _Machine:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.out = Outputs()
        self.frames: dict[str, Frame] = {}

    def get(self, name: str) -> Any:
        return self.out.values[name].value

    def bind(self, st: Statement, value: Any, idx: int = 0, **extra) -> Binding:
        name, typ = st.binds[idx]
        b = Binding(name, typ, value, self.frames.get(st.frame), **extra)
        self.out.values[name] = b
        return b

    def scalar(self, text: str) -> Scalar:
        return parse_scalar(text)

    def radius(self, text: str) -> DistanceValue:
        if text in self.out.values:
            v = self.get(text)
            return v if isinstance(v, DistanceValue) else DistanceValue(v)
        return DistanceValue(self.scalar(text))

    def orientation(self, args) -> ang.Orientation:
        for t in args:
            if t.text == "cw":
                return ang.Orientation.CW
        return ang.Orientation.CCW

    def frame(self, st: Statement) -> Frame:
        return self.frames[st.frame]

    def chart(self, frame: Frame):
        if frame.dimension == 2:
            return None
        return ang.PlaneChart(VectorClass.of(frame, [1, 0, 0]), VectorClass.of(frame, [0, 1, 0]))

    # -- statements -----------------------------------------------------------
    def execute(self, st: Statement) -> None:
        a = [t.text for t in st.args]
        getattr(self, "do_" + st.command)(st, a)

    def do_frame(self, st, a):
        f = Frame(int(a[1]), name=a[0])
        self.frames[a[0]] = f
        self.bind(st, f)

    def do_point(self, st, a):
        self.bind(st, self.frame(st).mark([self.scalar(x) for x in a[1:]]))

    def do_let(self, st, a):
        self.bind(st, self.scalar(a[1]))

    def do_dist(self, st, a):
        p, q = self.get(a[1]), self.get(a[2])
        self.bind(st, distance(p, q), decorations=[svg.Segment(_fl(p), _fl(q), a[0])])

    def do_sphere(self, st, a):
        self.bind(st, Sphere(self.get(a[1]), self.radius(a[2])))

    def do_line(self, st, a):
        self.bind(st, Line(self.get(a[1]), self.get(a[2])))

    def do_segment(self, st, a):
        self.bind(st, SegmentSet(self.get(a[1]), self.get(a[2])))

    def do_parallel(self, st, a):
        self.bind(st, parallel_through(self.get(a[1]), self.get(a[2])))

    def do_foot(self, st, a):
        self.bind(st, foot(self.get(a[1]), self.get(a[2])))

    def do_cross(self, st, a):
        x = crossing(self.get(a[1]), self.get(a[2]))
        if x is None:
            raise ValueError(f"lines {a[1]} and {a[2]} do not cross")
        self.bind(st, x)

    def do_vec(self, st, a):
        p = self.get(a[1])
        self.bind(st, vector_between(p, self.get(a[2])), anchor=p)

    def do_vadd(self, st, a):
        self.bind(st, vec_add(self.get(a[1]), self.get(a[2])))

    def do_scale(self, st, a):
        self.bind(st, vec_scale(self.scalar(a[1]), self.get(a[2])))

    def do_norm(self, st, a):
        self.bind(st, norm(self.get(a[1])))

    def do_at(self, st, a):
        self.bind(st, point_plus_vector(self.get(a[1]), self.get(a[2])))

    def do_construct(self, st, a):
        q = self.scalar(a[1])
        if not q.is_rational():
            raise ValueError("the intercept construction needs a rational factor")
        v, origin = self.get(a[2]), self.get(a[3])
        trace: list = []
        end = rational_construction(q.as_fraction(), v, origin, trace=trace)
        deco: list = [svg.Arrow(_fl(origin), _fl(point_plus_vector(origin, v)), a[2])]
        for step in trace:
            marks = step["marks"]
            deco.append(svg.Segment(_fl(marks[0]), _fl(marks[-1]), thin=True))
            for j, m in enumerate(marks[1:], start=1):
                deco.append(svg.Cross(_fl(m), f"B{j}"))
            deco.append(svg.Segment(_fl(step["closing"].a), _fl(step["closing"].b), thin=True))
            deco.append(svg.Segment(_fl(step["parallel"].a), _fl(step["hit"]), thin=True))
        self.bind(st, end, decorations=deco)

    def do_vsum(self, st, a):
        u, v, s1 = self.get(a[1]), self.get(a[2]), self.get(a[3])
        start, end = sum_construction(u, v, s1)
        mid = point_plus_vector(start, u)
        deco = [
            svg.Arrow(_fl(start), _fl(mid), a[1]),
            svg.Arrow(_fl(mid), _fl(end), a[2]),
            svg.Arrow(_fl(start), _fl(end), f"{a[1]}+{a[2]}"),
            svg.Cross(_fl(start), a[3]),
        ]
        self.bind(st, end, decorations=deco)

    def do_angle(self, st, a):
        u, v = self.get(a[1]), self.get(a[2])
        self.bind(st, ang.angle(u, v, self.orientation(st.args[3:]), self.chart(u.frame)))

    def do_aadd(self, st, a):
        self.bind(st, ang.angle_add(self.get(a[1]), self.get(a[2])))

    def do_ascale(self, st, a):
        self.bind(st, ang.angle_scale(self.scalar(a[1]), self.get(a[2])))

    def do_sin(self, st, a):
        self.bind(st, ang.sin_cos(self.get(a[1]))[0])

    def do_cos(self, st, a):
        self.bind(st, ang.sin_cos(self.get(a[1]))[1])

    def do_arc(self, st, a):
        center = self.get(a[1])
        self.bind(st, ang.Arc(center, self.radius(a[2]), self.get(a[3]), self.get(a[4]),
                              self.orientation(st.args[5:]), chart=self.chart(center.frame)))

    def do_partition(self, st, a):
        arc, n = self.get(a[1]), int(a[2])
        deco = []
        try:
            pts = ang.uniform_partition(arc, n).points if n <= 64 else []
        except ValueError:
            pts = []
        for p, q in zip(pts, pts[1:]):
            deco.append(svg.Segment(_fl(p), _fl(q)))
        for j, p in enumerate(pts):
            deco.append(svg.Cross(_fl(p), f"C{j}"))
        self.bind(st, ang.partition_length(arc, n), decorations=deco)

    def do_arclength(self, st, a):
        self.bind(st, ang.arc_length(self.get(a[1]), self.scalar(a[2])))

    def do_tape(self, st, a):
        res = self.scalar(a[2])
        value = ang.measured_angle_report(self.get(a[1]), res)
        # report as many decimals as the ratio of two tape readings supports
        digits = max(len(str(res.as_fraction().denominator)) - 1, 0) + 1
        self.bind(st, value, reading=ang.format_angle(value, digits))

    def do_ball(self, st, a):
        self.bind(st, topo.OpenBall(self.get(a[1]), self.radius(a[2])))

    def do_union(self, st, a):
        self.bind(st, topo.union(*(self.get(x) for x in a[1:])))

    def do_inter(self, st, a):
        self.bind(st, topo.intersection(*(self.get(x) for x in a[1:])))

    def do_member(self, st, a):
        self.bind(st, topo.member(self.get(a[1]), self.get(a[2])))

    def do_witness(self, st, a):
        factor = self.scalar(a[3]).as_fraction() if len(a) > 3 else topo.PHYSICIST
        self.bind(st, topo.interior_ball(self.get(a[1]), self.get(a[2]), factor))

    def do_hausdorff(self, st, a):
        n = int(a[4]) if len(a) > 4 else None
        u, v = topo.hausdorff_witness(self.get(a[2]), self.get(a[3]), n)
        self.bind(st, u, 0)
        self.bind(st, v, 1)

    def do_verify(self, st, a):
        opts = {a[i]: int(a[i + 1]) for i in range(1, len(a), 2)}
        dim = opts.get("--dim", self.frame(st).dimension)
        cfg = SuiteConfig(seed=opts.get("--seed", 0), trials=opts.get("--trials", 1000),
                          frame_dimension=dim, samples=opts.get("--samples", 1000))
        self.out.reports.append(run_suite(a[0], cfg, exploratory=self.cfg.exploratory))

    def do_render(self, st, a):
        scene = svg.Scene(a[0])
        for name in a[1:]:
            for el in self.elements(self.out.values[name]):
                if el not in scene.elements:  # decorations may repeat a referenced point
                    scene.add(el)
        self.out.scenes[a[0]] = svg.render_svg(scene, digits=self.cfg.digits)

    # -- drawing ----------------------------------------------------------------
    def elements(self, b: Binding) -> list:
        v = b.value
        els = list(b.decorations)
        if b.type == "point":
            els.append(svg.Cross(_fl(v), b.name))
        elif b.type == "sphere":
            els.append(svg.Circle(_fl(v.center), float(v.radius.magnitude), b.name))
        elif b.type == "line":
            els.append(svg.Ray(_fl(v.a), _fl(v.b), b.name))
        elif b.type == "segment":
            els.append(svg.Segment(_fl(v.a), _fl(v.b), b.name))
        elif b.type == "vector":
            start = b.anchor or v.frame.base
            els.append(svg.Arrow(_fl(start), _fl(point_plus_vector(start, v)), b.name))
        elif b.type == "arc":
            sweep = float(v.sweep()) * v.orientation.sign
            els.append(svg.ArcPath(_fl(v.center), float(v.radius.magnitude), float(v.start_angle()), sweep, b.name))
        elif b.type == "openset":
            els.extend(_set_elements(v, b.name))
        elif b.type == "witness":
            els.append(svg.Circle(_fl(v.point), float(v.radius.magnitude), b.name, dashed=True))
            els.append(svg.Cross(_fl(v.point)))
        return els


def _set_elements(s, label: str) -> list:
    if isinstance(s, topo.OpenBall):
        return [svg.Circle(_fl(s.center), float(s.radius.magnitude), label, dashed=True)]
    if isinstance(s, (topo.Union, topo.Intersection)):
        out = []
        for p in s.parts:
            out.extend(_set_elements(p, ""))
        return out
    return []


def run(script: Script, cfg: RunConfig = RunConfig()) -> Outputs:
    """Execute every statement; kernel errors become ScriptErrors at the statement's line."""
    m = _Machine(cfg)
    bits = cfg.precision_bits
    with precision(max_bits=bits):
        for st in script.statements:
            try:
                m.execute(st)
            except ScriptError:
                raise
            except (ValueError, ArithmeticError, KeyError, TypeError, AssertionError, PermissionError) as exc:
                raise ScriptError(f"{st.command}: {exc}", st.line, st.col) from exc
    return m.out
