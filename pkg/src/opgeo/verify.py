"""Seeded randomized suites that check the derived structures trial by trial.

Each suite draws its inputs from a seeded sampler, hands them to small check
functions and tallies pass/fail/uncertain per axiom.  The inputs of the first
failing trial are serialized as exact expressions so :func:`replay` can feed
them back through the kernel.

Degenerate inputs (coincident points, zero vectors, aligned triples) are
forced at fixed trial indices, so every equality branch is exercised no
matter the seed.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import angles as ang
from . import topology as topo
from .compass import distance
from .exprs import parse_scalar
from .model import Frame, PointId
from .report import Report
from .scalar import (
    ONE,
    PI,
    ZERO,
    Ordering,
    Scalar,
    Tri,
    UncertainComparison,
    as_scalar,
    compare,
    precision,
    sqrt,
)
from .straightedge import collinear, is_between
from .vectors import (
    VectorClass,
    equivalent,
    norm,
    point_plus_vector,
    rational_construction,
    sum_construction,
    transport,
    vec_add,
    vec_scale,
    vector_between,
)

__all__ = [
    "SuiteConfig",
    "Sampler",
    "SUITES",
    "EXPLORATORY",
    "run_suite",
    "replay",
    "verify_metric",
    "verify_norm",
    "verify_vector_space",
    "verify_affine",
    "verify_equivalences",
    "verify_angles",
    "verify_topology",
    "verify_inner_product",
]

# degenerate cases cycle with this period
_PERIOD = 50


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int = 1000
    frame_dimension: int = 3
    coordinate_range: int = 12
    mode: str = "exact"
    irrational_rate: float = 0.1
    samples: int = 1000  # sampled points per witness in the topology suite

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.frame_dimension not in (2, 3):
            raise ValueError("frame dimension must be 2 or 3")
        if self.mode not in ("exact", "interval-only"):
            raise ValueError("mode is 'exact' or 'interval-only'")
        if self.coordinate_range < 1:
            raise ValueError("coordinate_range must be at least 1")


class Sampler:
    """Rational coordinates with bounded numerator and denominator, plus a
    share of sqrt(2)/sqrt(3) combinations to reach the radical tower."""

    def __init__(self, cfg: SuiteConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)

    def rational(self, nonzero: bool = False) -> Fraction:
        r = self.cfg.coordinate_range
        while True:
            q = Fraction(self.rng.randint(-r, r), self.rng.randint(1, r))
            if q or not nonzero:
                return q

    def coordinate(self) -> Scalar:
        if self.rng.random() < self.cfg.irrational_rate:
            root = sqrt(self.rng.choice((2, 3)))
            return as_scalar(self.rational()) + as_scalar(self.rational(nonzero=True)) * root
        return as_scalar(self.rational())

    def coords(self, dim: int) -> list[Scalar]:
        return [self.coordinate() for _ in range(dim)]

    def point(self, frame: Frame) -> PointId:
        return frame.mark(self.coords(frame.dimension))

    def vector(self, frame: Frame) -> VectorClass:
        return VectorClass(frame, tuple(self.coords(frame.dimension)))

    def planar_vector(self, frame: Frame, nonzero: bool = True) -> VectorClass:
        while True:
            xy = self.coords(2)
            if not nonzero or any(compare(c, ZERO) is not Ordering.EQUAL for c in xy):
                return VectorClass(frame, tuple(xy + [ZERO] * (frame.dimension - 2)))


# ---------------------------------------------------------------------------
# serialization of trial inputs


def _ser(x: Any) -> Any:
    if isinstance(x, PointId):
        return {"point": [str(c) for c in x.frame.coords(x)]}
    if isinstance(x, VectorClass):
        return {"vector": [str(c) for c in x.components]}
    if isinstance(x, (Scalar, Fraction)):
        return {"scalar": str(x)}
    if isinstance(x, (list, tuple)):
        return [_ser(v) for v in x]
    return x


def _deser(x: Any, frame: Frame) -> Any:
    if isinstance(x, dict):
        if "point" in x:
            return frame.mark([parse_scalar(c) for c in x["point"]])
        if "vector" in x:
            return VectorClass(frame, tuple(parse_scalar(c) for c in x["vector"]))
        if "scalar" in x:
            return parse_scalar(x["scalar"])
    if isinstance(x, list):
        return [_deser(v, frame) for v in x]
    return x


Verdict = "bool | None | tuple[bool | None, str]"


def _ord_ok(o: Ordering, accept: tuple[Ordering, ...]) -> bool | None:
    if o is Ordering.UNCERTAIN:
        return None
    return o in accept


def _tri(t: Tri) -> bool | None:
    return None if t is Tri.UNCERTAIN else t is Tri.TRUE


def _eq(x, y) -> bool | None:
    return _ord_ok(compare(x, y), (Ordering.EQUAL,))


def _veq(u: VectorClass, v: VectorClass) -> bool | None:
    return _tri(u.equals(v))


class _Suite:
    """Bookkeeping for one suite run: record checks and keep the first counterexample."""

    def __init__(self, name: str, cfg: SuiteConfig):
        self.cfg = cfg
        self.report = Report(name, cfg.seed, cfg.trials)
        self.frame = Frame(cfg.frame_dimension, name=name)
        self.sampler = Sampler(cfg)

    def check(self, axiom: str, trial: int, fn: Callable, **inputs: Any) -> None:
        res = self.report.axiom(axiom)
        try:
            out = fn(self.frame, **inputs)
        except UncertainComparison:
            out = None
        note = None
        if isinstance(out, tuple):
            out, note = out
        if note:
            res.note(note)
        trace = None
        if out is not True:
            trace = {"trial": trial, "check": fn.__name__, "inputs": {k: _ser(v) for k, v in inputs.items()}}
        res.record(out, trace)


def _run(name: str, cfg: SuiteConfig, body: Callable[[_Suite, int], None], axioms: list[str]) -> Report:
    suite = _Suite(name, cfg)
    for a in axioms:
        suite.report.axiom(a)
    start = time.perf_counter()
    with precision(symbolic=cfg.mode == "exact"):
        for i in range(cfg.trials):
            body(suite, i)
    suite.report.elapsed_ms = (time.perf_counter() - start) * 1000
    return suite.report


# ---------------------------------------------------------------------------
# metric


def check_identity(frame, a):
    return _eq(distance(a, a).magnitude, ZERO)


def check_positivity(frame, a, b):
    d = distance(a, b).magnitude
    o = compare(d, ZERO)
    if o is Ordering.UNCERTAIN:
        return None
    if a == b:
        return o is Ordering.EQUAL, "coincident"
    return o is Ordering.GREATER


def check_symmetry(frame, a, b):
    return _eq(distance(a, b).magnitude, distance(b, a).magnitude)


def check_triangle(frame, a, b, c):
    o = compare(distance(a, c).magnitude, distance(a, b).magnitude + distance(b, c).magnitude)
    if o is Ordering.UNCERTAIN:
        return None
    if o is Ordering.GREATER:
        return False
    if o is Ordering.EQUAL:
        # equality only when B sits on the segment AC
        return bool(collinear(a, b, c)) and is_between(a, b, c) is Tri.TRUE, "aligned"
    return True


def _metric_points(s: _Suite, i: int) -> tuple[PointId, PointId, PointId]:
    f, smp = s.frame, s.sampler
    k = i % _PERIOD
    a = smp.point(f)
    if k == 0:
        return a, a, a
    if k == 1:
        return a, a, smp.point(f)
    if k in (2, 3):
        c = smp.point(f)
        t = Fraction(smp.rng.randint(1, 9), 10) if k == 2 else Fraction(smp.rng.randint(11, 30), 10)
        b = f.mark([x + t * (y - x) for x, y in zip(f.coords(a), f.coords(c))])
        return a, b, c
    return a, smp.point(f), smp.point(f)


def verify_metric(cfg: SuiteConfig) -> Report:
    """d(A,A) = 0, positivity, symmetry and the triangle inequality."""

    def body(s: _Suite, i: int) -> None:
        a, b, c = _metric_points(s, i)
        s.check("identity", i, check_identity, a=a)
        s.check("positivity", i, check_positivity, a=a, b=b)
        s.check("symmetry", i, check_symmetry, a=a, b=b)
        s.check("triangle_inequality", i, check_triangle, a=a, b=b, c=c)

    return _run("metric", cfg, body, ["identity", "positivity", "symmetry", "triangle_inequality"])


# ---------------------------------------------------------------------------
# norm


def check_norm_nonnegative(frame, a):
    n = norm(a).magnitude
    o = compare(n, ZERO)
    if o is Ordering.UNCERTAIN:
        return None
    if a.is_zero():
        return o is Ordering.EQUAL, "zero_vector"
    return o is Ordering.GREATER


def check_norm_triangle(frame, a, b):
    o = compare(norm(vec_add(a, b)).magnitude, norm(a).magnitude + norm(b).magnitude)
    if o is Ordering.UNCERTAIN:
        return None
    if o is Ordering.EQUAL:
        return True, "aligned"
    return o is Ordering.LESS


def check_homogeneity(frame, a, lam):
    return _eq(norm(vec_scale(lam, a)).magnitude, abs(as_scalar(lam)) * norm(a).magnitude)


def check_drawn_three_fifths(frame, a):
    """(3/5)a drawn with the intercept construction, then measured with the compass."""
    end = rational_construction(Fraction(3, 5), a, frame.base)
    drawn = vector_between(frame.base, end)
    same = _veq(drawn, vec_scale(Fraction(3, 5), a))
    if same is not True:
        return same
    return _eq(norm(drawn).magnitude, Fraction(3, 5) * norm(a).magnitude)


def verify_norm(cfg: SuiteConfig, drawn_trials: int = 1000) -> Report:
    """||a|| >= 0 with equality only for the zero class, subadditivity, homogeneity.

    The first ``drawn_trials`` trials also measure (3/5)a produced by the
    compass-and-parallels construction instead of by arithmetic.
    """

    def body(s: _Suite, i: int) -> None:
        f, smp = s.frame, s.sampler
        k = i % _PERIOD
        a = smp.vector(f)
        if k == 0:
            a = VectorClass.zero(f)
        elif k == 4:
            a = VectorClass.of(f, [4, 3] + [0] * (f.dimension - 2))  # |a| = 5, |3/5 a| = 3
        b = vec_scale(Fraction(smp.rng.randint(0, 5), smp.rng.randint(1, 5)), a) if k == 1 else smp.vector(f)
        lam = Fraction(-1) if k == 2 else (Fraction(0) if k == 3 else smp.rational())
        s.check("nonnegativity", i, check_norm_nonnegative, a=a)
        s.check("triangle_inequality", i, check_norm_triangle, a=a, b=b)
        s.check("homogeneity", i, check_homogeneity, a=a, lam=lam)
        if i < drawn_trials:
            s.check("homogeneity_3/5_drawn", i, check_drawn_three_fifths, a=a)
        else:
            s.check("homogeneity_3/5_drawn", i, check_homogeneity, a=a, lam=Fraction(3, 5))

    return _run("norm", cfg, body, ["nonnegativity", "triangle_inequality", "homogeneity", "homogeneity_3/5_drawn"])


# ---------------------------------------------------------------------------
# vector space


def check_add_assoc(frame, a, b, c):
    return _veq(vec_add(vec_add(a, b), c), vec_add(a, vec_add(b, c)))


def check_add_comm(frame, a, b):
    return _veq(vec_add(a, b), vec_add(b, a))


def check_zero(frame, a):
    return _veq(vec_add(a, VectorClass.zero(frame)), a)


def check_inverse(frame, a):
    return _veq(vec_add(a, vec_scale(-1, a)), VectorClass.zero(frame))


def check_distrib_vectors(frame, a, b, lam):
    return _veq(vec_scale(lam, vec_add(a, b)), vec_add(vec_scale(lam, a), vec_scale(lam, b)))


def check_distrib_scalars(frame, a, lam, mu):
    return _veq(vec_scale(lam + mu, a), vec_add(vec_scale(lam, a), vec_scale(mu, a)))


def check_compat(frame, a, lam, mu):
    return _veq(vec_scale(lam, vec_scale(mu, a)), vec_scale(lam * mu, a))


def check_unit(frame, a):
    return _veq(vec_scale(1, a), a)


def check_sum_well_defined(frame, a, b, s1, s2):
    """The sum drawn from two different starting points gives one class."""
    p1, q1 = sum_construction(a, b, s1)
    p2, q2 = sum_construction(a, b, s2)
    first = vector_between(p1, q1)
    ok = _veq(first, vector_between(p2, q2))
    if ok is not True:
        return ok
    return _veq(first, vec_add(a, b))


def check_rational_drawn(frame, a, q):
    """Intercept construction for m/n against exact scaling."""
    q = Fraction(str(q)) if not isinstance(q, Fraction) else q
    end = rational_construction(q, a, frame.base)
    return _veq(vector_between(frame.base, end), vec_scale(q, a))


_VS_AXIOMS = [
    "add_associative",
    "add_commutative",
    "zero_neutral",
    "additive_inverse",
    "distributive_vectors",
    "distributive_scalars",
    "scalar_compatible",
    "scalar_identity",
    "sum_well_defined",
    "rational_construction",
]


def verify_vector_space(cfg: SuiteConfig, max_denominator: int = 20) -> Report:
    def body(s: _Suite, i: int) -> None:
        f, smp = s.frame, s.sampler
        k = i % _PERIOD
        a, b, c = smp.vector(f), smp.vector(f), smp.vector(f)
        if k == 0:
            a = VectorClass.zero(f)
        lam, mu = smp.rational(), smp.rational()
        n = smp.rng.randint(1, max_denominator)
        q = Fraction(smp.rng.randint(-3 * n, 3 * n), n)
        s.check("add_associative", i, check_add_assoc, a=a, b=b, c=c)
        s.check("add_commutative", i, check_add_comm, a=a, b=b)
        s.check("zero_neutral", i, check_zero, a=a)
        s.check("additive_inverse", i, check_inverse, a=a)
        s.check("distributive_vectors", i, check_distrib_vectors, a=a, b=b, lam=lam)
        s.check("distributive_scalars", i, check_distrib_scalars, a=a, lam=lam, mu=mu)
        s.check("scalar_compatible", i, check_compat, a=a, lam=lam, mu=mu)
        s.check("scalar_identity", i, check_unit, a=a)
        s.check("sum_well_defined", i, check_sum_well_defined, a=a, b=b,
                s1=smp.point(f), s2=smp.point(f))
        s.check("rational_construction", i, check_rational_drawn, a=b, q=q)

    return _run("vector_space", cfg, body, _VS_AXIOMS)


# ---------------------------------------------------------------------------
# affine structure


def check_chasles(frame, p, q, r):
    return _veq(vec_add(vector_between(p, q), vector_between(q, r)), vector_between(p, r))


def check_unique_end(frame, p, v, nudge):
    """Only one q has pq = v: two ways of drawing it agree, a nudged point fails."""
    q1 = point_plus_vector(p, v)
    q2 = transport(v.representative(), p).end
    if q1 != q2:
        return False
    if _veq(vector_between(p, q1), v) is not True:
        return False
    other = frame.mark([x + nudge * (1 if j == 0 else 0) for j, x in enumerate(frame.coords(q1))])
    return _veq(vector_between(p, other), v) is False


def verify_affine(cfg: SuiteConfig) -> Report:
    def body(s: _Suite, i: int) -> None:
        f, smp = s.frame, s.sampler
        p = smp.point(f)
        if i % _PERIOD == 0:
            q = r = p
        else:
            q, r = smp.point(f), smp.point(f)
        s.check("chasles", i, check_chasles, p=p, q=q, r=r)
        s.check("unique_end_point", i, check_unique_end, p=p, v=smp.vector(f),
                nudge=smp.rational(nonzero=True))

    return _run("affine", cfg, body, ["chasles", "unique_end_point"])


# ---------------------------------------------------------------------------
# equivalence relations


def check_steady_union(frame, unions):
    """Random steady unions on six bodies; the relation must be an equivalence."""
    scratch = Frame(frame.dimension)
    bodies = [scratch.add_body(f"b{j}") for j in range(6)]
    for x, y in unions:
        scratch.union(bodies[x], bodies[y])
    rel = [[scratch.same(x, y) for y in bodies] for x in bodies]
    n = len(bodies)
    if not all(rel[x][x] for x in range(n)):
        return False
    if any(rel[x][y] != rel[y][x] for x in range(n) for y in range(n)):
        return False
    return all(rel[x][z] for x in range(n) for y in range(n) for z in range(n) if rel[x][y] and rel[y][z])


def check_transport_reflexive(frame, a, b):
    from .vectors import OrderedPair

    return _tri(equivalent(OrderedPair(a, b), OrderedPair(a, b)))


def check_transport_symmetric(frame, a, b, o, c, d):
    from .vectors import OrderedPair

    p = OrderedPair(a, b)
    q = transport(p, o)
    if _tri(equivalent(p, q)) is not True or _tri(equivalent(q, p)) is not True:
        return False
    r = OrderedPair(c, d)
    return _tri(equivalent(p, r)) == _tri(equivalent(r, p))


def check_transport_transitive(frame, a, b, origins):
    """Chain of transports P1 ~ P2 ~ ... ~ Pn must give P1 ~ Pn."""
    from .vectors import OrderedPair

    chain = [OrderedPair(a, b)]
    for o in origins:
        chain.append(transport(chain[-1], o))
    for x, y in zip(chain, chain[1:]):
        if _tri(equivalent(x, y)) is not True:
            return False
    return _tri(equivalent(chain[0], chain[-1]))


def _chart(frame: Frame) -> ang.PlaneChart | None:
    if frame.dimension == 2:
        return None
    return ang.PlaneChart(VectorClass.of(frame, [1, 0, 0]), VectorClass.of(frame, [0, 1, 0]))


def check_angle_equivalence(frame, a, b, c, d, e, g):
    """Rotations preserve angle values; the induced relation is an equivalence."""
    ch = _chart(frame)
    r1 = ang.rotation_aligning(c, d, chart=ch)
    r2 = ang.rotation_aligning(e, g, chart=ch)
    p0 = (a, b)
    p1 = (ang.rotate_vector(r1, a), ang.rotate_vector(r1, b))
    p2 = (ang.rotate_vector(r2, p1[0]), ang.rotate_vector(r2, p1[1]))
    # angle_equivalent(p, q) compares angle(p) with angle(q); measure each pair once
    t0, t1, t2 = (ang.angle(*p, chart=ch) for p in (p0, p1, p2))
    checks = [t0.equals(t0), t0.equals(t1), t1.equals(t0), t1.equals(t2), t0.equals(t2)]
    if Tri.FALSE in checks:
        return False
    return None if Tri.UNCERTAIN in checks else True


def verify_equivalences(cfg: SuiteConfig, chain_length: int = 5) -> Report:
    def body(s: _Suite, i: int) -> None:
        f, smp = s.frame, s.sampler
        unions = [(smp.rng.randrange(6), smp.rng.randrange(6)) for _ in range(smp.rng.randint(0, 5))]
        s.check("steady_union_equivalence", i, check_steady_union, unions=unions)
        a, b = smp.point(f), smp.point(f)
        if i % _PERIOD == 0:
            b = a
        s.check("transport_reflexive", i, check_transport_reflexive, a=a, b=b)
        s.check("transport_symmetric", i, check_transport_symmetric, a=a, b=b, o=smp.point(f),
                c=smp.point(f), d=smp.point(f))
        s.check("transport_transitive", i, check_transport_transitive, a=a, b=b,
                origins=[smp.point(f) for _ in range(chain_length - 1)])
        vs = [smp.planar_vector(f) for _ in range(6)]
        s.check("angle_equivalence", i, check_angle_equivalence,
                a=vs[0], b=vs[1], c=vs[2], d=vs[3], e=vs[4], g=vs[5])

    return _run("equivalences", cfg, body, [
        "steady_union_equivalence", "transport_reflexive", "transport_symmetric",
        "transport_transitive", "angle_equivalence",
    ])


# ---------------------------------------------------------------------------
# angles

_COMPLEMENT_BITS = 110  # 2**-110 < 1e-30


def check_complement(frame, a, b):
    """angle_ccw(a,b) + angle_ccw(b,a) = 2 pi, exactly and by a 1e-30 enclosure."""
    ch = _chart(frame)
    total = ang.angle(a, b, chart=ch).value + ang.angle(b, a, chart=ch).value
    exact = _eq(total, 2 * PI)
    lo, hi = (total - 2 * PI).interval(_COMPLEMENT_BITS)
    tight = hi - lo < Fraction(1, 10**30) and lo <= 0 <= hi
    if exact is None:
        return None
    return exact and tight


def check_angle_sum(frame, a, b, c, d):
    ch = _chart(frame)
    drawn = ang.angle_sum_construction(a, b, c, d, chart=ch)
    value = ang.angle_add(ang.angle(a, b, chart=ch), ang.angle(c, d, chart=ch)).normalized()
    return _tri(drawn.equals(value))


def check_trig_scales(frame, a, b, scales):
    ch = _chart(frame)
    first = ang.triangle_ratios(a, b, scales[0], chart=ch)
    for sc in scales[1:]:
        other = ang.triangle_ratios(a, b, sc, chart=ch)
        if _eq(first[0], other[0]) is not True or _eq(first[1], other[1]) is not True:
            return False
    return True


def check_pythagoras(frame, a, b):
    s, c = ang.triangle_ratios(a, b, 1, chart=_chart(frame))
    return _eq(s * s + c * c, ONE)


def check_ratio_constancy(frame, a, b, r1, r2, n):
    """Partition sums scale with the radius, so S/R is the same on every circle."""
    ch = _chart(frame)
    from .compass import DistanceValue

    arcs = [ang.Arc(frame.base, DistanceValue(as_scalar(r)), a, b, chart=ch) for r in (r1, r2)]
    s1 = ang.partition_length(arcs[0], n).magnitude / as_scalar(r1)
    s2 = ang.partition_length(arcs[1], n).magnitude / as_scalar(r2)
    return _eq(s1, s2)


def verify_angles(cfg: SuiteConfig) -> Report:
    def body(s: _Suite, i: int) -> None:
        f, smp = s.frame, s.sampler
        while True:
            a, b = smp.planar_vector(f), smp.planar_vector(f)
            ax, ay = a.components[0], a.components[1]
            bx, by = b.components[0], b.components[1]
            if compare(ax * by - ay * bx, ZERO) is not Ordering.EQUAL:
                break
        c, d = smp.planar_vector(f), smp.planar_vector(f)
        scales = [Fraction(smp.rng.randint(1, 40), smp.rng.randint(1, 9)) for _ in range(5)]
        s.check("complement_2pi", i, check_complement, a=a, b=b)
        s.check("sum_construction", i, check_angle_sum, a=a, b=b, c=c, d=d)
        s.check("trig_scale_invariance", i, check_trig_scales, a=a, b=b, scales=scales)
        s.check("pythagorean_identity", i, check_pythagoras, a=a, b=b)
        s.check("arc_ratio_constancy", i, check_ratio_constancy, a=a, b=b,
                r1=smp.rational(nonzero=True).__abs__(), r2=smp.rational(nonzero=True).__abs__(),
                n=smp.rng.randint(2, 16))

    return _run("angles", cfg, body, [
        "complement_2pi", "sum_construction", "trig_scale_invariance",
        "pythagorean_identity", "arc_ratio_constancy",
    ])


# ---------------------------------------------------------------------------
# topology


def check_hausdorff(frame, a, b, seed, samples):
    """Balls of radius d/2 about A and B: disjoint analytically and on samples."""
    u, v = topo.hausdorff_witness(a, b)
    if _tri(topo.balls_disjoint(u, v)) is not True:
        return False
    rng = random.Random(seed)
    half = samples // 2
    for xs in topo.sample_coords(u, half, rng) + topo.sample_coords(v, samples - half, rng):
        both = topo.contains_coords(u, xs) & topo.contains_coords(v, xs)
        if both is not Tri.FALSE:
            return _tri(Tri.UNCERTAIN) if both is Tri.UNCERTAIN else False
    return True


def check_cautious_witness(frame, centers, radii, probe, seed, samples):
    """Intersection of overlapping balls: the halved-margin witness ball stays inside."""
    from .compass import DistanceValue

    balls = [topo.OpenBall(c, DistanceValue(as_scalar(r))) for c, r in zip(centers, radii)]
    s = topo.intersection(*balls)
    if topo.member(s, probe) is not Tri.TRUE:
        return True, "probe_outside"
    w = topo.interior_ball(s, probe, topo.PHYSICIST)
    rng = random.Random(seed)
    for xs in topo.sample_coords(w.ball, samples, rng):
        v = topo.contains_coords(s, xs)
        if v is not Tri.TRUE:
            return None if v is Tri.UNCERTAIN else False
    return True


def verify_topology(cfg: SuiteConfig) -> Report:
    def body(s: _Suite, i: int) -> None:
        f, smp = s.frame, s.sampler
        a = smp.point(f)
        b = smp.point(f)
        while b == a:
            b = smp.point(f)
        s.check("hausdorff_separation", i, check_hausdorff, a=a, b=b,
                seed=smp.rng.getrandbits(32), samples=cfg.samples)
        # three balls around points near a, radii large enough to overlap at a
        centers = [f.mark([x + smp.rational() / 4 for x in f.coords(a)]) for _ in range(3)]
        radii = [abs(smp.rational(nonzero=True)) + 2 * cfg.coordinate_range for _ in range(3)]
        probe = f.mark([x + smp.rational() / 8 for x in f.coords(a)])
        s.check("cautious_witness", i, check_cautious_witness, centers=centers, radii=radii,
                probe=probe, seed=smp.rng.getrandbits(32), samples=cfg.samples)

    return _run("topology", cfg, body, ["hausdorff_separation", "cautious_witness"])


# ---------------------------------------------------------------------------
# inner product (exploratory)


def _dotq(a: VectorClass, b: VectorClass) -> Scalar:
    """Quarter-difference form (|a+b|^2 - |a-b|^2) / 4 built from compass lengths."""
    plus = norm(vec_add(a, b)).magnitude
    minus = norm(vec_add(a, vec_scale(-1, b))).magnitude
    return (plus * plus - minus * minus) / 4


def check_parallelogram(frame, a, b):
    n = lambda v: norm(v).magnitude ** 2
    return _eq(n(vec_add(a, b)) + n(vec_add(a, vec_scale(-1, b))), 2 * n(a) + 2 * n(b))


def check_ip_symmetric(frame, a, b):
    return _eq(_dotq(a, b), _dotq(b, a))


def check_ip_additive(frame, a, b, c):
    return _eq(_dotq(vec_add(a, c), b), _dotq(a, b) + _dotq(c, b))


def check_ip_homogeneous(frame, a, b, lam):
    return _eq(_dotq(vec_scale(lam, a), b), as_scalar(lam) * _dotq(a, b))


def check_ip_positive(frame, a):
    o = compare(_dotq(a, a), ZERO)
    if o is Ordering.UNCERTAIN:
        return None
    if a.is_zero():
        return o is Ordering.EQUAL, "zero_vector"
    return o is Ordering.GREATER


def check_ip_self(frame, a):
    return _eq(_dotq(a, a), norm(a).magnitude ** 2)


_COSINE_TOL = Fraction(1, 10**20)


def check_cosine(frame, a, b):
    """The form against |a||b|cos(angle) with cos read from the right triangle."""
    if a.is_zero() or b.is_zero():
        return True, "zero_vector"
    _, cos = ang.triangle_ratios(a, b, 1)
    rhs = norm(a).magnitude * norm(b).magnitude * cos
    lhs = _dotq(a, b)
    exact = _eq(lhs, rhs)
    if exact is not None:
        return exact
    lo, hi = (lhs - rhs).interval(80)
    if -_COSINE_TOL < lo and hi < _COSINE_TOL:
        return True, "interval_certified"
    return None


_IP_AXIOMS = ["parallelogram_law", "symmetry", "additivity", "homogeneity", "positivity",
              "self_product"]


def verify_inner_product(cfg: SuiteConfig) -> Report:
    """Exploratory: beyond what the instruments establish operationally."""
    axioms = _IP_AXIOMS + (["cosine_formula"] if cfg.frame_dimension == 2 else [])

    def body(s: _Suite, i: int) -> None:
        f, smp = s.frame, s.sampler
        k = i % _PERIOD
        a, b, c = smp.vector(f), smp.vector(f), smp.vector(f)
        if k == 0:
            a = VectorClass.zero(f)
        elif k == 1 and f.dimension == 2:
            b = VectorClass(f, (-a.components[1], a.components[0]))  # perpendicular
        elif k == 2:
            b = a
        s.check("parallelogram_law", i, check_parallelogram, a=a, b=b)
        s.check("symmetry", i, check_ip_symmetric, a=a, b=b)
        s.check("additivity", i, check_ip_additive, a=a, b=b, c=c)
        s.check("homogeneity", i, check_ip_homogeneous, a=a, b=b, lam=smp.rational())
        s.check("positivity", i, check_ip_positive, a=a)
        s.check("self_product", i, check_ip_self, a=a)
        if f.dimension == 2:
            s.check("cosine_formula", i, check_cosine, a=a, b=b)

    return _run("inner_product", cfg, body, axioms)


# ---------------------------------------------------------------------------

SUITES: dict[str, Callable[[SuiteConfig], Report]] = {
    "metric": verify_metric,
    "norm": verify_norm,
    "vector_space": verify_vector_space,
    "affine": verify_affine,
    "equivalences": verify_equivalences,
    "angles": verify_angles,
    "topology": verify_topology,
    "inner_product": verify_inner_product,
}
EXPLORATORY = {"inner_product"}

_CHECKS = {
    fn.__name__: fn
    for fn in [
        check_identity, check_positivity, check_symmetry, check_triangle,
        check_norm_nonnegative, check_norm_triangle, check_homogeneity, check_drawn_three_fifths,
        check_add_assoc, check_add_comm, check_zero, check_inverse, check_distrib_vectors,
        check_distrib_scalars, check_compat, check_unit, check_sum_well_defined, check_rational_drawn,
        check_chasles, check_unique_end, check_steady_union, check_transport_reflexive,
        check_transport_symmetric, check_transport_transitive, check_angle_equivalence,
        check_complement, check_angle_sum, check_trig_scales, check_pythagoras, check_ratio_constancy,
        check_hausdorff, check_cautious_witness, check_parallelogram, check_ip_symmetric,
        check_ip_additive, check_ip_homogeneous, check_ip_positive, check_ip_self, check_cosine,
    ]
}


def run_suite(name: str, cfg: SuiteConfig, exploratory: bool = False) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    if name in EXPLORATORY and not exploratory:
        raise PermissionError(f"suite {name!r} is exploratory; pass --exploratory to run it")
    return SUITES[name](cfg)


def replay(trace: dict[str, Any], dimension: int) -> bool | None:
    """Re-run the check recorded in a counterexample trace on fresh points."""
    fn = _CHECKS[trace["check"]]
    frame = Frame(dimension, name="replay")
    inputs = {k: _deser(v, frame) for k, v in trace["inputs"].items()}
    out = fn(frame, **inputs)
    return out[0] if isinstance(out, tuple) else out
