"""Exact scalars: rationals extended by square roots, with interval enclosures.

A :class:`Scalar` is a polynomial with rational coefficients over a global
registry of symbols.  Most symbols are square roots whose radicand is itself a
polynomial in older symbols, so every value lives in a tower of quadratic
extensions of Q and its sign can be decided exactly by repeated squaring.

Three symbol kinds are not algebraic: ``pi``, direction angles (``atan2`` of a
constructible vector) and trigonometric atoms for openings that are not
constructible.  Expressions that contain them are compared by interval
refinement, with one exact shortcut for equalities between angle values
(see :func:`compare`).
"""
from __future__ import annotations

import contextlib
import contextvars
import enum
import math
import os
import threading
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Iterator, Union

import gmpy2
import mpmath

_Q = gmpy2.mpq

Monomial = tuple  # sorted tuple of symbol ids; radical ids appear at most once
Poly = dict  # Monomial -> mpq coefficient, no zero coefficients

DEFAULT_MAX_PRECISION = 1024
_FIRST_PRECISION = 64


class UncertainComparison(ArithmeticError):
    """Raised when a boolean is demanded from an undecidable comparison."""


class NotConstructible(ArithmeticError):
    pass


class Tri(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNCERTAIN = "uncertain"

    def __bool__(self) -> bool:
        if self is Tri.UNCERTAIN:
            raise UncertainComparison("verdict is uncertain")
        return self is Tri.TRUE

    @classmethod
    def of(cls, flag: bool) -> Tri:
        return cls.TRUE if flag else cls.FALSE

    def __and__(self, other: Tri) -> Tri:
        if self is Tri.FALSE or other is Tri.FALSE:
            return Tri.FALSE
        if self is Tri.UNCERTAIN or other is Tri.UNCERTAIN:
            return Tri.UNCERTAIN
        return Tri.TRUE

    def __or__(self, other: Tri) -> Tri:
        if self is Tri.TRUE or other is Tri.TRUE:
            return Tri.TRUE
        if self is Tri.UNCERTAIN or other is Tri.UNCERTAIN:
            return Tri.UNCERTAIN
        return Tri.FALSE

    def __invert__(self) -> Tri:
        if self is Tri.UNCERTAIN:
            return self
        return Tri.FALSE if self is Tri.TRUE else Tri.TRUE


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    UNCERTAIN = None

    def flip(self) -> Ordering:
        if self is Ordering.LESS:
            return Ordering.GREATER
        if self is Ordering.GREATER:
            return Ordering.LESS
        return self


@dataclass(frozen=True)
class Precision:
    max_bits: int = DEFAULT_MAX_PRECISION
    symbolic: bool = True


def _initial_precision() -> Precision:
    env = os.environ.get("OPGEO_MAX_PRECISION")
    if env:
        return Precision(max_bits=int(env))
    return Precision()


_precision: contextvars.ContextVar[Precision] = contextvars.ContextVar(
    "opgeo_precision", default=_initial_precision()
)


def current_precision() -> Precision:
    return _precision.get()


@contextlib.contextmanager
def precision(max_bits: int | None = None, symbolic: bool | None = None) -> Iterator[Precision]:
    """Temporarily change the comparison ceiling or disable symbolic decisions."""
    cur = _precision.get()
    new = replace(
        cur,
        max_bits=cur.max_bits if max_bits is None else max_bits,
        symbolic=cur.symbolic if symbolic is None else symbolic,
    )
    token = _precision.set(new)
    try:
        yield new
    finally:
        _precision.reset(token)


# ---------------------------------------------------------------------------
# symbol registry


class _Sym:
    __slots__ = ("id", "kind", "radicand", "payload", "_iv", "text")

    def __init__(self, id_: int, kind: str, radicand: Poly | None = None, payload=None):
        self.id = id_
        self.kind = kind  # "sqrt" | "pi" | "atan" | "trig" | "tsqrt"
        self.radicand = radicand
        self.payload = payload
        self._iv: dict[int, tuple[int, int]] = {}
        self.text: str | None = None

    @property
    def algebraic(self) -> bool:
        return self.kind == "sqrt"


_lock = threading.RLock()
_SYMS: list[_Sym] = []
_RADICALS: dict = {}  # poly key -> symbol id
_ATOMS: dict = {}  # direction key -> symbol id
_TRIG: dict = {}  # (func, poly key) -> symbol id


def _new_symbol(kind: str, radicand: Poly | None = None, payload=None) -> _Sym:
    sym = _Sym(len(_SYMS), kind, radicand, payload)
    _SYMS.append(sym)
    return sym


_PI = _new_symbol("pi")


def _key(p: Poly) -> tuple:
    return tuple(sorted(p.items()))


# ---------------------------------------------------------------------------
# polynomial arithmetic

_mono_cache: dict = {}


def _mono_mul(m1: Monomial, m2: Monomial) -> tuple:
    """Product of two monomials as a tuple of (monomial, coefficient) items."""
    if not m1:
        return ((m2, _Q(1)),)
    if not m2:
        return ((m1, _Q(1)),)
    ck = (m1, m2) if m1 <= m2 else (m2, m1)
    hit = _mono_cache.get(ck)
    if hit is not None:
        return hit
    merged = sorted(m1 + m2)
    out: list[int] = []
    squares: list[int] = []
    i = 0
    while i < len(merged):
        s = merged[i]
        if i + 1 < len(merged) and merged[i + 1] == s and _SYMS[s].algebraic:
            squares.append(s)
            i += 2
            continue
        out.append(s)
        i += 1
    result: Poly = {tuple(out): _Q(1)}
    for s in squares:
        result = _mul(result, _SYMS[s].radicand)
    items = tuple(result.items())
    if len(_mono_cache) > 200_000:
        _mono_cache.clear()
    _mono_cache[ck] = items
    return items


def _add(p: Poly, q: Poly, sign: int = 1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _scale(p: Poly, c: Fraction) -> Poly:
    if not c:
        return {}
    return {m: v * c for m, v in p.items()}


def _mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return {}
    if len(p) == 1 and () in p:
        return _scale(q, p[()])
    if len(q) == 1 and () in q:
        return _scale(p, q[()])
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            c = c1 * c2
            for m, k in _mono_mul(m1, m2):
                v = out.get(m, 0) + c * k
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return out


_Q0 = _Q(0)


def _const(p: Poly) -> Fraction | None:
    if not p:
        return _Q0
    if len(p) == 1:
        return p.get(())
    return None


def _is_algebraic(p: Poly) -> bool:
    return all(_SYMS[s].algebraic for m in p for s in m)


def _top(p: Poly) -> int:
    return max(s for m in p for s in m)


def _split(p: Poly, s: int) -> tuple[Poly, Poly]:
    """p = a + b*sym(s) with a, b free of s."""
    a: Poly = {}
    b: Poly = {}
    for m, c in p.items():
        if s in m:
            rest = tuple(x for x in m if x != s)
            b[rest] = c
        else:
            a[m] = c
    return a, b


# ---------------------------------------------------------------------------
# fixed point intervals: (lo, hi) meaning [lo / 2**prec, hi / 2**prec]


def _fdiv_floor(a: int, b: int) -> int:
    return a // b


def _fdiv_ceil(a: int, b: int) -> int:
    return -((-a) // b)


def _iv_const(c: Fraction, prec: int) -> tuple[int, int]:
    n = c.numerator << prec
    return _fdiv_floor(n, c.denominator), _fdiv_ceil(n, c.denominator)


def _iv_mul(x: tuple[int, int], y: tuple[int, int], prec: int) -> tuple[int, int]:
    a, b = x
    c, d = y
    prods = (a * c, a * d, b * c, b * d)
    return min(prods) >> prec, -((-max(prods)) >> prec)


def _iv_sqrt(x: tuple[int, int], prec: int) -> tuple[int, int]:
    lo, hi = x
    lo = max(lo, 0)
    hi = max(hi, 0)
    slo = math.isqrt(lo << prec)
    shi = math.isqrt(hi << prec)
    if shi * shi != hi << prec:
        shi += 1
    return slo, shi


def _to_mpf_bounds(iv: tuple[int, int], prec: int) -> tuple[mpmath.mpf, mpmath.mpf]:
    return mpmath.ldexp(iv[0], -prec), mpmath.ldexp(iv[1], -prec)


def _from_mpf(lo, hi, prec: int) -> tuple[int, int]:
    return int(mpmath.floor(mpmath.ldexp(lo, prec))), int(mpmath.ceil(mpmath.ldexp(hi, prec)))


def _sym_interval(sym: _Sym, prec: int) -> tuple[int, int]:
    hit = sym._iv.get(prec)
    if hit is not None:
        return hit
    if sym.kind in ("sqrt", "tsqrt"):
        iv = _iv_sqrt(_poly_interval(sym.radicand, prec), prec)
    elif sym.kind == "pi":
        iv = _transcendental_interval(lambda: +mpmath.pi, 0, prec)
    elif sym.kind == "atan":
        iv = _atan_interval(sym, prec)
    elif sym.kind == "trig":
        iv = _trig_interval(sym, prec)
    else:  # pragma: no cover
        raise AssertionError(sym.kind)
    if len(sym._iv) > 8:
        sym._iv.clear()
    sym._iv[prec] = iv
    return iv


def _transcendental_interval(fn, spread, prec: int) -> tuple[int, int]:
    # mpmath is accurate to a few ulps at the working precision; 40 guard bits
    # and a 2**-(prec+20) pad keep the enclosure outward.
    with mpmath.workprec(prec + 40):
        v = fn()
        pad = mpmath.ldexp(1, -(prec + 20)) + spread
        return _from_mpf(v - pad, v + pad, prec)


def _atan_interval(sym: _Sym, prec: int) -> tuple[int, int]:
    x, y, lower_half = sym.payload
    p2 = prec + 16
    xi = _poly_interval(x._p, p2)
    yi = _poly_interval(y._p, p2)
    with mpmath.workprec(prec + 40):
        xl, xh = _to_mpf_bounds(xi, p2)
        yl, yh = _to_mpf_bounds(yi, p2)
        xm, ym = (xl + xh) / 2, (yl + yh) / 2
        # |d theta| <= (|dx| + |dy|) / r for any point of the box
        rmin2 = min(abs(xl), abs(xh)) ** 2 + min(abs(yl), abs(yh)) ** 2
        if xl <= 0 <= xh:
            rmin2 = min(abs(yl), abs(yh)) ** 2
        if yl <= 0 <= yh:
            rmin2 = min(rmin2, min(abs(xl), abs(xh)) ** 2)
        rmin = mpmath.sqrt(rmin2) if rmin2 > 0 else mpmath.mpf(0)
        if rmin == 0:
            spread = mpmath.mpf(4)
        else:
            spread = ((xh - xl) + (yh - yl)) / (2 * rmin)

        def value():
            t = mpmath.atan2(ym, xm)
            if lower_half and t > 0:
                t -= 2 * mpmath.pi
            if t < 0:
                t += 2 * mpmath.pi
            return t

        return _transcendental_interval(value, spread, prec)


def _trig_interval(sym: _Sym, prec: int) -> tuple[int, int]:
    func, arg = sym.payload
    p2 = prec + 8
    ai = _poly_interval(arg._p, p2)
    with mpmath.workprec(prec + 40):
        lo, hi = _to_mpf_bounds(ai, p2)
        mid = (lo + hi) / 2
        spread = (hi - lo) / 2  # both sin and cos are 1-Lipschitz
        f = mpmath.sin if func == "sin" else mpmath.cos
        return _transcendental_interval(lambda: f(mid), spread, prec)


def _poly_interval(p: Poly, prec: int) -> tuple[int, int]:
    work = prec + 8 + 2 * max((len(m) for m in p), default=0)
    lo = hi = 0
    for m, c in p.items():
        iv = _iv_const(c, work)
        for s in m:
            iv = _iv_mul(iv, _sym_interval(_SYMS[s], work), work)
        lo += iv[0]
        hi += iv[1]
    shift = work - prec
    return lo >> shift, -((-hi) >> shift)


# ---------------------------------------------------------------------------
# exact sign of algebraic polynomials


def _sign_algebraic(p: Poly) -> int:
    c = _const(p)
    if c is not None:
        return (c > 0) - (c < 0)
    for bits in (_FIRST_PRECISION, 4 * _FIRST_PRECISION):
        lo, hi = _poly_interval(p, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
    s = _top(p)
    a, b = _split(p, s)
    sa = _sign_algebraic(a)
    sb = _sign_algebraic(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a**2 with b**2 * radicand
    t = _add(_mul(a, a), _mul(_mul(b, b), _SYMS[s].radicand), -1)
    return sa * _sign_algebraic(t)


def _sign_by_intervals(p: Poly, max_bits: int) -> int | None:
    bits = _FIRST_PRECISION
    while True:
        lo, hi = _poly_interval(p, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if lo == hi == 0 and _const(p) == 0:
            return 0
        if bits >= max_bits:
            return None
        bits = min(2 * bits, max_bits)


def _inverse(p: Poly) -> Poly:
    c = _const(p)
    if c is not None:
        if not c:
            raise ZeroDivisionError("division by an exact zero")
        return {(): 1 / c}
    if not _is_algebraic(p):
        if len(p) == 1:
            raise NotConstructible("cannot invert a transcendental monomial exactly")
        raise NotConstructible("cannot invert an expression involving pi or angles")
    s = _top(p)
    a, b = _split(p, s)
    den = _add(_mul(a, a), _mul(_mul(b, b), _SYMS[s].radicand), -1)
    if _sign_algebraic(den) == 0:
        # a == b*sqrt(r): p == 2a, unless p itself is zero
        if _sign_algebraic(a) == 0:
            raise ZeroDivisionError("division by an exact zero")
        return _scale(_inverse(a), _Q(1, 2))
    conj = _add(a, _mul(b, {(s,): _Q(1)}), -1)
    return _mul(conj, _inverse(den))


# ---------------------------------------------------------------------------
# square roots


_SMALL_PRIMES: list[int] = []


def _primes(limit: int = 1000) -> list[int]:
    if not _SMALL_PRIMES:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, int(limit**0.5) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _SMALL_PRIMES.extend(i for i in range(limit + 1) if sieve[i])
    return _SMALL_PRIMES


def _square_part(n: int) -> tuple[int, int]:
    """n = s*s*f with f free of small square factors; returns (s, f)."""
    s = 1
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    for p in _primes():
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            s *= p
    r = math.isqrt(n)
    if r * r == n:
        return s * r, 1
    return s, n


def _radical(key_poly: Poly) -> int:
    key = _key(key_poly)
    with _lock:
        sid = _RADICALS.get(key)
        if sid is None:
            sym = _new_symbol("sqrt", dict(key_poly))
            sid = sym.id
            _RADICALS[key] = sid
        return sid


def _content(p: Poly) -> Fraction:
    """Positive rational g such that p/g has coprime integer coefficients."""
    num = 0
    den = 1
    for c in p.values():
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _Q(num, den)


def _sqrt_poly(p: Poly) -> Poly:
    c = _const(p)
    if c is not None:
        if c < 0:
            raise ValueError(f"square root of a negative number {c}")
        if not c:
            return {}
        s, f = _square_part(c.numerator * c.denominator)
        coef = _Q(s, c.denominator)
        if f == 1:
            return {(): coef}
        return {(_radical({(): _Q(f)}),): coef}
    if not _is_algebraic(p):
        lo, hi = _poly_interval(p, _FIRST_PRECISION)
        if hi < 0:
            raise ValueError("square root of a negative number")
        with _lock:
            key = ("tsqrt", _key(p))
            sid = _RADICALS.get(key)
            if sid is None:
                sid = _new_symbol("tsqrt", dict(p)).id
                _RADICALS[key] = sid
        return {(sid,): _Q(1)}
    sg = _sign_algebraic(p)
    if sg < 0:
        raise ValueError("square root of a negative number")
    if sg == 0:
        return {}
    g = _content(p)
    q = _scale(p, 1 / g)
    den = _denest(q)
    if den is None:
        inner: Poly = {(_radical(q),): _Q(1)}
    else:
        inner = den
    return _mul(_sqrt_poly({(): g}), inner)


def _denest(q: Poly) -> Poly | None:
    """sqrt(a + b*sqrt(r)) for rational a, b, r when a*a - b*b*r is a square."""
    if len(q) != 2 or () not in q:
        return None
    (m, b), = [(m, v) for m, v in q.items() if m]
    if len(m) != 1:
        return None
    r = _const(_SYMS[m[0]].radicand)
    if r is None:
        return None
    a = q[()]
    d = a * a - b * b * r
    if d < 0:
        return None
    rt_num = math.isqrt(d.numerator)
    rt_den = math.isqrt(d.denominator)
    if rt_num * rt_num != d.numerator or rt_den * rt_den != d.denominator:
        return None
    t = _Q(rt_num, rt_den)
    x, y = (a + t) / 2, (a - t) / 2
    if x < 0 or y < 0:
        return None
    first = _sqrt_poly({(): x}) if x else {}
    second = _sqrt_poly({(): y}) if y else {}
    return _add(first, second, 1 if b > 0 else -1)


# ---------------------------------------------------------------------------
# public scalar type

Number = Union[int, Fraction, "Scalar", str]


class Scalar:
    """Exact real number: rational polynomial over square roots, pi and angle atoms."""

    __slots__ = ("_p",)

    def __init__(self, value: Number = 0):
        if isinstance(value, Scalar):
            self._p = value._p
            return
        if isinstance(value, str):
            value = _Q(value)
        if isinstance(value, float):
            raise TypeError("floats are not exact; pass a Fraction or a string")
        if isinstance(value, Fraction):
            c = _Q(int(value.numerator), int(value.denominator))
        else:
            c = _Q(value)
        self._p = {(): c} if c else {}

    @classmethod
    def _wrap(cls, p: Poly) -> Scalar:
        s = object.__new__(cls)
        s._p = p
        return s

    # -- arithmetic ---------------------------------------------------------
    # rational operands skip the polynomial machinery
    def __add__(self, other: Number) -> Scalar:
        q = other._p if type(other) is Scalar else _lift(other)._p
        a, b = _const(self._p), _const(q)
        if a is not None and b is not None:
            c = a + b
            return Scalar._wrap({(): c} if c else {})
        return Scalar._wrap(_add(self._p, q))

    __radd__ = __add__

    def __sub__(self, other: Number) -> Scalar:
        q = other._p if type(other) is Scalar else _lift(other)._p
        a, b = _const(self._p), _const(q)
        if a is not None and b is not None:
            c = a - b
            return Scalar._wrap({(): c} if c else {})
        return Scalar._wrap(_add(self._p, q, -1))

    def __rsub__(self, other: Number) -> Scalar:
        return _lift(other) - self

    def __mul__(self, other: Number) -> Scalar:
        q = other._p if type(other) is Scalar else _lift(other)._p
        a, b = _const(self._p), _const(q)
        if a is not None and b is not None:
            c = a * b
            return Scalar._wrap({(): c} if c else {})
        return Scalar._wrap(_mul(self._p, q))

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> Scalar:
        return Scalar._wrap(_mul(self._p, _inverse(_lift(other)._p)))

    def __rtruediv__(self, other: Number) -> Scalar:
        return Scalar._wrap(_mul(_lift(other)._p, _inverse(self._p)))

    def __neg__(self) -> Scalar:
        return Scalar._wrap(_scale(self._p, _Q(-1)))

    def __pos__(self) -> Scalar:
        return self

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return Scalar(1) / (self ** (-n))
        out: Poly = {(): _Q(1)}
        base = self._p
        while n:
            if n & 1:
                out = _mul(out, base)
            n >>= 1
            if n:
                base = _mul(base, base)
        return Scalar._wrap(out)

    def __abs__(self) -> Scalar:
        o = compare(self, ZERO)
        if o is Ordering.UNCERTAIN:
            raise UncertainComparison("sign of value is undecided")
        return -self if o is Ordering.LESS else self

    def sqrt(self) -> Scalar:
        return Scalar._wrap(_sqrt_poly(self._p))

    # -- comparisons --------------------------------------------------------
    def _bool_cmp(self, other: Number, accept: tuple[Ordering, ...]) -> bool:
        o = compare(self, _lift(other))
        if o is Ordering.UNCERTAIN:
            raise UncertainComparison(f"cannot decide {self} vs {other}")
        return o in accept

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (Scalar, int, Fraction, type(_Q()))):
            return NotImplemented
        return self._bool_cmp(other, (Ordering.EQUAL,))

    def __ne__(self, other: object) -> bool:
        if not isinstance(other, (Scalar, int, Fraction, type(_Q()))):
            return NotImplemented
        return not self._bool_cmp(other, (Ordering.EQUAL,))

    def __lt__(self, other: Number) -> bool:
        return self._bool_cmp(other, (Ordering.LESS,))

    def __le__(self, other: Number) -> bool:
        return self._bool_cmp(other, (Ordering.LESS, Ordering.EQUAL))

    def __gt__(self, other: Number) -> bool:
        return self._bool_cmp(other, (Ordering.GREATER,))

    def __ge__(self, other: Number) -> bool:
        return self._bool_cmp(other, (Ordering.GREATER, Ordering.EQUAL))

    __hash__ = None  # equal values may have different representations

    def sign(self) -> int:
        o = compare(self, ZERO)
        if o is Ordering.UNCERTAIN:
            raise UncertainComparison("sign of value is undecided")
        return o.value

    # -- inspection ---------------------------------------------------------
    def is_rational(self) -> bool:
        return _const(self._p) is not None

    def as_fraction(self) -> Fraction:
        c = _const(self._p)
        if c is None:
            raise ValueError(f"{self} is not rational")
        return Fraction(int(c.numerator), int(c.denominator))

    def is_algebraic(self) -> bool:
        return _is_algebraic(self._p)

    def is_zero_form(self) -> bool:
        """True when the expression is identically zero (no evaluation needed)."""
        return not self._p

    def interval(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Outward enclosure [lo, hi] with endpoints on the 2**-bits grid."""
        lo, hi = _poly_interval(self._p, bits)
        return Fraction(int(lo), 1 << bits), Fraction(int(hi), 1 << bits)

    def approx(self, rel_bits: int = 60, abs_bits: int = 64) -> Fraction:
        """Midpoint of an enclosure narrower than 2**-rel_bits relative (or 2**-abs_bits absolute).

        A fixed grid is not enough: tiny coefficients times large radicals
        lose relative accuracy, so the grid is refined until the width fits.
        """
        c = _const(self._p)
        if c is not None:
            return Fraction(int(c.numerator), int(c.denominator))
        bits = abs_bits
        while True:
            lo, hi = self.interval(bits)
            mid = (lo + hi) / 2
            width = hi - lo
            if width * (1 << rel_bits) <= abs(mid) or width * (1 << abs_bits) <= 1 and bits >= 4 * abs_bits:
                return mid
            bits *= 2

    def __float__(self) -> float:
        c = _const(self._p)
        if c is not None:
            return float(c)
        return float(self.approx())

    def decimal(self, digits: int = 12) -> str:
        return _format_decimal(self.approx(abs_bits=int(digits * 3.33) + 16), digits)

    def enclosure(self, digits: int = 12) -> tuple[str, str]:
        """Decimal strings bracketing the value, rounded outward."""
        bits = int(digits * 3.33) + 16
        lo, hi = self.interval(bits)
        q = Fraction(10) ** digits
        lo_d = Fraction(math.floor(lo * q), 1) / q
        hi_d = Fraction(math.ceil(hi * q), 1) / q
        return _format_decimal(lo_d, digits), _format_decimal(hi_d, digits)

    def __str__(self) -> str:
        return _poly_str(self._p)

    def __repr__(self) -> str:
        return f"Scalar({_poly_str(self._p)})"


def _format_decimal(x: Fraction, digits: int) -> str:
    q = 10**digits
    n = round(x * q)
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, q)
    if digits == 0:
        return f"{sign}{whole}"
    s = f"{sign}{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _lift(x: Number) -> Scalar:
    if isinstance(x, Scalar):
        return x
    return Scalar(x)


ZERO = Scalar(0)
ONE = Scalar(1)
PI = Scalar._wrap({(_PI.id,): _Q(1)})


def sqrt(x: Number) -> Scalar:
    return _lift(x).sqrt()


def as_scalar(x: Number) -> Scalar:
    return _lift(x)


# ---------------------------------------------------------------------------
# printing


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _sym_str(s: int) -> str:
    sym = _SYMS[s]
    if sym.text is None:
        if sym.kind == "pi":
            sym.text = "pi"
        elif sym.kind in ("sqrt", "tsqrt"):
            sym.text = f"sqrt({_poly_str(sym.radicand)})"
        elif sym.kind == "atan":
            x, y, _ = sym.payload
            sym.text = f"atan2({y}, {x})"
        else:
            func, arg = sym.payload
            sym.text = f"{func}({arg})"
    return sym.text


def _poly_str(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for m, c in p.items():
        names = sorted(_sym_str(s) for s in m)
        terms.append((len(m), "*".join(names), c))
    terms.sort(key=lambda t: (t[0], t[1]))
    out = []
    for _, names, c in terms:
        neg = c < 0
        a = -c if neg else c
        if not names:
            body = _frac_str(a)
        elif a == 1:
            body = names
        else:
            body = f"{_frac_str(a)}*{names}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# comparison


def compare(x: Number, y: Number) -> Ordering:
    """Order two scalars; UNCERTAIN only when no decision procedure applies."""
    d = _add(_lift(x)._p, _lift(y)._p, -1)
    if not d:
        return Ordering.EQUAL
    cfg = _precision.get()
    c = _const(d)
    if c is not None:
        return Ordering.GREATER if c > 0 else Ordering.LESS
    if _is_algebraic(d):
        if cfg.symbolic:
            return Ordering(_sign_algebraic(d))
        s = _sign_by_intervals(d, cfg.max_bits)
        return Ordering.UNCERTAIN if s is None else Ordering(s)
    # one cheap pass first; a straddling angle form is usually an exact equality
    first = min(cfg.max_bits, _FIRST_PRECISION)
    s = _sign_by_intervals(d, first)
    if s is not None:
        return Ordering(s)
    if cfg.symbolic and _angle_form_is_zero(d, first):
        return Ordering.EQUAL
    s = _sign_by_intervals(d, cfg.max_bits)
    if s is not None:
        return Ordering(s)
    if cfg.symbolic and _angle_form_is_zero(d, cfg.max_bits):
        return Ordering.EQUAL
    return Ordering.UNCERTAIN


def scalar_compare(x: Number, y: Number) -> Ordering:
    return compare(x, y)


def is_equal(x: Number, y: Number) -> Tri:
    o = compare(x, y)
    if o is Ordering.UNCERTAIN:
        return Tri.UNCERTAIN
    return Tri.of(o is Ordering.EQUAL)


# ---------------------------------------------------------------------------
# direction angles and exact trigonometry


def _linear_angle_form(p: Poly) -> tuple[Fraction, dict[int, Fraction], Poly] | None:
    """Split p into (pi coefficient, {atom id: coefficient}, algebraic rest)."""
    q = _Q(0)
    atoms: dict[int, Fraction] = {}
    rest: Poly = {}
    for m, c in p.items():
        trans = [s for s in m if not _SYMS[s].algebraic]
        if not trans:
            rest[m] = c
            continue
        if len(m) != 1:
            return None
        s = m[0]
        kind = _SYMS[s].kind
        if kind == "pi":
            q = c
        elif kind == "atan":
            atoms[s] = c
        else:
            return None
    return q, atoms, rest


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _cmul(u: tuple[Scalar, Scalar], v: tuple[Scalar, Scalar]) -> tuple[Scalar, Scalar]:
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _cpow(u: tuple[Scalar, Scalar], n: int) -> tuple[Scalar, Scalar]:
    if n < 0:
        u = (u[0], -u[1])
        n = -n
    out = (ONE, ZERO)
    while n:
        if n & 1:
            out = _cmul(out, u)
        n >>= 1
        if n:
            u = _cmul(u, u)
    return out


_TWELFTH: tuple[Scalar, Scalar] | None = None


def _twelfth_turn() -> tuple[Scalar, Scalar]:
    """exp(i*pi/12) as exact radicals."""
    global _TWELFTH
    if _TWELFTH is None:
        r2, r6 = sqrt(2), sqrt(2) * sqrt(3)
        _TWELFTH = ((r6 + r2) / 4, (r6 - r2) / 4)
    return _TWELFTH


def _atom_unit(s: int) -> tuple[Scalar, Scalar]:
    x, y, _ = _SYMS[s].payload
    r = (x * x + y * y).sqrt()
    return x / r, y / r


def _exp_i_multiple(q: Fraction, atoms: dict[int, Fraction], mult: int) -> tuple[Scalar, Scalar]:
    """exp(i * mult * (q*pi + sum c*atom)) for integer mult*c and integer 12*mult*q."""
    out = _cpow(_twelfth_turn(), int(12 * mult * q) % 24)
    for s in sorted(atoms):
        out = _cmul(out, _cpow(_atom_unit(s), int(mult * atoms[s])))
    return out


def _denominator_lcm(q: Fraction, atoms: dict[int, Fraction]) -> int:
    m = (12 * q).denominator
    for c in atoms.values():
        m = _lcm(m, c.denominator)
    return m


def _angle_form_is_zero(d: Poly, max_bits: int) -> bool:
    """Exact zero test for q*pi + sum c_i*theta_i whose enclosure straddles 0.

    exp(i*M*v) == 1 puts v on the lattice (2*pi/M)Z; an enclosure narrower
    than that lattice spacing and containing 0 then pins v == 0.
    """
    form = _linear_angle_form(d)
    if form is None:
        return False
    q, atoms, rest = form
    if rest:
        return False
    m = _denominator_lcm(q, atoms)
    if m > 1 << 16:
        return False
    lo, hi = _poly_interval(d, max_bits)
    if not (lo <= 0 <= hi):
        return False
    width = _Q(hi - lo, 1 << max_bits)
    if width * m >= 6:  # 2*pi > 6
        return False
    c, s = _exp_i_multiple(q, atoms, m)
    return compare(c, ONE) is Ordering.EQUAL and compare(s, ZERO) is Ordering.EQUAL


_SPECIAL_TAN: list[tuple[int, Scalar]] | None = None


def _special_tangents() -> list[tuple[int, Scalar]]:
    """(k, tan(k*pi/12)) for k = 1..5, k != 3 handled separately."""
    global _SPECIAL_TAN
    if _SPECIAL_TAN is None:
        r3 = sqrt(3)
        _SPECIAL_TAN = [(1, 2 - r3), (2, r3 / 3), (3, ONE), (4, r3), (5, 2 + r3)]
    return _SPECIAL_TAN


def direction_angle(x: Number, y: Number) -> Scalar:
    """Angle in [0, 2*pi) of the direction (x, y), measured counterclockwise.

    Multiples of pi/12 come back as exact multiples of pi; every other
    direction becomes an interned transcendental atom.
    """
    x, y = _lift(x), _lift(y)
    sx, sy = x.sign(), y.sign()
    if sx == 0 and sy == 0:
        raise ValueError("zero vector has no direction")
    if sy == 0:
        return ZERO if sx > 0 else PI
    if sx == 0:
        return PI / 2 if sy > 0 else PI * _Q(3, 2)
    t = y / x
    ta = abs(t)
    approx = float(ta)
    base = None
    for k, tv in _special_tangents():
        if abs(float(tv) - approx) < 1e-6 and compare(ta, tv) is Ordering.EQUAL:
            base = k
            break
    if base is not None:
        if sx > 0 and sy > 0:
            k = base
        elif sx < 0 and sy > 0:
            k = 12 - base
        elif sx < 0:
            k = 12 + base
        else:
            k = 24 - base
        return PI * _Q(k, 12)
    key = (sx, sy, _key(t._p))
    with _lock:
        sid = _ATOMS.get(key)
        if sid is None:
            sym = _new_symbol("atan", payload=(x, y, sy < 0))
            sid = sym.id
            _ATOMS[key] = sid
    return Scalar._wrap({(sid,): _Q(1)})


def _trig_atom(func: str, arg: Scalar) -> Scalar:
    key = (func, _key(arg._p))
    with _lock:
        sid = _TRIG.get(key)
        if sid is None:
            sid = _new_symbol("trig", payload=(func, arg)).id
            _TRIG[key] = sid
    return Scalar._wrap({(sid,): _Q(1)})


def _quadrant_sign(value: Scalar, func: str) -> int:
    """Sign of cos or sin of an angle value, by interval refinement."""
    bits = _FIRST_PRECISION
    cfg = _precision.get()
    while True:
        lo, hi = value.interval(bits)
        with mpmath.workprec(bits + 20):
            a = mpmath.mpf(lo.numerator) / lo.denominator
            b = mpmath.mpf(hi.numerator) / hi.denominator
            f = mpmath.cos if func == "cos" else mpmath.sin
            # decide only when no zero of f lies in [a, b]
            shift = 0 if func == "sin" else mpmath.pi / 2
            k_lo = mpmath.floor((a - shift) / mpmath.pi)
            k_hi = mpmath.floor((b - shift) / mpmath.pi)
            if k_lo == k_hi and (a - shift) / mpmath.pi > k_lo:
                mid = f((a + b) / 2)
                return 1 if mid > 0 else -1
        if bits >= cfg.max_bits:
            raise UncertainComparison("angle lies too close to a quadrant boundary")
        bits *= 2


def exact_unit(angle: Number) -> tuple[Scalar, Scalar] | None:
    """(cos, sin) of an angle value as exact radicals, or None if not constructible here.

    Handles q*pi + sum c_i*theta_i where every c_i and 12*q have power-of-two
    denominators: the integer multiple is built by complex multiplication and
    then halved with the half-angle formulas.
    """
    v = _lift(angle)
    form = _linear_angle_form(v._p)
    if form is None:
        return None
    q, atoms, rest = form
    if rest:
        return None
    m = _denominator_lcm(q, atoms)
    if m & (m - 1):
        return None
    u = _exp_i_multiple(q, atoms, m)
    while m > 1:
        m //= 2
        half = v * m
        c2, s2 = u
        cm = ((1 + c2) / 2).sqrt()
        sm = ((1 - c2) / 2).sqrt()
        if not cm.is_zero_form() and _quadrant_sign(half, "cos") < 0:
            cm = -cm
        if not sm.is_zero_form() and _quadrant_sign(half, "sin") < 0:
            sm = -sm
        u = (cm, sm)
    return u


def cos_sin(angle: Number) -> tuple[Scalar, Scalar]:
    """(cos, sin) of an angle value: exact when constructible, atoms otherwise."""
    v = _lift(angle)
    exact = exact_unit(v)
    if exact is not None:
        return exact
    return _trig_atom("cos", v), _trig_atom("sin", v)


def registry_size() -> int:
    return len(_SYMS)


def symbols_in(x: Scalar) -> Iterable[str]:
    return sorted({_SYMS[s].kind for m in x._p for s in m})
