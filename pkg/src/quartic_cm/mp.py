"""Precision handling, exact quadratic field arithmetic and recovery of exact
values (rationals, elements of Q(sqrt(-d)), integer polynomials) from
high-precision numerics."""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath.ctx_mp import MPContext


class NoReconstruction(ValueError):
    pass


class RoundingFailed(ArithmeticError):
    def __init__(self, index, distance):
        super().__init__(f"coefficient {index} is {distance} away from an integer")
        self.index = index
        self.distance = distance


class CertificationFailed(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def _mp_context(bits):
    ctx = MPContext()
    ctx.prec = bits
    return ctx


@dataclass(frozen=True)
class PrecisionContext:
    bits: int = 256
    max_retries: int = 4
    round_tol: float = 2.0 ** -20

    def __post_init__(self):
        if self.bits < 64:
            raise ValueError("bits must be at least 64")
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")
        if not 0 < self.round_tol < 0.5:
            raise ValueError("round_tol must lie in (0, 0.5)")

    @property
    def mp(self):
        # one shared mpmath context per precision; never mutated after creation
        return _mp_context(self.bits)

    @property
    def eps(self):
        """Tolerance 2^(-bits/2) used for numeric identity checks."""
        return self.mp.mpf(2) ** (-(self.bits // 2))

    def doubled(self):
        return PrecisionContext(2 * self.bits, self.max_retries - 1, self.round_tol)

    @classmethod
    def for_discriminant(cls, d, h, **kw):
        return cls(bits=default_bits(d, h), **kw)


def default_bits(d, h):
    return 64 + math.ceil(3.5 * math.sqrt(d) * h)


def with_retries(fn, ctx):
    """Call fn(ctx), doubling the precision on RoundingFailed."""
    while True:
        try:
            return fn(ctx)
        except RoundingFailed:
            if ctx.max_retries <= 0:
                raise
            ctx = ctx.doubled()


def to_fraction(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    sign, man, exp, _ = x._mpf_
    man, exp = (-1) ** sign * int(man), int(exp)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def _convergents(x):
    p0, q0, p1, q1 = 0, 1, 1, 0
    while True:
        a = math.floor(x)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield Fraction(p1, q1)
        frac = x - a
        if frac == 0:
            return
        x = 1 / frac


def _default_tol(x):
    prec = getattr(getattr(x, "context", None), "prec", None)
    if prec is None:
        return Fraction(1, 10 ** 12)
    return Fraction(1, 2 ** (prec // 2)) * max(1, abs(to_fraction(x)))


def reconstruct_rational(x, max_den=10 ** 8, tol=None):
    """Smallest-denominator continued fraction convergent p/q of x with
    q <= max_den and |x - p/q| <= tol."""
    if tol is None:
        tol = _default_tol(x)
    tol = to_fraction(tol) if not isinstance(tol, str) else Fraction(tol)
    if tol <= 0 or max_den < 1:
        raise ValueError("need tol > 0 and max_den >= 1")
    exact = to_fraction(x)
    for c in _convergents(exact):
        if c.denominator > max_den:
            break
        if abs(exact - c) <= tol:
            return c
    raise NoReconstruction(f"no convergent of {float(exact)!r} with denominator <= {max_den}")


class QuadFieldElement:
    """a + b*sqrt(-d) with exact rational a, b."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=1):
        if d <= 0:
            raise ValueError("d must be positive")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QuadFieldElement):
            if other.d != self.d:
                raise ValueError("elements of different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadFieldElement(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadFieldElement(self.a + other.a, self.b + other.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadFieldElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadFieldElement(self.a - other.a, self.b - other.b, self.d)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadFieldElement(self.a * other.a - self.d * self.b * other.b,
                                self.a * other.b + self.b * other.a, self.d)

    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a + self.d * self.b * self.b

    def conjugate(self):
        return QuadFieldElement(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadFieldElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** -n
        result, base = QuadFieldElement(1, 0, self.d), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self):
        return self.b == 0

    def to_complex(self, ctx):
        mp = ctx.mp
        return mp.mpc(mp.mpf(self.a.numerator) / self.a.denominator,
                      mp.sqrt(self.d) * self.b.numerator / self.b.denominator)

    def __repr__(self):
        return f"QuadFieldElement({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        root = "i" if self.d == 1 else f"sqrt(-{self.d})"
        if self.b == 0:
            return str(self.a)
        tail = f"{abs(self.b)}*{root}" if abs(self.b) != 1 else root
        if self.a == 0:
            return ("-" if self.b < 0 else "") + tail
        return f"{self.a} {'-' if self.b < 0 else '+'} {tail}"


def gaussian(a=0, b=0):
    """a + b*i as an element of Q(i)."""
    return QuadFieldElement(a, b, 1)


def recognize_quadratic(z, d, max_den=10 ** 8, tol=None):
    """Recover a + b*sqrt(-d) from a numeric value z."""
    mp = z.context if hasattr(z, "context") else _mp_context(128)
    z = mp.mpc(z)
    a = reconstruct_rational(z.real, max_den, tol)
    b = reconstruct_rational(z.imag / mp.sqrt(d), max_den, tol)
    return QuadFieldElement(a, b, d)


def round_poly_to_int(coeffs, ctx):
    """Round complex coefficients (ascending order) to integers.

    Returns (IntPolynomial, worst distance)."""
    from .poly import IntPolynomial

    mp = ctx.mp
    out = []
    worst, worst_index = mp.mpf(0), None
    for i, c in enumerate(coeffs):
        c = mp.mpc(c)
        n = int(mp.nint(c.real))
        dist = max(abs(c.real - n), abs(c.imag))
        if worst_index is None or dist > worst:
            worst, worst_index = dist, i
        out.append(n)
    if worst_index is not None and worst >= ctx.round_tol:
        raise RoundingFailed(worst_index, float(worst))
    return IntPolynomial(out), float(worst)
