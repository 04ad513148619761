"""Certified high-precision reals and complexes on top of mpmath intervals.

Every quantity carries an enclosing interval computed with outward rounding,
so comparisons are either decided with certainty or reported as undecided.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, TypeVar

import mpmath

DEFAULT_PRECISION = 128
MAX_PRECISION = 8192

T = TypeVar("T")


class PrecisionExhausted(ArithmeticError):
    """An interval comparison could not be decided at the available precision."""


@lru_cache(maxsize=None)
def ivctx(prec: int):
    """Return a private interval context fixed at ``prec`` bits.

    Contexts are never mutated after creation, so sharing them between
    threads is safe.
    """
    if prec < 2:
        raise ValueError("precision must be at least 2 bits")
    ctx = type(mpmath.iv)()
    ctx.prec = prec
    return ctx


def _endpoint(x) -> mpmath.mpf:
    return mpmath.mp.make_mpf(x)


@dataclass(frozen=True)
class HighPrecReal:
    """A real number known to lie in ``[lo, hi]``.

    ``value`` is the midpoint and ``error`` the interval width, which bounds
    the absolute error of ``value`` from above.
    """

    iv: object
    prec: int

    @classmethod
    def exact(cls, q, prec: int = DEFAULT_PRECISION) -> "HighPrecReal":
        ctx = ivctx(prec)
        if hasattr(q, "numerator") and hasattr(q, "denominator"):
            return cls(ctx.mpf(q.numerator) / q.denominator, prec)
        return cls(ctx.mpf(q), prec)

    @property
    def lo(self) -> mpmath.mpf:
        return _endpoint(self.iv._mpi_[0])

    @property
    def hi(self) -> mpmath.mpf:
        return _endpoint(self.iv._mpi_[1])

    @property
    def value(self) -> mpmath.mpf:
        with mpmath.workprec(self.prec + 10):
            return (self.lo + self.hi) / 2

    @property
    def error(self) -> mpmath.mpf:
        with mpmath.workprec(self.prec + 10):
            return self.hi - self.lo

    def log10(self) -> "HighPrecReal":
        ctx = ivctx(self.prec)
        return HighPrecReal(ctx.log(self.iv) / ctx.log(10), self.prec)

    def __float__(self) -> float:
        return float(self.value)

    # Certified comparisons: True/False when decided, None when the
    # enclosures overlap.
    def lt(self, other) -> bool | None:
        return _cmp(self, other, "lt")

    def le(self, other) -> bool | None:
        return _cmp(self, other, "le")

    def gt(self, other) -> bool | None:
        return _cmp(self, other, "gt")

    def ge(self, other) -> bool | None:
        return _cmp(self, other, "ge")

    def contains(self, x) -> bool:
        x = mpmath.mpf(x)
        return bool(self.lo <= x <= self.hi)

    def to_json(self, digits: int = 20) -> dict:
        return {
            "value": mpmath.nstr(self.value, digits),
            "error": mpmath.nstr(self.error, 3),
        }

    def __repr__(self) -> str:
        return f"HighPrecReal({mpmath.nstr(self.value, 15)} ± {mpmath.nstr(self.error, 3)})"


def _bounds(x):
    if isinstance(x, HighPrecReal):
        return x.lo, x.hi
    v = mpmath.mpf(x)
    return v, v


def _cmp(a, b, op: str) -> bool | None:
    alo, ahi = _bounds(a)
    blo, bhi = _bounds(b)
    if op == "lt":
        if ahi < blo:
            return True
        if alo >= bhi:
            return False
    elif op == "le":
        if ahi <= blo:
            return True
        if alo > bhi:
            return False
    elif op == "gt":
        return _cmp(b, a, "lt")
    elif op == "ge":
        return _cmp(b, a, "le")
    return None


@dataclass(frozen=True)
class HighPrecComplex:
    """Rectangular complex interval ``re + i*im``."""

    re: object
    im: object
    prec: int

    @classmethod
    def from_gint(cls, z, prec: int) -> "HighPrecComplex":
        ctx = ivctx(prec)
        return cls(ctx.mpf(z.re), ctx.mpf(z.im), prec)

    def __add__(self, other: "HighPrecComplex") -> "HighPrecComplex":
        return HighPrecComplex(self.re + other.re, self.im + other.im, self.prec)

    def __sub__(self, other: "HighPrecComplex") -> "HighPrecComplex":
        return HighPrecComplex(self.re - other.re, self.im - other.im, self.prec)

    def __neg__(self) -> "HighPrecComplex":
        return HighPrecComplex(-self.re, -self.im, self.prec)

    def __mul__(self, other: "HighPrecComplex") -> "HighPrecComplex":
        return HighPrecComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.prec,
        )

    def scale(self, r) -> "HighPrecComplex":
        return HighPrecComplex(self.re * r, self.im * r, self.prec)

    def conj(self) -> "HighPrecComplex":
        return HighPrecComplex(self.re, -self.im, self.prec)

    def norm(self):
        # x**2 keeps a zero-straddling interval nonnegative, x*x does not
        return self.re ** 2 + self.im ** 2

    def abs(self) -> HighPrecReal:
        ctx = ivctx(self.prec)
        return HighPrecReal(ctx.sqrt(self.norm()), self.prec)

    def __truediv__(self, other: "HighPrecComplex") -> "HighPrecComplex":
        n = other.norm()
        num = self * other.conj()
        return HighPrecComplex(num.re / n, num.im / n, self.prec)


def sqrt_gint(z, prec: int) -> HighPrecComplex:
    """Principal square root of an exact Gaussian integer as a complex interval.

    Uses sqrt(z) = sqrt((|z|+re)/2) + i*sign(im)*sqrt((|z|-re)/2), which is
    exact in the branch (re > 0, or re = 0 and im >= 0) because the sign of
    ``im`` is known exactly.
    """
    ctx = ivctx(prec)
    re, im = ctx.mpf(z.re), ctx.mpf(z.im)
    r = ctx.sqrt(re * re + im * im)
    if z.im == 0:
        if z.re >= 0:
            return HighPrecComplex(ctx.sqrt(re), ctx.mpf(0), prec)
        return HighPrecComplex(ctx.mpf(0), ctx.sqrt(-re), prec)
    # Clamp tiny negative lower bounds produced by outward rounding.
    x2 = (r + re) / 2
    y2 = (r - re) / 2
    x = ctx.sqrt(ctx.mpf([max(_endpoint(x2._mpi_[0]), 0), _endpoint(x2._mpi_[1])]))
    y = ctx.sqrt(ctx.mpf([max(_endpoint(y2._mpi_[0]), 0), _endpoint(y2._mpi_[1])]))
    if z.im < 0:
        y = -y
    return HighPrecComplex(x, y, prec)


def escalate(fn: Callable[[int], T], start: int = DEFAULT_PRECISION,
             limit: int = MAX_PRECISION) -> T:
    """Call ``fn(prec)`` doubling ``prec`` until it stops raising PrecisionExhausted."""
    prec = start
    while True:
        try:
            return fn(prec)
        except PrecisionExhausted:
            if prec >= limit:
                raise
            prec = min(2 * prec, limit)


def decide(flag: bool | None, what: str) -> bool:
    """Turn an undecided comparison into PrecisionExhausted."""
    if flag is None:
        raise PrecisionExhausted(what)
    return flag
