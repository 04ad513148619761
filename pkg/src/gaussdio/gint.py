"""Exact arithmetic in the Gaussian integers Z[i]."""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from math import isqrt
from typing import Union

from .highprec import HighPrecReal, ivctx

IntLike = Union[int, "GaussianInt"]


class NotASquare(ValueError):
    """Raised by :func:`gi_sqrt_strict`; :func:`gi_sqrt` returns ``None`` instead."""


def _round_half_away(num: int, den: int) -> int:
    """Nearest integer to num/den (den > 0), ties away from zero."""
    if num >= 0:
        return (2 * num + den) // (2 * den)
    return -((-2 * num + den) // (2 * den))


def _round_half_up(num: int, den: int) -> int:
    """floor(num/den + 1/2) for den > 0; commutes with integer shifts."""
    return (2 * num + den) // (2 * den)


@dataclass(frozen=True, order=False)
class GaussianInt:
    re: int = 0
    im: int = 0

    @classmethod
    def of(cls, z: IntLike) -> "GaussianInt":
        if isinstance(z, GaussianInt):
            return z
        if isinstance(z, bool) or not isinstance(z, int):
            raise TypeError(f"cannot convert {z!r} to GaussianInt")
        return cls(z, 0)

    @classmethod
    def parse(cls, text: str) -> "GaussianInt":
        """Parse the canonical text forms ``a``, ``bi``, ``a+bi``, ``a-bi``."""
        s = text.replace(" ", "").replace("j", "i")
        if not s:
            raise ValueError("empty Gaussian integer literal")
        if s.endswith("i"):
            m = _re.fullmatch(r"([+-]?\d+)?([+-]?\d*)i", s)
            if not m:
                raise ValueError(f"bad Gaussian integer literal: {text!r}")
            real_part, imag_part = m.groups()
            if real_part is not None and imag_part == "":
                # "3i" matched as real_part="3": it is purely imaginary.
                return cls(0, int(real_part))
            if imag_part in ("", "+"):
                im = 1
            elif imag_part == "-":
                im = -1
            else:
                im = int(imag_part)
            return cls(int(real_part) if real_part else 0, im)
        if not _re.fullmatch(r"[+-]?\d+", s):
            raise ValueError(f"bad Gaussian integer literal: {text!r}")
        return cls(int(s), 0)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}i"
        if self.re == 0:
            return imag
        sep = "" if imag.startswith("-") else "+"
        return f"{self.re}{sep}{imag}"

    def __repr__(self) -> str:
        return f"GaussianInt({self})"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, obj: dict) -> "GaussianInt":
        return cls(int(obj["re"]), int(obj["im"]))

    # ring operations
    def __add__(self, other: IntLike) -> "GaussianInt":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> "GaussianInt":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: IntLike) -> "GaussianInt":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: IntLike) -> "GaussianInt":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __pos__(self) -> "GaussianInt":
        return self

    def __pow__(self, n: int) -> "GaussianInt":
        if n < 0:
            raise ValueError("negative powers are not Gaussian integers")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianInt):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def conj(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def sort_key(self) -> tuple[int, int, int]:
        """(norm, re, im): the total order used for deterministic output."""
        return (self.norm(), self.re, self.im)

    def principal(self) -> "GaussianInt":
        """Representative of {z, -z} with re > 0, or re = 0 and im >= 0."""
        if self.re > 0 or (self.re == 0 and self.im >= 0):
            return self
        return -self

    def __divmod__(self, other: IntLike):
        return gi_divrem(self, _coerce_strict(other))

    def __floordiv__(self, other: IntLike) -> "GaussianInt":
        return gi_divrem(self, _coerce_strict(other))[0]

    def __mod__(self, other: IntLike) -> "GaussianInt":
        return gi_divrem(self, _coerce_strict(other))[1]


def _coerce(z) -> GaussianInt | None:
    if isinstance(z, GaussianInt):
        return z
    if isinstance(z, int) and not isinstance(z, bool):
        return GaussianInt(z, 0)
    return None


def _coerce_strict(z) -> GaussianInt:
    g = _coerce(z)
    if g is None:
        raise TypeError(f"expected Gaussian integer, got {z!r}")
    return g


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)


def gi(re: int = 0, im: int = 0) -> GaussianInt:
    return GaussianInt(re, im)


def gi_arith(op: str, lhs: IntLike, rhs: IntLike | None = None) -> GaussianInt:
    lhs = _coerce_strict(lhs)
    if op == "neg":
        return -lhs
    if op == "conj":
        return lhs.conj()
    if rhs is None:
        raise ValueError(f"operation {op!r} needs two operands")
    rhs = _coerce_strict(rhs)
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown operation {op!r}")


def gi_divrem(num: IntLike, den: IntLike) -> tuple[GaussianInt, GaussianInt]:
    """Division with remainder; the quotient rounds each component of num/den
    to the nearest integer, ties away from zero, so norm(rem) <= norm(den)/2."""
    num, den = _coerce_strict(num), _coerce_strict(den)
    n = den.norm()
    if n == 0:
        raise ZeroDivisionError("Gaussian division by zero")
    t = num * den.conj()
    q = GaussianInt(_round_half_away(t.re, n), _round_half_away(t.im, n))
    return q, num - q * den


def gi_mod(num: IntLike, modulus: IntLike) -> GaussianInt:
    """Canonical residue of ``num`` modulo ``modulus``.

    Rounds half up instead of away from zero so that congruent inputs always
    get the same representative and ``gi_mod(gi_mod(x, m), m) == gi_mod(x, m)``.
    """
    num, modulus = _coerce_strict(num), _coerce_strict(modulus)
    n = modulus.norm()
    if n == 0:
        raise ZeroDivisionError("Gaussian division by zero")
    t = num * modulus.conj()
    q = GaussianInt(_round_half_up(t.re, n), _round_half_up(t.im, n))
    return num - q * modulus


def gi_divides(den: IntLike, num: IntLike) -> bool:
    den, num = _coerce_strict(den), _coerce_strict(num)
    n = den.norm()
    if n == 0:
        raise ZeroDivisionError("divisibility by zero is undefined")
    t = num * den.conj()
    return t.re % n == 0 and t.im % n == 0


def exact_quotient(num: IntLike, den: IntLike) -> GaussianInt | None:
    """num/den when it is a Gaussian integer, else None."""
    num, den = _coerce_strict(num), _coerce_strict(den)
    n = den.norm()
    if n == 0:
        raise ZeroDivisionError("Gaussian division by zero")
    t = num * den.conj()
    if t.re % n or t.im % n:
        return None
    return GaussianInt(t.re // n, t.im // n)


def is_square_int(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def gi_sqrt(z: IntLike) -> GaussianInt | None:
    """Principal square root of ``z`` in Z[i], or None if ``z`` is not a square.

    With w = x + iy and w^2 = a + bi we need x^2 + y^2 = |z|, so |z| must be an
    integer n, and then x^2 = (n + a)/2, y^2 = (n - a)/2, sign(xy) = sign(b).
    """
    z = _coerce_strict(z)
    a, b = z.re, z.im
    n2 = a * a + b * b
    n = isqrt(n2)
    if n * n != n2:
        return None
    if (n + a) % 2:
        return None
    x2, y2 = (n + a) // 2, (n - a) // 2
    x, y = isqrt(x2), isqrt(y2)
    if x * x != x2 or y * y != y2:
        return None
    if b < 0:
        y = -y
    w = GaussianInt(x, y)
    if w * w != z:
        return None
    return w.principal()


def gi_sqrt_strict(z: IntLike) -> GaussianInt:
    w = gi_sqrt(z)
    if w is None:
        raise NotASquare(str(z))
    return w


def gi_abs(z: IntLike, precision_bits: int = 128) -> HighPrecReal:
    """|z| = sqrt(norm(z)) as a certified interval.

    Perfect-square norms give a point interval.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    z = _coerce_strict(z)
    n = z.norm()
    # guard bits keep the interval width below |z| * 2^(1 - precision_bits)
    ctx = ivctx(precision_bits + 8)
    r = isqrt(n)
    if r * r == n:
        return HighPrecReal(ctx.mpf(r), precision_bits)
    return HighPrecReal(ctx.sqrt(ctx.mpf(n)), precision_bits)


def sorted_gints(values) -> list[GaussianInt]:
    return sorted(values, key=GaussianInt.sort_key)
