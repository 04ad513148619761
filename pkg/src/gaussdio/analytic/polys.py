"""Exact univariate polynomials and Sturm-sequence root isolation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..highprec import DEFAULT_PRECISION, HighPrecReal, ivctx


class NoRealRoot(ValueError):
    pass


def _trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with exact rational coefficients, lowest degree first."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        object.__setattr__(self, "coeffs", _trim(Fraction(c) for c in coeffs))

    @classmethod
    def from_high(cls, *coeffs) -> "IntPolynomial":
        """Build from coefficients listed highest degree first."""
        return cls(list(reversed(coeffs)))

    @classmethod
    def t(cls) -> "IntPolynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_interval(self, x, prec: int = DEFAULT_PRECISION):
        """Horner evaluation on an mpmath interval."""
        ctx = ivctx(prec)
        acc = ctx.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + ctx.mpf(c.numerator) / c.denominator
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = IntPolynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "IntPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        while len(rem) - 1 >= d and any(rem):
            shift = len(rem) - 1 - d
            f = rem[-1] / other.lead
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[i + shift] -= f * c
            rem = list(_trim(rem))
        return IntPolynomial(q), IntPolynomial(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "IntPolynomial":
        return IntPolynomial([c / self.lead for c in self.coeffs])

    def gcd(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def squarefree(self) -> "IntPolynomial":
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self
        return self.divmod(g)[0]

    def cauchy_bound(self) -> Fraction:
        """Every complex root has absolute value below this bound."""
        lead = abs(self.lead)
        return 1 + max((abs(c) / lead for c in self.coeffs[:-1]), default=Fraction(0))

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c:
                terms.append(f"{c}*t^{i}" if i > 1 else (f"{c}*t" if i == 1 else f"{c}"))
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {"coeffs_low_to_high": [str(c) for c in self.coeffs]}


def _as_poly(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    return IntPolynomial([x])


def sturm_sequence(p: IntPolynomial) -> list[IntPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(seq, x) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_roots(p: IntPolynomial, lo, hi, seq=None) -> int:
    """Distinct real roots in (lo, hi] by Sturm's theorem."""
    seq = seq or sturm_sequence(p)
    return _variations(seq, Fraction(lo)) - _variations(seq, Fraction(hi))


def isolate_largest_root_exact(p: IntPolynomial, tol=Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
    """Rational bracket (lo, hi] of width <= tol around the largest real root."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    q = p.squarefree()
    seq = sturm_sequence(q)
    bound = q.cauchy_bound()
    lo, hi = -bound, bound
    if count_roots(q, lo, hi, seq) == 0:
        raise NoRealRoot(str(p))
    tol = Fraction(tol)
    # shrink so (lo, hi] holds exactly the largest root
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if count_roots(q, mid, hi, seq) >= 1:
            lo = mid
        else:
            hi = mid
    return lo, hi


def isolate_largest_root(poly: IntPolynomial, tol=1e-12,
                         precision_bits: int = DEFAULT_PRECISION) -> HighPrecReal:
    """Largest real root as a certified interval of width <= tol."""
    tol = Fraction(tol) if not isinstance(tol, HighPrecReal) else Fraction(str(tol.value))
    lo, hi = isolate_largest_root_exact(poly, tol)
    return fraction_interval(lo, hi, precision_bits)


def fraction_interval(lo: Fraction, hi: Fraction, precision_bits: int = DEFAULT_PRECISION) -> HighPrecReal:
    ctx = ivctx(precision_bits)
    a = ctx.mpf(lo.numerator) / lo.denominator
    b = ctx.mpf(hi.numerator) / hi.denominator
    return HighPrecReal(ctx.mpf([a.a, b.b]), precision_bits)


def sign_beyond_largest_root(p: IntPolynomial) -> int:
    """Sign of p on (largest real root, infinity)."""
    return _sign(p.lead)


def all_real_roots(p: IntPolynomial, tol=Fraction(1, 10**12)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational brackets (lo, hi], one per distinct real root, ascending."""
    q = p.squarefree()
    seq = sturm_sequence(q)
    bound = q.cauchy_bound()
    out = []

    def split(lo, hi, n):
        if n == 0:
            return
        if n == 1 and hi - lo <= tol:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        left = count_roots(q, lo, mid, seq)
        split(lo, mid, left)
        split(mid, hi, n - left)

    split(-bound, bound, count_roots(q, -bound, bound, seq))
    return out


# ---- polynomials over Q(sqrt 5) -----------------------------------------

@dataclass(frozen=True, eq=False)
class QSqrt5Polynomial:
    """p0(t) + sqrt(5) * p1(t) with rational polynomials p0, p1."""

    p0: IntPolynomial
    p1: IntPolynomial

    @classmethod
    def of(cls, x) -> "QSqrt5Polynomial":
        if isinstance(x, QSqrt5Polynomial):
            return x
        return cls(_as_poly(x), IntPolynomial([]))

    def __add__(self, other):
        o = QSqrt5Polynomial.of(other)
        return QSqrt5Polynomial(self.p0 + o.p0, self.p1 + o.p1)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt5Polynomial(-self.p0, -self.p1)

    def __sub__(self, other):
        return self + (-QSqrt5Polynomial.of(other))

    def __mul__(self, other):
        o = QSqrt5Polynomial.of(other)
        return QSqrt5Polynomial(self.p0 * o.p0 + 5 * (self.p1 * o.p1),
                                self.p0 * o.p1 + self.p1 * o.p0)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QSqrt5Polynomial):
            return NotImplemented
        return self.p0 == other.p0 and self.p1 == other.p1

    def __hash__(self):
        return hash((self.p0, self.p1))

    def norm(self) -> IntPolynomial:
        """p * conj(p) = p0^2 - 5 p1^2, a rational polynomial."""
        return self.p0 * self.p0 - 5 * (self.p1 * self.p1)

    def eval_interval(self, x, prec: int = DEFAULT_PRECISION, conjugate: bool = False):
        ctx = ivctx(prec)
        r5 = ctx.sqrt(ctx.mpf(5))
        v1 = self.p1.eval_interval(x, prec)
        return self.p0.eval_interval(x, prec) + (-r5 if conjugate else r5) * v1

    @property
    def lead_sign(self) -> int:
        import mpmath

        d = max(self.p0.degree, self.p1.degree)
        c0 = self.p0.coeffs[d] if self.p0.degree >= d else 0
        c1 = self.p1.coeffs[d] if self.p1.degree >= d else 0
        v = mpmath.mpf(c0.numerator if c0 else 0) / (c0.denominator if c0 else 1) + \
            mpmath.sqrt(5) * (mpmath.mpf(c1.numerator if c1 else 0) / (c1.denominator if c1 else 1))
        return _sign(v)

    def to_json(self) -> dict:
        return {"rational_part": self.p0.to_json(), "sqrt5_part": self.p1.to_json()}


def isolate_largest_root_qsqrt5(p: QSqrt5Polynomial, tol=Fraction(1, 10**12),
                                precision_bits: int = DEFAULT_PRECISION) -> HighPrecReal:
    """Largest real root of p0 + sqrt5*p1.

    Roots of the norm are roots of p or of its conjugate; each bracket is
    attributed by checking that the conjugate is bounded away from zero on it.
    """
    brackets = all_real_roots(p.norm(), Fraction(tol))
    for lo, hi in reversed(brackets):
        box = fraction_interval(lo, hi, precision_bits).iv
        conj = p.eval_interval(box, precision_bits, conjugate=True)
        own = p.eval_interval(box, precision_bits)
        conj_nonzero = (conj > 0) is True or (conj < 0) is True
        own_nonzero = (own > 0) is True or (own < 0) is True
        if conj_nonzero and not own_nonzero:
            return fraction_interval(lo, hi, precision_bits)
        if own_nonzero and not conj_nonzero:
            continue
        raise ArithmeticError("cannot attribute a root of the norm; refine tol")
    raise NoRealRoot("no real root of the Q(sqrt5) polynomial")
