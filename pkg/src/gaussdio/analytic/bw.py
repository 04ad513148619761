"""Constants of the Baker-Wüstholz lower bound for the linear form Gamma and
the resulting size threshold on |k|."""

from __future__ import annotations

import math
from fractions import Fraction


from ..highprec import DEFAULT_PRECISION, HighPrecReal, PrecisionExhausted, decide, ivctx
from ..reports import FAIL, PASS, Report, combine
from .linform import k_constant

# 18 * (n+1)! * n^(n+1) * (32 d)^(n+2) with n = 3 logarithms and d = 2048,
# times the product of the three h' bounds (7 log|k|)^3 -> 343
K_PRIME_INTEGER = 18 * 24 * 3**4 * (32 * 2048) ** 5 * 343
K_PRIME_LOG_ARG = 6 * 2048
PRINTED_K_PRIME = Fraction(13663, 10**4) * 10**32
PRINTED_HALF = Fraction(6831506, 10**6) * 10**31
PRINTED_LOG_K = Fraction(-47325, 10**5)
CLAIMED_THRESHOLD = 5 * 10**37


def k_prime(prec: int = DEFAULT_PRECISION) -> HighPrecReal:
    ctx = ivctx(prec)
    return HighPrecReal(ctx.mpf(K_PRIME_INTEGER) * ctx.log(ctx.mpf(K_PRIME_LOG_ARG)), prec)


def _iv(q, ctx):
    q = Fraction(q)
    return ctx.mpf(q.numerator) / q.denominator


def excess(t, const, prec: int = DEFAULT_PRECISION):
    """t - 1 - const * log(t)^2 * log(6t - 1) as an interval; positive means
    |k| - 1 < const log^2|k| log(6|k|-1) is violated at |k| = t."""
    ctx = ivctx(prec)
    t = _iv(t, ctx) if not hasattr(t, "a") else t
    c = _iv(const, ctx)
    return t - 1 - c * ctx.log(t) ** 2 * ctx.log(6 * t - 1)


def _decreasing_ratio_from(t0, prec) -> bool:
    """const*log^2 t*log(6t-1)/(t-1) decreases on [t0, inf) if
    2/log t0 + 1.01/log(6 t0 - 1) < 1 (for t0 >= 17)."""
    ctx = ivctx(prec)
    t = _iv(t0, ctx)
    return decide(2 / ctx.log(t) + ctx.mpf(101) / 100 / ctx.log(6 * t - 1) < 1, "monotonicity")


def crossing_point(const=PRINTED_HALF, prec: int = DEFAULT_PRECISION, rel_tol=Fraction(1, 10**9)):
    """Integer bracket [lo, hi] of the largest sign change of excess(t):
    excess(lo) < 0 < excess(hi), and excess stays positive beyond hi."""
    lo, hi = 17, 10**60
    if not decide(excess(lo, const, prec) < 0, "excess at lo"):
        raise ArithmeticError("expected a negative excess at the lower end")
    if not decide(excess(hi, const, prec) > 0, "excess at hi"):
        raise ArithmeticError("expected a positive excess at the upper end")
    while hi - lo > 1 and Fraction(hi, lo) > 1 + rel_tol:
        # geometric steps while the bracket spans orders of magnitude
        mid = math.isqrt(lo * hi) if hi > 4 * lo else (lo + hi) // 2
        e = excess(mid, const, prec)
        if (e > 0) is True:
            hi = mid
        elif (e < 0) is True:
            lo = mid
        else:
            raise PrecisionExhausted("excess sign undecided during bisection")
    return lo, hi


def bw_threshold(prec: int = DEFAULT_PRECISION) -> Report:
    ctx = ivctx(prec)
    kp = k_prime(prec)
    half = HighPrecReal(kp.iv / 2, prec)
    logk = HighPrecReal(ctx.log(k_constant(prec).iv), prec)
    rel = abs(kp.iv - _iv(PRINTED_K_PRIME, ctx)) / _iv(PRINTED_K_PRIME, ctx)
    rel_half = abs(half.iv - _iv(PRINTED_HALF, ctx)) / _iv(PRINTED_HALF, ctx)
    lo, hi = crossing_point(PRINTED_HALF, prec)
    at_claim = excess(Fraction(CLAIMED_THRESHOLD), PRINTED_HALF, prec)
    # the same with the computed K'/2 instead of the rounded constant
    lo2, hi2 = crossing_point(Fraction(str(half.hi)), prec)
    checks = {
        "k_prime_within_0.01pct": decide(rel < ctx.mpf(1) / 10**4, "K' rel"),
        "half_k_prime_matches_printed": decide(rel_half < ctx.mpf(1) / 10**5, "K'/2 rel"),
        "log_k_matches_printed": decide(abs(logk.iv - _iv(PRINTED_LOG_K, ctx)) < ctx.mpf(1) / 1000,
                                        "log K"),
        "crossing_below_claim": hi < CLAIMED_THRESHOLD,
        "violated_at_claim": decide(at_claim > 0, "excess at claim"),
        "monotone_beyond_crossing": _decreasing_ratio_from(hi, prec),
        "computed_constant_crossing_below_claim": hi2 < CLAIMED_THRESHOLD,
    }
    wit = {
        "checks": checks,
        "k_prime": kp, "k_prime_exact_form": f"{K_PRIME_INTEGER} * log({K_PRIME_LOG_ARG})",
        "half_k_prime": half, "log_K": logk,
        "crossing_bracket": [HighPrecReal.exact(lo, prec), HighPrecReal.exact(hi, prec)],
        "crossing_bracket_computed_constant": [HighPrecReal.exact(lo2, prec),
                                                 HighPrecReal.exact(hi2, prec)],
        "excess_at_claim": HighPrecReal(at_claim, prec),
    }
    return Report("bw-threshold", "Baker-Wüstholz constants and the |k| threshold", {},
                  combine(PASS if v else FAIL for v in checks.values()), wit)
