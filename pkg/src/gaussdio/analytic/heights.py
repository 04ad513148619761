"""Minimal polynomials, Weil heights and conjugate bounds for the three
algebraic numbers of the linear form Gamma."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from ..errors import PreconditionError
from ..gint import GaussianInt, IntLike
from ..highprec import DEFAULT_PRECISION, HighPrecComplex, HighPrecReal, decide, escalate, ivctx
from ..reports import FAIL, PASS, UNDECIDED, Report, combine
from ..tuples import check_k, family_triple
from .linform import _gamma_roots


def p1_coefficients(k: IntLike) -> list[int]:
    """Even coefficients [x^0, x^2, x^4, x^6, x^8] of the minimal polynomial of |k+sqrt(k^2-1)|."""
    k = GaussianInt.of(k)
    mu, nu = k.re, k.im
    n = mu * mu + nu * nu
    return [1, -4 * n, 8 * mu * mu - 8 * nu * nu - 2, -4 * n, 1]


def p2_coefficients(k: IntLike, printed: bool = False) -> list[int]:
    """Even coefficients of the degree-8 polynomial of |s+sqrt(ac)|.

    ``printed=True`` reproduces the variant whose x^2 term carries 4*nu
    instead of 4*mu; it is not palindromic unless mu = nu.
    """
    k = GaussianInt.of(k)
    mu, nu = k.re, k.im
    n = mu * mu + nu * nu
    head = (16 * n - 16 * mu - 4) * n + 16 * nu * nu
    a6 = head + 4 * mu + 1
    a2 = head + 4 * (nu if printed else mu) + 1
    b = ((128 * mu**4 - 128 * mu**3 - 32 * mu**2 + 32 * mu + 6)
         + (-768 * mu**2 + 384 * mu + 32) * nu**2 + 128 * nu**4)
    return [1, -4 * a2, b, -4 * a6, 1]


def p2_from_factorization(k: IntLike) -> list[int]:
    """p2 rebuilt as (x^4 - 2(|s|^2+|ac|)x^2 + 1)(x^4 - 2(|s|^2-|ac|)x^2 + 1).

    Multiplying out gives integer coefficients in norm(s) and norm(ac) only.
    """
    fam = family_triple(k)
    ns, nac = fam.s.norm(), (fam.a * fam.c).norm()
    return [1, -4 * ns, 2 + 4 * ns * ns - 4 * nac, -4 * ns, 1]


def _even_eval(coeffs, x):
    x2 = x ** 2
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x2 + c
    return acc


def _larger_unit(base: GaussianInt, root: HighPrecComplex, prec: int) -> HighPrecReal:
    b = HighPrecComplex.from_gint(base, prec)
    u, v = (b + root).abs(), (b - root).abs()
    return u if decide(u.ge(v), "unit modulus") else v


def _unit_roots_of_second_factor(fam, prec):
    """|x| for the four roots of x^4 - 2D x^2 + 1, D = |s|^2 - |ac|."""
    ctx = ivctx(prec)
    D = ctx.mpf(fam.s.norm()) - ctx.sqrt(ctx.mpf((fam.a * fam.c).norm()))
    one_minus = 1 - D * D
    lo = max(one_minus.a, 0)
    im = ctx.sqrt(ctx.mpf([lo, max(one_minus.b, lo)]))
    # x^2 = D +- i sqrt(1-D^2); |x| = |x^2|^(1/2)
    mag = ctx.sqrt(ctx.sqrt(D * D + im * im))
    return [HighPrecReal(mag, prec)] * 4


def unit_disk_exact(k: IntLike) -> bool:
    """|D| <= 1 in exact integers: (|s|^2-1)^2 <= |ac|^2 <= (|s|^2+1)^2."""
    fam = family_triple(k)
    ns, nac = fam.s.norm(), (fam.a * fam.c).norm()
    return (ns - 1) ** 2 <= nac <= (ns + 1) ** 2


@dataclass(frozen=True)
class HeightReport:
    k: GaussianInt
    x1: GaussianInt
    z1: GaussianInt
    alpha1: HighPrecReal
    alpha2: HighPrecReal
    alpha3: HighPrecReal
    p1: list
    p2: list
    p2_printed: list
    q_coefficients: list
    h_bounds: dict
    checks: dict

    def to_json(self) -> dict:
        return {
            "k": self.k, "x1": self.x1, "z1": self.z1,
            "alpha1": self.alpha1.to_json(), "alpha2": self.alpha2.to_json(),
            "alpha3": self.alpha3.to_json(),
            "p1_even_coeffs": [str(c) for c in self.p1],
            "p2_even_coeffs": [str(c) for c in self.p2],
            "p2_printed_even_coeffs": [str(c) for c in self.p2_printed],
            "q_coefficients": self.q_coefficients,
            "h_bounds": {k: v for k, v in self.h_bounds.items()},
            "checks": self.checks,
        }


def alpha3_value(fam, x1, z1, prec) -> HighPrecReal:
    rt = _gamma_roots(fam, prec)
    X, Z = HighPrecComplex.from_gint(x1, prec), HighPrecComplex.from_gint(z1, prec)
    return (rt.sc * (rt.sa + rt.sb) / (rt.sb * (X * rt.sc + Z * rt.sa))).abs()


def _heights(k: GaussianInt, x1, z1, prec):
    ctx = ivctx(prec)
    fam = family_triple(k)
    H = lambda v: HighPrecReal(v, prec)
    ka = ctx.sqrt(ctx.mpf(k.norm()))
    rt = _gamma_roots(fam, prec)
    from ..highprec import sqrt_gint

    alpha1 = _larger_unit(k, sqrt_gint(k * k - 1, prec), prec)
    alpha2 = _larger_unit(fam.s, rt.sa * rt.sc, prec)
    alpha3 = alpha3_value(fam, x1, z1, prec)

    p1 = p1_coefficients(k)
    p2 = p2_coefficients(k)
    # residuals relative to alpha^8, the size of the leading term
    r1 = abs(_even_eval(p1, alpha1.iv)) / alpha1.iv ** 8
    r2 = abs(_even_eval(p2, alpha2.iv)) / alpha2.iv ** 8
    tiny = ctx.mpf(2) ** -100

    # Mahler measure of p1 from the roots of w^2 - 4Nw + 8(mu^2-nu^2) - 4
    w1 = 2 * ctx.mpf(k.norm()) + 2 * ctx.sqrt(ctx.mpf((k * k - 1).norm()))
    r_sq = (w1 + ctx.sqrt(w1 * w1 - 4)) / 2
    mahler1 = r_sq
    h1 = ctx.log(mahler1) / 8
    h1_bound = ctx.log(2 * ka + 1) / 4
    unit_mags = _unit_roots_of_second_factor(fam, prec)
    mahler2 = alpha2.iv ** 2
    h2 = ctx.log(mahler2) / 8
    h2_bound = ctx.log(3 * ka) / 2
    h3_bound = ctx.log(ctx.mpf(257)) / 2 + ctx.mpf(193) / 32 * ctx.log(ka)

    checks = {
        "p1_vanishes_at_alpha1": decide(r1 < tiny, "p1 residual"),
        "p2_vanishes_at_alpha2": decide(r2 < tiny, "p2 residual"),
        "p2_matches_factorization": p2 == p2_from_factorization(k),
        "p2_printed_matches": p2_coefficients(k, printed=True) == p2,
        "p2_unit_roots_exact": unit_disk_exact(k),
        "p2_unit_roots_numeric": all(decide(abs(m.iv - 1) < ctx.mpf(2) ** -80, "unit root")
                                     for m in unit_mags),
        "mahler_p1_equals_alpha1_squared": decide(abs(mahler1 - alpha1.iv ** 2) <
                                                  ctx.mpf(2) ** -80 * mahler1, "mahler p1"),
        "h1_le_bound": decide(h1 <= h1_bound, "h1"),
        "h2_le_bound": decide(h2 <= h2_bound, "h2"),
    }
    hb = {
        "h_alpha1": H(h1), "h_alpha1_bound": H(h1_bound),
        "h_alpha2": H(h2), "h_alpha2_bound": H(h2_bound),
        "h_alpha3_bound": H(h3_bound),
        "half_log_257": H(ctx.log(ctx.mpf(257)) / 2),
    }
    return alpha1, alpha2, alpha3, p1, p2, checks, hb, unit_mags


def minpoly_and_heights(k: IntLike, x1: IntLike = 1, z1: IntLike = 1,
                        precision_bits: int = DEFAULT_PRECISION) -> HeightReport:
    k = check_k(k)
    x1, z1 = GaussianInt.of(x1), GaussianInt.of(z1)
    _require_class(k, x1, z1)
    a1, a2, a3, p1, p2, checks, hb, _ = escalate(lambda p: _heights(k, x1, z1, p), precision_bits)
    q = escalate(lambda p: _q_coeffs(family_triple(k), x1, z1, p), precision_bits)
    qj = [{"name": f"q{i + 1}", "x2_coeff": HighPrecReal(2 * b, q[1]).to_json(),
           "free_coeff": HighPrecReal(c, q[1]).to_json()} for i, (b, c) in enumerate(q[0])]
    return HeightReport(k, x1, z1, a1, a2, a3, p1, p2, p2_coefficients(k, printed=True), qj, hb,
                        checks)


def heights_report(k: IntLike, x1=1, z1=1, precision_bits: int = DEFAULT_PRECISION) -> Report:
    hr = minpoly_and_heights(k, x1, z1, precision_bits)
    relevant = [v for name, v in hr.checks.items() if name != "p2_printed_matches"]
    return Report("minpoly-heights", "minimal polynomials and height bounds",
                  {"k": hr.k, "x1": hr.x1, "z1": hr.z1},
                  combine(PASS if v else FAIL for v in relevant), hr)


def _require_class(k, x1, z1):
    fam = family_triple(k)
    if fam.a * z1 * z1 - fam.c * x1 * x1 != fam.a - fam.c:
        raise PreconditionError(f"({x1}, {z1}) does not solve (k-1) z^2 - c x^2 = k-1-c")


def leading_coefficient_claim(k: IntLike, x1=1, z1=1) -> dict:
    """|a_d| bound: (sqrt(|k|+1)(|x1| sqrt(16|k|^3+4|k|) + |z1| sqrt(|k|+1)))^32 < 257^16 |k|^65.

    Compared in logarithms at 60 digits; the margin is large either way.
    """
    k, x1, z1 = (GaussianInt.of(v) for v in (k, x1, z1))
    with mpmath.workdps(60):
        ka = mpmath.sqrt(k.norm())
        base = mpmath.sqrt(ka + 1) * (mpmath.sqrt(x1.norm()) * mpmath.sqrt(16 * ka**3 + 4 * ka)
                                      + mpmath.sqrt(z1.norm()) * mpmath.sqrt(ka + 1))
        lhs = 32 * mpmath.log(base)
        rhs = 16 * mpmath.log(257) + 65 * mpmath.log(ka)
        return {"log_lhs": mpmath.nstr(lhs, 15), "log_rhs": mpmath.nstr(rhs, 15),
                "holds": bool(lhs < rhs)}


# ---- conjugates of alpha3 -----------------------------------------------

def _q_coeffs(fam, x1, z1, prec, printed: bool = False):
    """(B, C) for q_i(x) = x^4 - 2B x^2 + C, i = 1..6, as real intervals.

    ``printed=True`` uses (sqrt b - sqrt a) in the free coefficient of q3,
    which breaks agreement with the Galois-orbit route.
    """
    ctx = ivctx(prec)
    rt = _gamma_roots(fam, prec)
    C_ = lambda z: HighPrecComplex.from_gint(GaussianInt.of(z), prec)
    sa, sb, sc = rt.sa, rt.sb, rt.sc
    a, b, c = C_(fam.a), C_(fam.b), C_(fam.c)
    X, Z = C_(x1), C_(z1)
    D1 = X * sc + Z * sa
    D2 = X * sc - Z * sa
    A_, B_ = ctx.sqrt(ctx.mpf(fam.a.norm())), ctx.sqrt(ctx.mpf(fam.b.norm()))
    ba, ca = b - a, c - a
    cx = ctx.sqrt(ctx.mpf((fam.c * x1 * x1).norm()))
    az = ctx.sqrt(ctx.mpf((fam.a * z1 * z1).norm()))
    out = []
    for D in (D1, D2):
        out.append(((c / (b * D * D)).abs().iv * (B_ - A_),
                    (c * ba / (b * D * D)).abs().iv ** 2))
    plus, minus = sb + sa, sb - sa
    # free coefficient of the (sqrt b + sqrt a) factor uses the same factor
    for f in (plus, minus):
        g = minus if printed else f
        out.append(((c * f * f / (b * ca * ca)).abs().iv * (cx - az),
                    (c * g * g / (b * ca)).abs().iv ** 2))
    free = (c * ba / (b * ca)).abs().iv ** 2
    for sg in (1, -1):
        u = X * sb * sc + (Z * a).scale(sg)
        v = X * sa * sc + (Z * sa * sb).scale(sg)
        out.append(((c / (b * ca * ca)).abs().iv * (u.norm() - v.norm()), free))
    return out, prec


def _quartic_root_mags(B, C, ctx):
    """|x| for the roots of x^4 - 2B x^2 + C with real B, C > 0."""
    disc = B * B - C
    quarter = ctx.sqrt(ctx.sqrt(C))
    if (disc >= 0) is True:
        r = ctx.sqrt(disc)
        return [ctx.sqrt(abs(B + r)), ctx.sqrt(abs(B - r))]
    if (disc <= 0) is True:
        return [quarter, quarter]
    # undecided sign: the hull of both formulas is valid
    r = ctx.sqrt(ctx.mpf([0, disc.b]))
    out = []
    for m in (ctx.sqrt(abs(B + r)), ctx.sqrt(abs(B - r))):
        out.append(ctx.mpf([min(m.a, quarter.a), max(m.b, quarter.b)]))
    return out


def conjugate_magnitudes_closed_form(fam, x1, z1, prec, printed: bool = False):
    """Route A: eight closed-form conjugates and the roots of q1..q6 (32 values).

    ``printed=True`` uses the denominator x1 sqrt c - z1 sqrt a for x7, x8
    (a repeat of x5, x6) and the q3 variant described in _q_coeffs.
    """
    ctx = ivctx(prec)
    rt = _gamma_roots(fam, prec)
    C_ = lambda z: HighPrecComplex.from_gint(GaussianInt.of(z), prec)
    sa, sb, sc = rt.sa, rt.sb, rt.sc
    X, Z = C_(x1), C_(z1)
    D1 = X * sc + Z * sa
    D2 = X * sc - Z * sa
    eight = [
        (sc * (sb + sa) / (sb * D1)).abs().iv,
        (sc * (sb + sa) / (sb * D2)).abs().iv,
        (sc * (sb - sa) / (sb * D2)).abs().iv,
        (sc * (sb - sa) / (sb * (D2 if printed else D1))).abs().iv,
    ]
    mags = [m for m in eight for _ in (0, 1)]
    coeffs, _ = _q_coeffs(fam, x1, z1, prec, printed)
    for B, C in coeffs:
        for m in _quartic_root_mags(B, C, ctx):
            mags += [m, m]
    return mags


def conjugate_magnitudes_galois(fam, x1, z1, prec):
    """Route B: sqrt(|F_e||F_d|) over sign patterns e, d of (sqrt a, sqrt b, sqrt c)."""
    ctx = ivctx(prec)
    from ..highprec import sqrt_gint

    sa, sb, sc = (sqrt_gint(v, prec) for v in (fam.a, fam.b, fam.c))
    X = HighPrecComplex.from_gint(GaussianInt.of(x1), prec)
    Z = HighPrecComplex.from_gint(GaussianInt.of(z1), prec)
    fs = []
    for ea, eb, ec in ((1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)):
        ra, rb, rc = sa.scale(ea), sb.scale(eb), sc.scale(ec)
        fs.append((rc * (ra + rb) / (rb * (X * rc + Z * ra))).abs().iv)
    return [ctx.sqrt(f * g) for f in fs for g in fs for _ in (0, 1)]


def _overlap(u, v) -> bool:
    return not ((u.b < v.a) is True or (v.b < u.a) is True)


def routes_agree(ra, rb) -> bool:
    """True iff the two interval lists admit a perfect matching of overlapping pairs.

    Sorting and zipping is not enough once some enclosures are much wider
    than the gaps between neighbouring conjugates.
    """
    if len(ra) != len(rb):
        return False
    adj = [[j for j, v in enumerate(rb) if _overlap(u, v)] for u in ra]
    owner = [-1] * len(rb)

    def augment(i, seen):
        for j in adj[i]:
            if j in seen:
                continue
            seen.add(j)
            if owner[j] < 0 or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(ra)))


COMPONENTS = (
    ("q12_x2_coeff_le_k5", 65),
    ("q34_x2_coeff_lt_k4", 1_450_000),
    ("q56_x2_coeff_lt_3k7", 2),
    ("free_coeff_le_1025k7", 1025),
)
HEADLINE_THRESHOLD = 10**7


def _claimed(k: GaussianInt, threshold) -> bool:
    return k.norm() >= threshold * threshold


def _conj_eval(k, x1, z1, prec):
    ctx = ivctx(prec)
    fam = family_triple(k)
    ka = ctx.sqrt(ctx.mpf(k.norm()))
    A = conjugate_magnitudes_closed_form(fam, x1, z1, prec)
    B = conjugate_magnitudes_galois(fam, x1, z1, prec)
    agree = routes_agree(A, B)
    coeffs, _ = _q_coeffs(fam, x1, z1, prec)
    x2 = [abs(2 * b) for b, _ in coeffs]
    free = [c for _, c in coeffs]
    comp_values = {
        "q12_x2_coeff_le_k5": (max(x2[0], x2[1]), ka ** 5, "le"),
        "q34_x2_coeff_lt_k4": (max(x2[2], x2[3]), ka ** 4, "lt"),
        "q56_x2_coeff_lt_3k7": (max(x2[4], x2[5]), 3 * ka ** 7, "lt"),
        "free_coeff_le_1025k7": (max(free), 1025 * ka ** 7, "le"),
    }
    comps = {}
    for name, threshold in COMPONENTS:
        val, bound, op = comp_values[name]
        flag = (val <= bound) if op == "le" else (val < bound)
        comps[name] = {"claimed": _claimed(k, threshold), "threshold": threshold,
                       "value": HighPrecReal(val, prec), "bound": HighPrecReal(bound, prec),
                       "holds": flag}
    biggest = A[0]
    for m in A[1:]:
        if (m.b > biggest.b):
            biggest = m
    head = biggest <= ka ** 4
    return agree, comps, HighPrecReal(biggest, prec), head, HighPrecReal(ka ** 4, prec), len(A)


def alpha3_conjugate_bound(k: IntLike, x1: IntLike = 1, z1: IntLike = 1,
                           precision_bits: int = DEFAULT_PRECISION) -> Report:
    """All 32 conjugate magnitudes of alpha3 by two routes, the component
    coefficient bounds, and |alpha3'| <= |k|^4 when |k| >= 10^7.

    Claims whose threshold exceeds |k| are evaluated but not asserted.
    """
    k = check_k(k)
    x1, z1 = GaussianInt.of(x1), GaussianInt.of(z1)
    _require_class(k, x1, z1)
    agree, comps, biggest, head, k4, count = escalate(lambda p: _conj_eval(k, x1, z1, p),
                                                      precision_bits)
    verdicts = [PASS if agree else FAIL]
    for c in comps.values():
        if c["claimed"]:
            verdicts.append(PASS if c["holds"] is True else (UNDECIDED if c["holds"] is None else FAIL))
        c["holds"] = c["holds"] if c["holds"] is not None else "undecided"
    head_claimed = _claimed(k, HEADLINE_THRESHOLD)
    if head_claimed:
        verdicts.append(PASS if head is True else (UNDECIDED if head is None else FAIL))
    return Report("alpha3-conjugates", "conjugates of alpha3 and their bounds",
                  {"k": k, "x1": x1, "z1": z1},
                  combine(verdicts),
                  {"count": count, "routes_agree": agree, "components": comps,
                   "max_conjugate": biggest, "k_pow_4": k4,
                   "headline_claimed": head_claimed,
                   "headline_holds": head if head is not None else "undecided"})
