"""Linear forms in three logarithms attached to a common solution z = v_m = w_n.

Only absolute values are ever logged, so every form is real.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import PreconditionError
from ..gint import GaussianInt, IntLike
from ..highprec import (DEFAULT_PRECISION, MAX_PRECISION, HighPrecComplex, HighPrecReal,
                        PrecisionExhausted, decide, escalate, ivctx, sqrt_gint)
from ..reports import FAIL, PASS, UNDECIDED, Report, combine, verdict_of
from ..tuples import family_triple


def k_constant(prec: int = DEFAULT_PRECISION) -> HighPrecReal:
    """(8/3) log(24/19)."""
    ctx = ivctx(prec)
    return HighPrecReal(ctx.mpf(8) / 3 * ctx.log(ctx.mpf(24) / 19), prec)


def _c(z, prec) -> HighPrecComplex:
    return HighPrecComplex.from_gint(GaussianInt.of(z), prec)


def _re_sign(x: HighPrecComplex) -> bool:
    """True if Re x > 0, False if Re x < 0; PrecisionExhausted if undecided."""
    if (x.re > 0) is True:
        return True
    if (x.re < 0) is True:
        return False
    raise PrecisionExhausted("cannot decide which unit branch has modulus >= 1")


def _outward_unit(base: GaussianInt, root: HighPrecComplex, prec: int):
    """Return (+1 or -1) so that |base + sign*root| >= 1.

    |base+w|^2 - |base-w|^2 = 4 Re(base * conj w); the two moduli multiply to 1.
    """
    prod = _c(base, prec) * root.conj()
    return 1 if _re_sign(prod) else -1


def _pow(z: HighPrecComplex, n: int) -> HighPrecComplex:
    out = HighPrecComplex(ivctx(z.prec).mpf(1), ivctx(z.prec).mpf(0), z.prec)
    base = z
    while n:
        if n & 1:
            out = out * base
        base = base * base
        n >>= 1
    return out


@dataclass(frozen=True)
class LinearFormEval:
    k: GaussianInt
    x1: GaussianInt
    z1: GaussianInt
    m: int
    n: int
    P: HighPrecReal
    Q: HighPrecReal
    Pprime: HighPrecReal
    Qprime: HighPrecReal
    Lambda: HighPrecReal
    Gamma: HighPrecReal
    K: HighPrecReal
    rhs: HighPrecReal
    unit_ac: HighPrecReal
    log_bound_holds: bool | None
    gamma_bound_holds: bool | None

    def to_json(self) -> dict:
        return {
            "k": self.k, "x1": self.x1, "z1": self.z1, "m": self.m, "n": self.n,
            "abs_P": self.P.to_json(), "abs_Q": self.Q.to_json(),
            "abs_Pprime": self.Pprime.to_json(), "abs_Qprime": self.Qprime.to_json(),
            "Lambda": self.Lambda.to_json(), "Gamma": self.Gamma.to_json(),
            "K": self.K.to_json(), "bound": self.rhs.to_json(),
            "log_bound_holds": self.log_bound_holds,
            "gamma_bound_holds": self.gamma_bound_holds,
        }


@dataclass(frozen=True)
class _Roots:
    sa: HighPrecComplex
    sb: HighPrecComplex
    sc: HighPrecComplex


def _lambda_roots(fam, prec) -> _Roots:
    """sqrt(c) principal; sqrt(a), sqrt(b) flipped so both units have modulus >= 1."""
    sa, sb, sc = (sqrt_gint(v, prec) for v in (fam.a, fam.b, fam.c))
    ea = _outward_unit(fam.s, sa * sc, prec)
    eb = _outward_unit(fam.t, sb * sc, prec)
    return _Roots(sa.scale(ea), sb.scale(eb), sc)


def _gamma_roots(fam, prec) -> _Roots:
    """sqrt(a) principal; sqrt(c), sqrt(b) flipped so both units have modulus >= 1."""
    sa, sb, sc = (sqrt_gint(v, prec) for v in (fam.a, fam.b, fam.c))
    ec = _outward_unit(fam.s, sa * sc, prec)
    eb = _outward_unit(fam.r, sa * sb, prec)
    return _Roots(sa, sb.scale(eb), sc.scale(ec))


def _p_value(fam, rt: _Roots, x0, z0, m, prec) -> HighPrecComplex:
    # (1/sqrt a)(z0 sqrt a + x0 sqrt c)(s + sqrt(ac))^m
    lead = (rt.sa * _c(z0, prec) + rt.sc * _c(x0, prec)) / rt.sa
    return lead * _pow(_c(fam.s, prec) + rt.sa * rt.sc, m)


def _q_value(fam, rt: _Roots, y1, z1, n, prec) -> HighPrecComplex:
    lead = (rt.sb * _c(z1, prec) + rt.sc * _c(y1, prec)) / rt.sb
    return lead * _pow(_c(fam.t, prec) + rt.sb * rt.sc, n)


def _log_ratio(num: HighPrecReal, den: HighPrecReal, prec: int) -> HighPrecReal:
    ctx = ivctx(prec)
    return HighPrecReal(ctx.log(num.iv) - ctx.log(den.iv), prec)


def _abs_iv(x: HighPrecReal, prec: int) -> HighPrecReal:
    ctx = ivctx(prec)
    lo, hi = x.iv.a, x.iv.b
    if (lo >= 0) is True:
        return x
    if (hi <= 0) is True:
        return HighPrecReal(-x.iv, prec)
    return HighPrecReal(ctx.mpf([0, max(-lo, hi).b]), prec)


def c_at_least_4b(k: IntLike) -> bool:
    """|c| >= 4|b| exactly, comparing squared norms."""
    fam = family_triple(k)
    return fam.c.norm() >= 16 * fam.b.norm()


def _eval(k, x1, z1, m, n, y1, w1, prec) -> LinearFormEval:
    fam = family_triple(k)
    ctx = ivctx(prec)
    rt = _lambda_roots(fam, prec)
    P = _p_value(fam, rt, x1, z1, m, prec).abs()
    Q = _q_value(fam, rt, y1, w1, n, prec).abs()
    lam = _log_ratio(Q, P, prec)
    unit_ac = (_c(fam.s, prec) + rt.sa * rt.sc).abs()

    gr = _gamma_roots(fam, prec)
    pp = ((gr.sc * _c(x1, prec) + gr.sa * _c(z1, prec)) / gr.sc
          * _pow(_c(fam.s, prec) + gr.sa * gr.sc, m)).abs()
    qp = ((gr.sa + gr.sb) / gr.sb * _pow(_c(fam.r, prec) + gr.sa * gr.sb, n)).abs()
    gam = _log_ratio(qp, pp, prec)

    K = k_constant(prec)
    # K sqrt|ac| |s+sqrt(ac)|^-m; the Gamma form shares the same unit modulus
    sqrt_ac = ctx.sqrt(ctx.mpf((fam.a * fam.c).norm()).__pow__(ctx.mpf(1) / 2))
    rhs = HighPrecReal(K.iv * sqrt_ac / unit_ac.iv ** m, prec)
    applies = m >= 3 and n >= 3 and c_at_least_4b(k)
    holds = _abs_iv(lam, prec).lt(rhs) if applies else None
    gholds = _abs_iv(gam, prec).lt(rhs) if applies else None
    for flag in (holds, gholds):
        if applies and flag is None:
            raise PrecisionExhausted("linear form bound undecided")
    return LinearFormEval(GaussianInt.of(k), x1, z1, m, n, P, Q, pp, qp, lam, gam, K, rhs,
                          unit_ac, holds, gholds)


def eval_linear_form(k: IntLike, x1: IntLike = 1, z1: IntLike = 1, m: int = 3, n: int = 3,
                     precision_bits: int = DEFAULT_PRECISION, y1: IntLike = 1,
                     w1: IntLike = 1) -> LinearFormEval:
    """Evaluate |P|, |Q|, |P'|, |Q'|, Lambda and Gamma for the class (x1, z1).

    (y1, w1) is the class used for Q; (1, 1) solves b z^2 - c y^2 = b - c.
    The bound flags are None unless m, n >= 3 and |c| >= 4|b|.
    """
    if m < 0 or n < 0:
        raise PreconditionError("m and n must be nonnegative")
    x1, z1, y1, w1 = (GaussianInt.of(v) for v in (x1, z1, y1, w1))
    fam = family_triple(k)
    if fam.a * z1 * z1 - fam.c * x1 * x1 != fam.a - fam.c:
        raise PreconditionError(f"({x1}, {z1}) does not solve a z^2 - c x^2 = a - c")
    if fam.b * w1 * w1 - fam.c * y1 * y1 != fam.b - fam.c:
        raise PreconditionError(f"({y1}, {w1}) does not solve b z^2 - c y^2 = b - c")
    return escalate(lambda p: _eval(k, x1, z1, m, n, y1, w1, p), precision_bits)


def linear_form_report(k: IntLike, x1=1, z1=1, m: int = 3, n: int = 3,
                       precision_bits: int = DEFAULT_PRECISION) -> Report:
    ev = eval_linear_form(k, x1, z1, m, n, precision_bits)
    v = verdict_of(ev.log_bound_holds) if ev.log_bound_holds is not None else UNDECIDED
    return Report("linear-form-bound", "|log(|Q|/|P|)| < K sqrt|ac| |s+sqrt(ac)|^-m",
                  {"k": ev.k, "x1": ev.x1, "z1": ev.z1, "m": m, "n": n}, v, ev)


def pq_bound_check(k: IntLike, m: int, n: int, x1: IntLike = 1, z1: IntLike = 1,
                   precision_bits: int = DEFAULT_PRECISION) -> Report:
    """Certify |P| > 12|c/a|, |Q| > 12|c/b| and |s+sqrt(ac)| >= sqrt|ac|."""
    if m < 3 or n < 3:
        raise PreconditionError("needs m, n >= 3")
    if not c_at_least_4b(k):
        raise PreconditionError("needs |c| >= 4|b|")
    fam = family_triple(k)

    def run(prec):
        ctx = ivctx(prec)
        ev = _eval(k, GaussianInt.of(x1), GaussianInt.of(z1), m, n, GaussianInt(1),
                   GaussianInt(1), prec)
        ca = ctx.sqrt(ctx.mpf(fam.c.norm()) / fam.a.norm())
        cb = ctx.sqrt(ctx.mpf(fam.c.norm()) / fam.b.norm())
        sqrt_ac = ctx.sqrt(ctx.sqrt(ctx.mpf((fam.a * fam.c).norm())))
        checks = {
            "P_gt_12c_over_a": decide(ev.P.gt(HighPrecReal(12 * ca, prec)), "|P| bound"),
            "Q_gt_12c_over_b": decide(ev.Q.gt(HighPrecReal(12 * cb, prec)), "|Q| bound"),
            "unit_ge_sqrt_ac": decide(ev.unit_ac.ge(HighPrecReal(sqrt_ac, prec)), "unit bound"),
        }
        return checks, ev

    checks, ev = escalate(run, precision_bits)
    verdict = combine(PASS if ok else FAIL for ok in checks.values())
    return Report("pq-lower-bounds", "|P| > 12|c/a|, |Q| > 12|c/b|, |s+sqrt(ac)| >= sqrt|ac|",
                  {"k": GaussianInt.of(k), "x1": x1, "z1": z1, "m": m, "n": n}, verdict,
                  {"checks": checks, "abs_P": ev.P, "abs_Q": ev.Q, "unit": ev.unit_ac})


def derivation_check(k: IntLike, x1=1, z1=1, m: int = 3,
                     precision_bits: int = DEFAULT_PRECISION) -> Report:
    """Check the log bound's derivation under its own hypothesis.

    Sets z = v_m from P, solves Q - ((c-b)/b) Q^-1 = 2z for the larger root and
    certifies |log(|Q|/|P|)| < K sqrt|ac| |s+sqrt(ac)|^-m.  This is the
    analytic step only; such a Q is generally not of the form (t+sqrt(bc))^n.
    """
    fam = family_triple(k)
    x1, z1 = GaussianInt.of(x1), GaussianInt.of(z1)
    if m < 3:
        raise PreconditionError("needs m >= 3")

    def run(prec):
        ctx = ivctx(prec)
        rt = _lambda_roots(fam, prec)
        P = _p_value(fam, rt, x1, z1, m, prec)
        cma = _c(fam.c - fam.a, prec) / _c(fam.a, prec)
        two_z = P - cma / P
        z = two_z.scale(ctx.mpf(1) / 2)
        cmb = _c(fam.c - fam.b, prec) / _c(fam.b, prec)
        disc = z * z + cmb
        root = _csqrt(disc)
        q1, q2 = z + root, z - root
        a1, a2 = q1.abs(), q2.abs()
        big = a1 if decide(a1.gt(a2), "root choice") else a2
        lam = _log_ratio(big, P.abs(), prec)
        unit = (_c(fam.s, prec) + rt.sa * rt.sc).abs()
        sqrt_ac = ctx.sqrt(ctx.sqrt(ctx.mpf((fam.a * fam.c).norm())))
        rhs = HighPrecReal(k_constant(prec).iv * sqrt_ac / unit.iv ** m, prec)
        return decide(_abs_iv(lam, prec).lt(rhs), "derivation bound"), lam, rhs

    ok, lam, rhs = escalate(run, precision_bits)
    return Report("linear-form-derivation",
                  "log bound holds when Q is solved from the common z = v_m",
                  {"k": fam.k, "x1": x1, "z1": z1, "m": m}, verdict_of(ok),
                  {"Lambda": lam, "bound": rhs})


def _csqrt(z: HighPrecComplex) -> HighPrecComplex:
    """A square root of a complex interval away from the branch cut's trouble spots."""
    ctx = ivctx(z.prec)
    r = ctx.sqrt(z.norm())
    if (z.re > 0) is True:
        x2 = (r + z.re) / 2
        x = ctx.sqrt(x2)
        return HighPrecComplex(x, z.im / (2 * x), z.prec)
    y2 = (r - z.re) / 2
    if (y2 > 0) is not True:
        raise PrecisionExhausted("complex square root undecided")
    y = ctx.sqrt(y2)
    if (z.im < 0) is True:
        y = -y
    elif (z.im > 0) is not True and (z.im == 0) is not True:
        raise PrecisionExhausted("sign of imaginary part undecided")
    return HighPrecComplex(z.im / (2 * y), y, z.prec)


def lambda_nonzero_probe(k: IntLike, x1=1, z1=1, m: int = 3, n: int = 3,
                         precision_bits: int = DEFAULT_PRECISION,
                         budget_bits: int = MAX_PRECISION) -> Report:
    """Numeric witness that |P| != |Q| at one instance.

    Doubles precision until the enclosures of |P| and |Q| separate, and
    reports undecided if budget_bits is reached first.
    """
    k = GaussianInt.of(k)
    if k.re == 0 or k.im == 0:
        raise PreconditionError("needs Re k != 0 and Im k != 0")
    prec = precision_bits
    tried = []
    while True:
        try:
            ev = _eval(k, GaussianInt.of(x1), GaussianInt.of(z1), m, n, GaussianInt(1),
                       GaussianInt(1), prec)
        except PrecisionExhausted:
            ev = None
        tried.append(prec)
        if ev is not None:
            sep = ev.P.lt(ev.Q)
            if sep is None:
                sep = ev.Q.lt(ev.P)
            if sep is not None:
                return Report("lambda-nonzero", "|P| and |Q| are separated",
                              {"k": k, "x1": x1, "z1": z1, "m": m, "n": n}, PASS,
                              {"abs_P": ev.P, "abs_Q": ev.Q, "precisions": tried})
        if prec >= budget_bits:
            return Report("lambda-nonzero", "|P| and |Q| are separated",
                          {"k": k, "x1": x1, "z1": z1, "m": m, "n": n}, UNDECIDED,
                          {"reason": "precision budget exhausted", "precisions": tried})
        prec = min(2 * prec, budget_bits)
