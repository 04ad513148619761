"""Simultaneous-approximation constants for two square roots sqrt(1 + a_i/T),
and the approximation bounds satisfied by solutions of the family system."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import KTooSmall, NotASolution, PreconditionError
from ..gint import GaussianInt, IntLike, gi_sqrt
from ..highprec import DEFAULT_PRECISION, HighPrecComplex, HighPrecReal, decide, escalate, ivctx, sqrt_gint
from ..reports import FAIL, PASS, Report, combine
from ..tuples import check_k

SYSTEM1 = "system1"
SYSTEM2 = "system2"


@dataclass(frozen=True)
class JZParams:
    variant: str
    k: GaussianInt
    a1: GaussianInt
    a2: GaussianInt
    T: GaussianInt
    M: HighPrecReal
    l: HighPrecReal
    L: HighPrecReal
    p: HighPrecReal
    Pbig: HighPrecReal
    c_const: HighPrecReal | None
    lam: HighPrecReal | None
    L_gt_1: bool | None
    lam_gt_2: bool | None

    def to_json(self) -> dict:
        out = {"variant": self.variant, "k": self.k, "a1": self.a1, "a2": self.a2, "T": self.T}
        for name in ("M", "l", "L", "p", "Pbig", "c_const", "lam"):
            v = getattr(self, name)
            out[name if name != "lam" else "lambda"] = v.to_json() if v is not None else None
        out["L_gt_1"] = self.L_gt_1
        out["lambda_gt_2"] = self.lam_gt_2
        return out


def jz_inputs(k: GaussianInt, variant: str):
    if variant == SYSTEM1:
        return 8 * k, 4 * k - 1, 4 * k * k - 4 * k
    if variant == SYSTEM2:
        return k + 1, k - 1, (k * k - 1) * (16 * k**3 - 4 * k)
    raise ValueError(f"unknown variant {variant!r}")


def _abs(z: GaussianInt, ctx):
    return ctx.sqrt(ctx.mpf(z.norm()))


def _params(k: GaussianInt, variant: str, prec: int) -> JZParams:
    ctx = ivctx(prec)
    a1, a2, T = jz_inputs(k, variant)
    A1, A2, D, AT = _abs(a1, ctx), _abs(a2, ctx), _abs(a1 - a2, ctx), _abs(T, ctx)
    # a1 != a2 always; M via exact norms
    M = A1 if a1.norm() >= a2.norm() else A2
    if not decide(AT > M, "|T| > M"):
        raise PreconditionError("JZ constants need |T| > M")
    prod2 = (A1 * A2 * D) ** 2
    L = 27 * (AT - M) ** 2 / (16 * prod2)
    l = ctx.mpf(27) / 64 * AT / (AT - M)
    p = ctx.sqrt((2 * AT + 3 * M) / (2 * AT - 2 * M))
    norms = sorted([(a1.norm(), A1), (a2.norm(), A2), ((a1 - a2).norm(), D)], key=lambda t: t[0])
    mn = norms[0][1]
    Pbig = 16 * prod2 / mn**3 * (2 * AT + 3 * M)
    L_gt_1 = decide(L > 1, "L vs 1")
    lam = c_const = None
    lam_gt_2 = None
    if L_gt_1:
        lam = 1 + ctx.log(Pbig) / ctx.log(L)
        two_l = 2 * l
        mx = two_l if decide(two_l > 1, "2l vs 1") else ctx.mpf(1)
        c_const = 1 / (4 * p * Pbig * mx ** (lam - 1))
        lam_gt_2 = decide(lam > 2, "lambda vs 2")
    H = lambda v: HighPrecReal(v, prec) if v is not None else None
    return JZParams(variant, k, a1, a2, T, H(M), H(l), H(L), H(p), H(Pbig), H(c_const), H(lam),
                    L_gt_1, lam_gt_2)


def jz_params(k: IntLike, variant: str = SYSTEM2,
              precision_bits: int = DEFAULT_PRECISION) -> JZParams:
    """All constants of the two-root approximation theorem for one system.

    system1: a1 = 8k, a2 = 4k-1, T = 4k^2-4k (needs |k| > 3 for |T| > M).
    system2: a1 = k+1, a2 = k-1, T = (k^2-1)(16k^3-4k) (needs |k| > 3.21).
    """
    k = check_k(k)
    if variant == SYSTEM1 and k.norm() <= 9:
        raise KTooSmall("system1 needs |k| > 3")
    if variant == SYSTEM2 and 10000 * k.norm() <= 321 * 321:
        raise KTooSmall("system2 needs |k| > 3.21")
    return escalate(lambda p: _params(k, variant, p), precision_bits)


def jz_report(k: IntLike, variant: str, precision_bits: int = DEFAULT_PRECISION) -> Report:
    """system1: L < 1.  system2: L > 1 and lambda > 2."""
    par = jz_params(k, variant, precision_bits)
    if variant == SYSTEM1:
        ok = par.L_gt_1 is False
        desc = "L < 1, so the theorem does not apply"
    else:
        ok = bool(par.L_gt_1 and par.lam_gt_2)
        desc = "L > 1 but lambda > 2"
    return Report(f"jz-{variant}", desc, {"k": par.k, "variant": variant},
                  PASS if ok else FAIL, par)


def cube_criterion(k: IntLike) -> bool:
    """|T| > (4M)^3 for system2, compared exactly in squared norms."""
    k = GaussianInt.of(k)
    a1, a2, T = jz_inputs(k, SYSTEM2)
    m2 = max(a1.norm(), a2.norm())
    return T.norm() > 4096 * m2**3


# ---- approximation bounds for solutions -----------------------------------

BRANCH_AUTO = "auto"


def check_system_solution(k: GaussianInt, x, y, z):
    """(k+1)x^2 - (k-1)y^2 = 2 and c x^2 - (k-1) z^2 = 16k^3-5k+1."""
    c = 16 * k**3 - 4 * k
    if (k + 1) * x * x - (k - 1) * y * y != 2:
        raise NotASolution("(k+1)x^2 - (k-1)y^2 != 2")
    if c * x * x - (k - 1) * z * z != 16 * k**3 - 5 * k + 1:
        raise NotASolution("c x^2 - (k-1) z^2 != 16k^3-5k+1")


def solution_from_d(k: IntLike, d: IntLike):
    """(x, y, z) with (k-1)d+1 = x^2, (k+1)d+1 = y^2, cd+1 = z^2 (principal roots)."""
    k, d = GaussianInt.of(k), GaussianInt.of(d)
    c = 16 * k**3 - 4 * k
    roots = [gi_sqrt(e * d + 1) for e in (k - 1, k + 1, c)]
    if any(r is None for r in roots):
        raise NotASolution(f"d={d} does not extend the triple")
    return tuple(roots)


def _ratio_sqrt(num: GaussianInt, den: GaussianInt, prec: int) -> HighPrecComplex:
    """A square root of num/den: sqrt(num*conj(den)) / |den|."""
    ctx = ivctx(prec)
    r = sqrt_gint(num * den.conj(), prec)
    return r.scale(1 / ctx.sqrt(ctx.mpf(den.norm())))


def _frac(num: GaussianInt, den: GaussianInt, prec: int) -> HighPrecComplex:
    return HighPrecComplex.from_gint(num, prec) / HighPrecComplex.from_gint(den, prec)


def _pick(root: HighPrecComplex, target: HighPrecComplex, forced):
    """Choose the sign of root nearest target; ``forced`` (+1/-1) overrides."""
    dp = (root - target).abs()
    dm = (root + target).abs()
    nearest = 1 if decide(dp.le(dm), "sign selection") else -1
    sign = nearest if forced in (None, BRANCH_AUTO) else forced
    chosen = root.scale(sign)
    # selection inequality |theta1 - q| <= |theta2 - q|
    sel_ok = decide((chosen - target).abs().le((chosen + target).abs()), "selection")
    return chosen, sign, sel_ok


def _theta_eval(k, x, y, z, prec, forced1, forced2, with_vartheta):
    ctx = ivctx(prec)
    H = lambda v: HighPrecReal(v, prec)
    absx2 = ctx.mpf(x.norm())
    th1 = _ratio_sqrt(k + 1, k - 1, prec)
    th1, sg1, sel1 = _pick(th1, _frac(y, x, prec), forced1)
    d1 = (th1 - _frac(y, x, prec)).abs().iv
    b1 = 2 / ctx.sqrt(ctx.sqrt(ctx.mpf((k * k - 1).norm()))) / absx2
    th2 = _ratio_sqrt(4 * k * k - 1, 4 * k * (k - 1), prec)
    th2, sg2, sel2 = _pick(th2, _frac(z, 4 * k * x, prec), forced2)
    d2 = (th2 - _frac(z, 4 * k * x, prec)).abs().iv
    poly = 4 * k**6 - 4 * k**5 - k**4 + k**3
    num = ctx.sqrt(ctx.mpf((16 * k**3 - 5 * k + 1).norm()))
    b2 = num / (8 * ctx.sqrt(ctx.sqrt(ctx.mpf(poly.norm())))) / absx2
    rows = {
        "theta1": {"sign": sg1, "selection_ok": sel1, "distance": H(d1), "bound": H(b1),
                   "holds": decide(d1 <= b1, "theta1 bound")},
        "theta2": {"sign": sg2, "selection_ok": sel2, "distance": H(d2), "bound": H(b2),
                   "holds": decide(d2 <= b2, "theta2 bound")},
    }
    if with_vartheta:
        c = 16 * k**3 - 4 * k
        s = 4 * k * k - 2 * k - 1
        t = 4 * k * k + 2 * k - 1
        # vartheta1^2 = s^2/((k-1)c), vartheta2^2 = t^2/((k+1)c)
        v1 = HighPrecComplex.from_gint(s, prec) / sqrt_gint((k - 1) * c, prec)
        v2 = HighPrecComplex.from_gint(t, prec) / sqrt_gint((k + 1) * c, prec)
        v1, sv1, _ = _pick(v1, _frac(s * x, (k - 1) * z, prec), None)
        v2, sv2, _ = _pick(v2, _frac(t * y, (k + 1) * z, prec), None)
        e1 = (v1 - _frac(s * x, (k - 1) * z, prec)).abs().iv
        e2 = (v2 - _frac(t * y, (k + 1) * z, prec)).abs().iv
        mx = e1 if decide(e1 >= e2, "max") else e2
        bound = 40 * ctx.mpf(k.norm()) / ctx.mpf(z.norm())
        rows["vartheta"] = {"signs": [sv1, sv2], "max_distance": H(mx), "bound": H(bound),
                            "holds": decide(mx < bound, "vartheta bound")}
    return rows


def theta_bounds(k: IntLike, solution, precision_bits: int = DEFAULT_PRECISION,
                 forced_signs=(None, None)) -> Report:
    """Certify the two theta approximation bounds (and, for |k| >= 5, the
    vartheta bound) at one solution (x, y, z) of the system.

    ``forced_signs`` overrides the nearest-branch choice for theta1/theta2;
    a wrong branch shows up as a failed selection inequality.
    """
    k = check_k(k)
    x, y, z = (GaussianInt.of(v) for v in solution)
    check_system_solution(k, x, y, z)
    with_vt = k.norm() >= 25
    rows = escalate(lambda p: _theta_eval(k, x, y, z, p, forced_signs[0], forced_signs[1], with_vt),
                    precision_bits)
    flags = [rows["theta1"]["holds"], rows["theta2"]["holds"],
             rows["theta1"]["selection_ok"], rows["theta2"]["selection_ok"]]
    if with_vt:
        flags.append(rows["vartheta"]["holds"])
    return Report("theta-bounds", "theta approximation bounds at a solution",
                  {"k": k, "x": x, "y": y, "z": z, "vartheta_checked": with_vt},
                  combine(PASS if f else FAIL for f in flags), rows)


def vartheta_bounds(k: IntLike, solution, precision_bits: int = DEFAULT_PRECISION) -> Report:
    """The vartheta bound alone; rejects |k| < 5."""
    k = check_k(k)
    if k.norm() < 25:
        raise KTooSmall("vartheta bound needs |k| >= 5")
    return theta_bounds(k, solution, precision_bits)
