"""Pell-type equations alpha*z^2 - gamma*x^2 = alpha - gamma over Z[i].

Covers orbit stepping, fundamental-solution enumeration inside the size
bound for fundamental solutions, the V and W recurrences attached to the
family triple, and their intersection.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt

from .errors import BoundOverflow, KTooSmall, NotASolution, PreconditionError
from .gint import GaussianInt, IntLike, gi_abs, gi_sqrt, sorted_gints
from .highprec import DEFAULT_PRECISION, PrecisionExhausted, escalate, ivctx
from .reports import FAIL, PASS, Report, combine

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class PellEquation:
    """alpha*z^2 - gamma*x^2 = alpha - gamma with unit^2 = alpha*gamma + 1."""

    alpha: GaussianInt
    gamma: GaussianInt
    unit: GaussianInt

    def __post_init__(self):
        if self.unit * self.unit - self.alpha * self.gamma != 1:
            raise PreconditionError("unit^2 - alpha*gamma must equal 1")
        if gi_sqrt(self.alpha * self.gamma) is not None:
            raise PreconditionError("alpha*gamma must not be a square")

    @property
    def rhs(self) -> GaussianInt:
        return self.alpha - self.gamma

    def satisfied_by(self, x: GaussianInt, z: GaussianInt) -> bool:
        return self.alpha * z * z - self.gamma * x * x == self.rhs


def family_equation_e2(k: IntLike) -> PellEquation:
    """(k-1) z^2 - (16k^3-4k) x^2 = (k-1) - (16k^3-4k), unit s."""
    from .tuples import family_triple

    f = family_triple(k)
    return PellEquation(f.a, f.c, f.s)


def family_equation_bc(k: IntLike) -> PellEquation:
    """(k+1) z^2 - (16k^3-4k) y^2 = (k+1) - (16k^3-4k), unit t."""
    from .tuples import family_triple

    f = family_triple(k)
    return PellEquation(f.b, f.c, f.t)


def step_solution(eq: PellEquation, sol, direction: str = "forward"):
    """Multiply the solution (x, z) by the unit or its inverse."""
    x, z = (GaussianInt.of(v) for v in sol)
    if not eq.satisfied_by(x, z):
        raise NotASolution(f"({x}, {z}) does not satisfy the equation")
    s, a, c = eq.unit, eq.alpha, eq.gamma
    if direction == "forward":
        out = (s * x + a * z, s * z + c * x)
    elif direction == "backward":
        out = (s * x - a * z, s * z - c * x)
    else:
        raise ValueError(f"direction must be forward or backward, not {direction!r}")
    assert eq.satisfied_by(*out)
    return out


@dataclass(frozen=True)
class FundamentalSolution:
    x0: GaussianInt
    z0: GaussianInt
    class_index: int
    # (x0, z0) and (-x0, -z0) give the same x-sequence up to sign
    signs: tuple = field(default=("+", "+"), compare=False)

    def pair(self):
        return (self.x0, self.z0)

    def to_json(self) -> dict:
        return {"x0": self.x0.to_json(), "z0": self.z0.to_json(), "class_index": self.class_index}


def disk_bound(eq: PellEquation, precision_bits: int = DEFAULT_PRECISION) -> int:
    """Integer N with every fundamental solution satisfying norm(x0) <= N.

    The bound is |alpha||gamma-alpha|/(|unit|-1), rounded up from its
    certified upper endpoint.
    """
    ctx = ivctx(precision_bits)
    u = gi_abs(eq.unit, precision_bits).iv
    if not (u - 1 > 0):
        raise PreconditionError("|unit| must exceed 1")
    num = gi_abs(eq.alpha, precision_bits).iv * gi_abs(eq.gamma - eq.alpha, precision_bits).iv
    q = num / (u - 1)
    hi = ctx.mpf(q)._mpi_[1]
    import mpmath

    return int(mpmath.floor(mpmath.mp.make_mpf(hi)))


def _scan_norm_range(args):
    """Worker: all x with lo <= norm(x) <= hi solving the equation, as int tuples."""
    a_re, a_im, g_re, g_im, lo, hi = args
    alpha = GaussianInt(a_re, a_im)
    gamma = GaussianInt(g_re, g_im)
    rhs = alpha - gamma
    na = alpha.norm()
    ac = alpha.conj()
    found = []
    r = isqrt(hi)
    for xr in range(-r, r + 1):
        rem_hi = hi - xr * xr
        if rem_hi < 0:
            continue
        yr = isqrt(rem_hi)
        for xi in range(-yr, yr + 1):
            n = xr * xr + xi * xi
            if n < lo:
                continue
            x = GaussianInt(xr, xi)
            num = gamma * x * x + rhs  # alpha z^2 = gamma x^2 + alpha - gamma
            t = num * ac
            if t.re % na or t.im % na:
                continue
            z = gi_sqrt(GaussianInt(t.re // na, t.im // na))
            if z is not None:
                found.append((xr, xi, z.re, z.im))
    return found


def enumerate_fundamental(eq: PellEquation, k_context=None, budget: int = DEFAULT_BUDGET,
                          jobs: int = 1) -> list[FundamentalSolution]:
    """All solutions (x0, z0) inside the fundamental-solution disk.

    x0 is stored in principal form; for each x0 both signs of z0 give
    distinct classes.  Output is ordered by (norm, re, im) of x0, then z0.
    ``k_context`` is accepted for interface symmetry; the family bound is
    the same disk instantiated at alpha = k-1, gamma = 16k^3-4k.
    """
    n_max = disk_bound(eq)
    # lattice points in the disk are about pi*N
    if 4 * n_max + 4 * isqrt(n_max) + 1 > budget:
        raise BoundOverflow(f"disk norm bound {n_max} exceeds candidate budget {budget}")
    ranges = _annuli(n_max, max(1, jobs))
    args = [(eq.alpha.re, eq.alpha.im, eq.gamma.re, eq.gamma.im, lo, hi) for lo, hi in ranges]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_norm_range, args))
    else:
        parts = [_scan_norm_range(a) for a in args]
    pairs = set()
    for part in parts:
        for xr, xi, zr, zi in part:
            x, z = GaussianInt(xr, xi), GaussianInt(zr, zi)
            if x.principal() != x:
                x, z = -x, -z
            pairs.add((x, z))
            pairs.add((x, -z))
    ordered = sorted(pairs, key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    out = []
    for idx, (x, z) in enumerate(ordered):
        assert eq.satisfied_by(x, z)
        out.append(FundamentalSolution(x, z, idx, ("±", "±")))
    return out


def _annuli(n_max: int, parts: int) -> list[tuple[int, int]]:
    # split by norm so each annulus holds about the same number of points
    bounds = [round(n_max * i / parts) for i in range(parts + 1)]
    out = []
    lo = 0
    for hi in bounds[1:]:
        if hi >= lo:
            out.append((lo, hi))
            lo = hi + 1
    return out


@dataclass(frozen=True)
class SequenceSpec:
    """term(0) = first, term(1) = second, term(n+2) = coeff*term(n+1) - term(n)."""

    first: GaussianInt
    second: GaussianInt
    coeff: GaussianInt
    label: str = field(default="", compare=False)

    def to_json(self) -> dict:
        return {"label": self.label, "first": self.first.to_json(),
                "second": self.second.to_json(), "coeff": self.coeff.to_json()}


_TERMS: dict[SequenceSpec, list[GaussianInt]] = {}
_TERMS_LIMIT = 4096


def sequence_terms(spec: SequenceSpec, count: int) -> list[GaussianInt]:
    """The first ``count`` terms, cached per spec."""
    terms = _TERMS.get(spec)
    if terms is None:
        if len(_TERMS) >= _TERMS_LIMIT:
            _TERMS.clear()
        terms = _TERMS[spec] = [spec.first, spec.second]
    while len(terms) < count:
        terms.append(spec.coeff * terms[-1] - terms[-2])
    return terms[:count]


def seq_term(spec: SequenceSpec, n: int) -> GaussianInt:
    if n < 0:
        raise ValueError("index must be non-negative")
    return sequence_terms(spec, n + 1)[n]


# (x1, z1) for the six W classes in index order
def w_fundamentals(k: IntLike) -> list[tuple[GaussianInt, GaussianInt]]:
    k = GaussianInt.of(k)
    t = 4 * k**2 + 2 * k - 1
    z5 = 8 * k**2 - 1
    return [(GaussianInt(1), GaussianInt(1)), (GaussianInt(1), GaussianInt(-1)),
            (k, t), (k, -t), (2 * k - 1, z5), (2 * k - 1, -z5)]


def v_spec(k: IntLike) -> SequenceSpec:
    k = GaussianInt.of(k)
    return SequenceSpec(GaussianInt(1), 2 * k - 1, 2 * k, "V")


def w_spec_from(k: IntLike, x1: GaussianInt, z1: GaussianInt, label: str = "W") -> SequenceSpec:
    """x-sequence of the orbit through (x1, z1) on (e2): W_1 = s*x1 + (k-1)*z1."""
    k = GaussianInt.of(k)
    s = 4 * k**2 - 2 * k - 1
    return SequenceSpec(x1, s * x1 + (k - 1) * z1, 2 * s, label)


def w_specs(k: IntLike) -> list[SequenceSpec]:
    """The six W sequences without the |k| guard."""
    return [w_spec_from(k, x1, z1, f"W{j}") for j, (x1, z1) in enumerate(w_fundamentals(k), start=1)]


def require_k_above(k: GaussianInt, bound_sq: int, label: str):
    """Raise KTooSmall unless norm(k) > bound_sq."""
    if k.norm() <= bound_sq:
        raise KTooSmall(f"|k| must exceed {label} (got k={k})")


def family_sequences(k: IntLike):
    k = GaussianInt.of(k)
    require_k_above(k, 17 * 17, "17")
    return v_spec(k), w_specs(k)


@dataclass(frozen=True, order=True)
class Match:
    n: int
    m: int
    j: int
    sign: str

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "j": self.j, "sign": self.sign}


def intersect_sequences(k: IntLike, n_max: int, m_max: int) -> list[Match]:
    """All V_n = ±W_m^(j) with n <= n_max and m <= m_max, via a hash join on V."""
    k = GaussianInt.of(k)
    v, ws = family_sequences(k)
    index: dict[GaussianInt, list[int]] = {}
    for n, val in enumerate(sequence_terms(v, n_max + 1)):
        index.setdefault(val, []).append(n)
    out = set()
    for j, spec in enumerate(ws, start=1):
        for m, w in enumerate(sequence_terms(spec, m_max + 1)):
            for n in index.get(w, ()):
                out.add(Match(n, m, j, "+"))
            if w:
                for n in index.get(-w, ()):
                    out.add(Match(n, m, j, "-"))
    matches = sorted(out, key=lambda t: (t.j, t.n, t.m, t.sign))
    for mt in matches:
        vn = seq_term(v, mt.n)
        wm = seq_term(ws[mt.j - 1], mt.m)
        assert vn == (wm if mt.sign == "+" else -wm)
    return matches


def _growth_at(args, prec):
    kind, k, terms = args
    ctx = ivctx(prec)
    ka = gi_abs(k, prec).iv
    rows = []
    for idx, val in enumerate(terms):
        absval = gi_abs(val, prec).iv
        if kind == "V":
            lo_base, hi_base = 2 * ka - 1, 2 * ka + 1
            if idx == 0:
                lower = upper = ctx.mpf(1)
            else:
                lower, upper = lo_base**idx, hi_base**idx
            ok_lo = _certain(lower <= absval)
            ok_hi = _certain(absval <= upper)
            ok = ok_lo and ok_hi
            margin = ctx.log(absval / lower) if idx else ctx.mpf(0)
        else:
            base = 8 * ka * ka - 4 * ka - 3
            lower = base ** (idx - 1) if idx >= 1 else 1 / base
            ok = _certain(lower <= absval)
            margin = ctx.log(absval / lower)
        if ok is None:
            raise PrecisionExhausted(f"growth comparison undecided at index {idx}")
        rows.append((idx, ok, margin))
    return rows


def _certain(cmp):
    """mpmath interval comparisons return True/False when decided, None otherwise."""
    if cmp is True:
        return True
    if cmp is False:
        return False
    return None


def growth_check(spec: SequenceSpec, kind: str, k: IntLike, max_index: int,
                 precision_bits: int = DEFAULT_PRECISION) -> Report:
    """Check the two-sided V growth or the one-sided W growth up to max_index."""
    k = GaussianInt.of(k)
    if kind == "V":
        # |k| > 2.5
        if 4 * k.norm() <= 25:
            raise KTooSmall("V growth bounds need |k| > 2.5")
    elif kind == "W":
        require_k_above(k, 289, "17")
    else:
        raise ValueError("kind must be V or W")
    terms = sequence_terms(spec, max_index + 1)
    rows = escalate(lambda p: _growth_at((kind, k, terms), p), precision_bits)
    from .highprec import HighPrecReal

    witnesses = [{"index": i, "ok": ok, "log_margin": HighPrecReal(mg, precision_bits)}
                 for i, ok, mg in rows]
    verdict = combine(PASS if ok else FAIL for _, ok, _ in rows)
    desc = ("(2|k|-1)^n <= |V_n| <= (2|k|+1)^n" if kind == "V"
            else "|W_m| >= (8|k|^2-4|k|-3)^(m-1)")
    return Report("sequence-growth", desc,
                  {"k": k, "kind": kind, "sequence": spec.label, "max_index": max_index},
                  verdict, witnesses)


def fundamental_report(k: IntLike, jobs: int = 1) -> Report:
    k = GaussianInt.of(k)
    eq = family_equation_e2(k)
    sols = enumerate_fundamental(eq, k, jobs=jobs)
    return Report("fundamental-solutions",
                  "solutions of (k-1)z^2-(16k^3-4k)x^2=(k-1)-(16k^3-4k) inside the fundamental disk",
                  {"k": k, "disk_norm_bound": disk_bound(eq)}, PASS, sols)


def sorted_x_values(sols) -> list[GaussianInt]:
    return sorted_gints({s.x0 for s in sols})
