"""Verifiers for the two irrationality lemmas on ratios of absolute values.

bkroza: |k+1|/|k-1| is irrational when Re k * Im k != 0.
ckroza: |16k^3-4k|/|k-1| is irrational when Im k != 0, including the full
case split over the discriminant D(v, w) of the auxiliary quadratic.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt

from .analytic.polys import IntPolynomial
from .errors import CaseGap, PreconditionError
from .reports import FAIL, PASS, Report

W_MAX = 32
V_SCAN = 1000


# --- small bivariate integer polynomials ---------------------------------

@dataclass(frozen=True)
class BiPoly:
    """Integer polynomial in (v, w) stored as {(i, j): coeff} for v^i w^j."""

    terms: tuple

    @classmethod
    def of(cls, d: dict) -> "BiPoly":
        return cls(tuple(sorted((k, c) for k, c in d.items() if c)))

    @classmethod
    def const(cls, c: int) -> "BiPoly":
        return cls.of({(0, 0): c})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other):
        other = _bi(other)
        d = self.as_dict()
        for k, c in other.terms:
            d[k] = d.get(k, 0) + c
        return BiPoly.of(d)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly.of({k: -c for k, c in self.terms})

    def __sub__(self, other):
        return self + (-_bi(other))

    def __rsub__(self, other):
        return _bi(other) - self

    def __mul__(self, other):
        other = _bi(other)
        d: dict = {}
        for (i1, j1), c1 in self.terms:
            for (i2, j2), c2 in other.terms:
                key = (i1 + i2, j1 + j2)
                d[key] = d.get(key, 0) + c1 * c2
        return BiPoly.of(d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BiPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def at_w(self, w: int) -> IntPolynomial:
        """Specialize w and return a polynomial in v."""
        coeffs: dict = {}
        for (i, j), c in self.terms:
            coeffs[i] = coeffs.get(i, 0) + c * w**j
        deg = max(coeffs, default=0)
        return IntPolynomial([coeffs.get(i, 0) for i in range(deg + 1)])

    def coefficient_in_v(self, i: int) -> "BiPoly":
        return BiPoly.of({(0, j): c for (ii, j), c in self.terms if ii == i})

    def __str__(self) -> str:
        return " + ".join(f"{c}*v^{i}*w^{j}" for (i, j), c in self.terms) or "0"


def _bi(x) -> BiPoly:
    return x if isinstance(x, BiPoly) else BiPoly.const(int(x))


V = BiPoly.of({(1, 0): 1})
W = BiPoly.of({(0, 1): 1})


def quadratic_in_u() -> tuple[BiPoly, BiPoly, BiPoly]:
    """Coefficients (A, B, C) of 2w*S(u) + w^2 - 4096uv = 0 as a quadratic in u,
    where S(u) = u^2 + (32v-10)u + 160v + 256v^2 + 9."""
    a = 2 * W
    b = 2 * W * (32 * V - 10) - 4096 * V
    c = 2 * W * (160 * V + 256 * V**2 + 9) + W**2
    return a, b, c


def discriminant_quarter() -> BiPoly:
    """D(v, w) = (B^2 - 4AC)/4 computed from the quadratic itself."""
    a, b, c = quadratic_in_u()
    full = b * b - 4 * a * c
    d = full.as_dict()
    if any(x % 4 for x in d.values()):
        raise AssertionError("discriminant not divisible by 4")
    return BiPoly.of({k: x // 4 for k, x in d.items()})


def discriminant_factored() -> BiPoly:
    return -2 * (W - 32) * (W**2 + 640 * V * W + 65536 * V**2)


def discriminant_expanded() -> BiPoly:
    """The expanded cubic form: 4D = -8(w^3 - 32w^2 + 65536v^2 w - 2097152v^2 + 640vw^2 - 20480vw)."""
    inner = (W**3 - 32 * W**2 + 65536 * V**2 * W - 2097152 * V**2 + 640 * V * W**2
             - 20480 * V * W)
    return -2 * inner


def factored_identity() -> dict:
    derived = discriminant_quarter()
    return {
        "from_quadratic_equals_factored": derived == discriminant_factored(),
        "expanded_equals_factored": discriminant_expanded() == discriminant_factored(),
        # D = -2w^2(w-32) mod 128: the v and v^2 coefficients vanish mod 128
        "mod_128_reduction": all(c % 128 == 0 for i in (1, 2)
                                 for _, c in discriminant_factored().coefficient_in_v(i).terms),
        "D": str(discriminant_factored()),
    }


def d_poly(w: int) -> IntPolynomial:
    return discriminant_factored().at_w(w)


# --- obstructions ----------------------------------------------------------

def squares_mod(m: int) -> set[int]:
    return {x * x % m for x in range(m)}


@dataclass(frozen=True)
class Modular:
    """D/divisor is an integer polynomial and is congruent to a fixed non-square mod modulus.

    divisor is a perfect square, so D square would force D/divisor square.
    """

    divisor: int
    modulus: int
    bad_residue: int

    kind = "modular"

    def to_json(self) -> dict:
        return {"kind": self.kind, "divisor": self.divisor, "modulus": self.modulus,
                "bad_residue": self.bad_residue}


@dataclass(frozen=True)
class Sandwich:
    """(alpha v + beta)^2 < D/divisor < (alpha v + beta + gap)^2 for v >= 1,
    with no middle square attained."""

    divisor: int
    alpha: int
    beta: int
    gap: int

    kind = "sandwich"

    def to_json(self) -> dict:
        return {"kind": self.kind, "divisor": self.divisor,
                "lower": f"({self.alpha}v+{self.beta})^2",
                "upper": f"({self.alpha}v+{self.beta + self.gap})^2"}


@dataclass(frozen=True)
class QuadraticSolutionNonsquare:
    """D vanishes; the double root u = slope*v + offset is never a square."""

    slope: int
    offset: int
    modulus: int

    kind = "quadratic_solution_nonsquare"

    def to_json(self) -> dict:
        return {"kind": self.kind, "u": f"{self.slope}v+{self.offset}", "modulus": self.modulus}


@dataclass
class CkrozaCase:
    w: int
    D_poly: IntPolynomial
    obstruction: object
    symbolic_ok: bool
    scan_ok: bool
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.symbolic_ok and self.scan_ok

    def to_json(self) -> dict:
        return {"w": self.w, "D_poly": str(self.D_poly), "obstruction": self.obstruction.to_json(),
                "symbolic_ok": self.symbolic_ok, "scan_ok": self.scan_ok, "details": self.details}


def _int_coeffs(p: IntPolynomial) -> list[int]:
    out = []
    for c in p.coeffs:
        if c.denominator != 1:
            raise AssertionError("non-integral coefficient")
        out.append(int(c))
    return out


def _divide(p: IntPolynomial, d: int) -> list[int] | None:
    cs = _int_coeffs(p)
    if any(c % d for c in cs):
        return None
    return [c // d for c in cs]


def _modular_symbolic(p: IntPolynomial, ob: Modular) -> tuple[bool, dict]:
    q = _divide(p, ob.divisor)
    if q is None:
        return False, {"divisible": False}
    reduced = [c % ob.modulus for c in q]
    ok = (isqrt(ob.divisor) ** 2 == ob.divisor
          and reduced[0] == ob.bad_residue
          and all(c == 0 for c in reduced[1:])
          and ob.bad_residue not in squares_mod(ob.modulus))
    return ok, {"quotient": q, "reduced_coefficients": reduced}


def _linear_positive_for_v_ge_1(p: IntPolynomial) -> bool:
    cs = _int_coeffs(p) + [0, 0]
    if p.degree > 1:
        return False
    c0, c1 = cs[0], cs[1]
    return c1 >= 0 and c0 + c1 > 0


def _no_positive_integer_root(p: IntPolynomial) -> bool:
    if p.degree > 1:
        return False
    cs = _int_coeffs(p) + [0, 0]
    c0, c1 = cs[0], cs[1]
    if c1 == 0:
        return c0 != 0
    return not (-c0 % c1 == 0 and -c0 // c1 >= 1)


def _sandwich_symbolic(p: IntPolynomial, ob: Sandwich) -> tuple[bool, dict]:
    q = _divide(p, ob.divisor)
    if q is None or isqrt(ob.divisor) ** 2 != ob.divisor:
        return False, {"divisible": False}
    qp = IntPolynomial(q)
    v = IntPolynomial.t()
    sq = lambda j: (ob.alpha * v + (ob.beta + j)) ** 2
    excess = qp - sq(0)
    ok = (_linear_positive_for_v_ge_1(excess)
          and _linear_positive_for_v_ge_1(sq(ob.gap) - qp)
          and all(_no_positive_integer_root(sq(j) - qp) for j in range(1, ob.gap)))
    return ok, {"quotient": q, "excess_over_lower": str(excess)}


def _double_root_symbolic(w: int, ob: QuadraticSolutionNonsquare) -> tuple[bool, dict]:
    a, b, _ = quadratic_in_u()
    A, B = a.at_w(w), b.at_w(w)
    A0 = _int_coeffs(A)
    if d_poly(w).degree >= 0 and not d_poly(w).is_zero():
        return False, {"D_vanishes": False}
    # u = -B/(2A) with A constant
    if A.degree != 0:
        return False, {}
    two_a = 2 * A0[0]
    bs = _int_coeffs(B) + [0]
    ok = (-bs[0] == ob.offset * two_a and -bs[1] == ob.slope * two_a
          and ob.slope % ob.modulus == 0
          and ob.offset % ob.modulus not in squares_mod(ob.modulus))
    return ok, {"D_vanishes": True, "double_root": f"{ob.slope}v+{ob.offset}",
                "second_root": "none (double root)"}


def _scan_values(p: IntPolynomial, check, vs) -> bool:
    return all(check(int(p(v))) for v in vs)


def obstruction_for(w: int):
    if w == 32:
        return QuadraticSolutionNonsquare(16, 5, 16)
    if w % 2:
        return Modular(1, 4, 2)
    if w % 8 == 2:
        return Modular(1, 64, 64 - 16)
    if w % 8 == 4:
        return Modular(1, 256, 128)
    table = {
        6: Modular(16, 16, 5),
        8: Modular(256, 16, 12),
        16: Modular(4096, 4, 2),
        22: Modular(16, 16, 13),
        14: Sandwich(144, 128, 7, 2),
        24: Sandwich(1024, 32, 3, 1),
        30: Sandwich(16, 128, 15, 4),
    }
    return table.get(w)


def _scan_vs() -> list[int]:
    # v = y^2 for y <= 1000 and 1000 consecutive values of v
    return sorted({y * y for y in range(1, V_SCAN + 1)} | set(range(1, V_SCAN + 1)))


def _case(w: int, vs) -> CkrozaCase:
    ob = obstruction_for(w)
    if ob is None:
        raise CaseGap(f"w={w} has no obstruction")
    p = d_poly(w)
    if isinstance(ob, Modular):
        sym, det = _modular_symbolic(p, ob)
        scan = _scan_values(p, lambda d: d % ob.divisor == 0
                            and (d // ob.divisor) % ob.modulus == ob.bad_residue, vs)
    elif isinstance(ob, Sandwich):
        sym, det = _sandwich_symbolic(p, ob)
        scan = _scan_values(p, lambda d: d % ob.divisor == 0 and isqrt(d // ob.divisor) ** 2
                            != d // ob.divisor, vs)
    else:
        sym, det = _double_root_symbolic(w, ob)
        a, b, c = quadratic_in_u()
        A, B, C = a.at_w(w), b.at_w(w), c.at_w(w)
        u = lambda v: ob.slope * v + ob.offset

        def root_ok(v):
            uu = u(v)
            return A(v) * uu * uu + B(v) * uu + C(v) == 0 and isqrt(uu) ** 2 != uu
        scan = all(root_ok(v) for v in vs) and _scan_values(p, lambda d: d == 0, vs)
    # redundant: D itself is never a square on the scan
    scan = scan and _scan_values(p, lambda d: d < 0 or isqrt(d) ** 2 != d or d == 0 and w == 32, vs)
    return CkrozaCase(w, p, ob, sym, scan, det)


def negative_beyond_32(limit: int = 1000) -> dict:
    """D(v, w) < 0 for w > 32, v >= 1: the factors -2, (w-32) > 0 and a positive quadratic."""
    f = discriminant_factored()
    structural = f == -2 * (W - 32) * (W**2 + 640 * V * W + 65536 * V**2)
    samples = all(int(f.at_w(w)(v)) < 0 for w in range(33, 33 + 50) for v in (1, 2, 7, limit))
    return {"structural": structural, "sampled": samples,
            "example_w33_v1": int(f.at_w(33)(1))}


def ckroza_cases() -> tuple[list[CkrozaCase], Report]:
    vs = _scan_vs()
    cases = [_case(w, vs) for w in range(1, W_MAX + 1)]
    covered = {c.w for c in cases}
    if covered != set(range(1, W_MAX + 1)):
        raise CaseGap(f"uncovered w: {sorted(set(range(1, W_MAX + 1)) - covered)}")
    ident = factored_identity()
    neg = negative_beyond_32()
    ok = (all(c.ok for c in cases) and ident["from_quadratic_equals_factored"]
          and ident["expanded_equals_factored"] and ident["mod_128_reduction"] and neg["structural"] and neg["sampled"])
    report = Report("ckroza-cases", "every w in 1..32 carries a verified obstruction; D < 0 for w > 32",
                    {"w_range": [1, W_MAX], "v_scan": len(vs)}, PASS if ok else FAIL,
                    {"identity": ident, "w_gt_32": neg,
                     "failed_cases": [c.w for c in cases if not c.ok],
                     "cases": [c.to_json() for c in cases]})
    return cases, report


# --- exhaustive scans -------------------------------------------------------

def bkroza_norm(x: int, y: int) -> int:
    return x**4 + y**4 + 1 + 2 * x * x * y * y - 2 * x * x + 2 * y * y


def _bkroza_row(args) -> list[dict]:
    x, limit = args
    out = []
    for y in range(-limit, limit + 1):
        if x == 0 or y == 0:
            continue
        n = bkroza_norm(x, y)
        s = x * x + y * y
        problems = []
        if isqrt(n) ** 2 == n:
            problems.append("perfect square")
        if not (s - 2) ** 2 < n < (s + 1) ** 2:
            problems.append("sandwich")
        if n in (s * s, (s - 1) ** 2):
            problems.append("middle square")
        # the norm is |k+1|^2 |k-1|^2
        if n != ((x + 1) ** 2 + y * y) * ((x - 1) ** 2 + y * y):
            problems.append("norm identity")
        if problems:
            out.append({"x": x, "y": y, "N": n, "problems": problems})
    return out


def _rows(worker, limit: int, jobs: int) -> list:
    args = [(x, limit) for x in range(-limit, limit + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(worker, args, chunksize=max(1, len(args) // (4 * jobs))))
    else:
        rows = [worker(a) for a in args]
    return [v for row in rows for v in row]


def _check_box(limit: int) -> None:
    if limit < 1:
        raise PreconditionError("box size must be positive")


def bkroza_scan(limit: int = 200, jobs: int = 1) -> Report:
    """|k+1|^2 |k-1|^2 is never a square for k = x+yi, 0 < |x|,|y| <= limit."""
    _check_box(limit)
    violations = _rows(_bkroza_row, limit, jobs)
    # parity: 1 - 2x^2 + 2y^2 is odd, hence nonzero
    parity = all((1 - 2 * x * x + 2 * y * y) % 2 == 1 for x in range(-3, 4) for y in range(-3, 4))
    example = bkroza_norm(1, 1)
    return Report("bkroza-scan", "|k+1||k-1| is not an integer when Re k * Im k != 0",
                  {"max": limit, "points": (2 * limit) ** 2},
                  PASS if not violations and parity else FAIL,
                  {"violations": violations, "violation_count": len(violations),
                   "parity_exclusion": parity, "example_1_1": example})


def product_norm(x: int, y: int) -> int:
    return ((x * x - 2 * x + 1 + y * y) * (4 * x * x - 4 * x + 1 + 4 * y * y)
            * (4 * x * x + 4 * x + 1 + 4 * y * y) * (x * x + y * y))


def substituted_form(x: int, y: int) -> int:
    """(u^2 + (32v-10)u + 160v + 256v^2 + 9)^2 + 4096uv with u = (1-4x)^2, v = y^2."""
    u, v = (1 - 4 * x) ** 2, y * y
    s = u * u + (32 * v - 10) * u + 160 * v + 256 * v * v + 9
    return s * s + 4096 * u * v


def _ckroza_row(args) -> list[dict]:
    x, limit = args
    out = []
    for y in range(-limit, limit + 1):
        if y == 0:
            continue
        n = product_norm(x, y)
        problems = []
        if isqrt(n) ** 2 == n:
            problems.append("perfect square")
        # 4096 = 64^2, so the substituted form is a square iff the product is
        if substituted_form(x, y) != 4096 * n:
            problems.append("substitution chain")
        if problems:
            out.append({"x": x, "y": y, "N": n, "problems": problems})
    return out


def ckroza_scan(limit: int = 100, jobs: int = 1) -> Report:
    """|4k^3-k|^2 |k-1|^2 is never a square for k = x+yi, |x| <= limit, 0 < |y| <= limit."""
    _check_box(limit)
    violations = _rows(_ckroza_row, limit, jobs)
    return Report("ckroza-scan", "|16k^3-4k||k-1| is not an integer when Im k != 0",
                  {"max": limit, "points": (2 * limit + 1) * 2 * limit},
                  PASS if not violations else FAIL,
                  {"violations": violations, "violation_count": len(violations),
                   "example_1_1": product_norm(1, 1)})


def lemma_reports(bkroza_max: int = 200, ckroza_max: int = 100, jobs: int = 1) -> list[Report]:
    _, cases = ckroza_cases()
    return [bkroza_scan(bkroza_max, jobs), cases, ckroza_scan(ckroza_max, jobs)]


__all__ = ["BiPoly", "CkrozaCase", "Modular", "Sandwich", "QuadraticSolutionNonsquare",
           "bkroza_scan", "ckroza_cases", "ckroza_scan", "d_poly", "discriminant_factored",
           "discriminant_expanded", "factored_identity", "lemma_reports"]
