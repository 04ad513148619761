"""Congruence machinery for the V and W sequences.

Residues modulo s = 4k^2-2k-1 eliminate fundamental classes; residues
modulo 4k(k-1) give the affine congruence forms and, through them, the
index lower bound for any nontrivial intersection V_n = ±W_m.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError, UnexpectedSurvivor
from .gint import GaussianInt, IntLike, exact_quotient, gi_divides, gi_mod
from .highprec import DEFAULT_PRECISION, HighPrecReal, ivctx
from .pell import (FundamentalSolution, Match, disk_bound, family_equation_e2,
                   require_k_above, sequence_terms, v_spec, w_fundamentals, w_spec_from, w_specs)
from .reports import FAIL, PASS, Report


@dataclass(frozen=True)
class ResidueClass:
    modulus: GaussianInt
    representative: GaussianInt

    @classmethod
    def of(cls, value: IntLike, modulus: IntLike) -> "ResidueClass":
        modulus = GaussianInt.of(modulus)
        return cls(modulus, gi_mod(value, modulus))

    def __post_init__(self):
        if gi_mod(self.representative, self.modulus) != self.representative:
            raise ValueError("representative is not canonical")

    def to_json(self) -> dict:
        return {"modulus": self.modulus.to_json(), "representative": self.representative.to_json()}


def _k17(k: IntLike) -> GaussianInt:
    k = GaussianInt.of(k)
    require_k_above(k, 289, "17")
    return k


def _s(k: GaussianInt) -> GaussianInt:
    return 4 * k**2 - 2 * k - 1


def _spec_for(k: GaussianInt, seq):
    if seq == "V":
        return v_spec(k)
    if isinstance(seq, str) and len(seq) == 2 and seq[0] == "W" and seq[1] in "123456":
        return w_specs(k)[int(seq[1]) - 1]
    if isinstance(seq, FundamentalSolution):
        return w_spec_from(k, seq.x0, seq.z0)
    x1, z1 = seq
    return w_spec_from(k, GaussianInt.of(x1), GaussianInt.of(z1))


def residues_mod_s(k: IntLike, seq, depth: int) -> set[ResidueClass]:
    """Residues of terms 0..depth of V, W1..W6 or the W-sequence of (x1, z1) mod s."""
    k = _k17(k)
    s = _s(k)
    spec = _spec_for(k, seq)
    out = {ResidueClass.of(t, s) for t in sequence_terms(spec, depth + 1)}
    if seq == "V" and depth >= 5:
        expected = expected_v_residues(k)
        if out != expected:
            raise AssertionError(f"V residues mod s at k={k} differ from {{0, ±1, ±(2k-1)}}")
    return out


def expected_v_residues(k: GaussianInt) -> set[ResidueClass]:
    s = _s(k)
    return {ResidueClass.of(v, s) for v in (0, 1, -1, 2 * k - 1, 1 - 2 * k)}


def six_class_set(k: IntLike) -> set[tuple[GaussianInt, GaussianInt]]:
    """{(±1,±1), (±k,±(4k^2+2k-1)), (±(2k-1),±(8k^2-1))} with x in principal form."""
    k = GaussianInt.of(k)
    out = set()
    for x1, z1 in w_fundamentals(k):
        if x1.principal() != x1:
            x1, z1 = -x1, -z1
        out.add((x1, z1))
        out.add((x1, -z1))
    return out


@dataclass(frozen=True)
class SieveVerdict:
    x1: GaussianInt
    z1: GaussianInt
    survives: bool
    reason: str
    details: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"x1": self.x1, "z1": self.z1, "survives": self.survives,
                "reason": self.reason, "details": self.details}


def classify_fundamental(k: GaussianInt, x1: GaussianInt, z1: GaussianInt,
                         depth: int = 8) -> SieveVerdict:
    """Decide whether the W-sequence of (x1, z1) can meet V, by residues mod s.

    x-branch: x1 is congruent to a V residue; it survives only when x1 equals
    that small residue literally, since otherwise |x1| >= |s| - |2k-1| leaves
    the fundamental disk.
    z-branch: z1(k-1) is congruent to a V residue; then z1 = u*s + r with
    r in {0, ±4k, ±(4k+2)} and only u = ±1 with r = ±4k (same sign) survives.
    """
    s = _s(k)
    v_res = expected_v_residues(k)
    v_reps = {0: GaussianInt(0), 1: GaussianInt(1), -1: GaussianInt(-1),
              2: 2 * k - 1, -2: 1 - 2 * k}
    w_res = residues_mod_s(k, (x1, z1), depth)
    if not (w_res & v_res):
        return SieveVerdict(x1, z1, False, "residues mod s disjoint from those of V")
    details: dict = {}
    # x-branch
    xr = gi_mod(x1, s)
    for label, rho in v_reps.items():
        if gi_mod(rho, s) == xr:
            details["x_residue"] = rho
            if x1 == rho and x1:
                return SieveVerdict(x1, z1, True, "x1 equals a residue of V", details)
            details["x_branch"] = "x1 congruent to a V residue but not equal"
    # z-branch: r = rho * (k-1)^{-1} mod s with (k-1)^{-1} = -4k-2
    inv = -4 * k - 2
    assert gi_mod((k - 1) * inv, s) == 1
    zr = gi_mod(z1 * (k - 1), s)
    r_candidates = {0: GaussianInt(0), 1: 4 * k, -1: -4 * k, 2: 4 * k + 2, -2: -4 * k - 2}
    for label, rho in v_reps.items():
        if gi_mod(rho, s) != zr:
            continue
        r = next(r for r in r_candidates.values() if gi_mod(r * (k - 1) - rho, s) == 0)
        u = exact_quotient(z1 - r, s)
        assert u is not None
        details.update({"r": r, "u": u})
        if not gi_divides(k, 1 - z1 * z1):
            return SieveVerdict(x1, z1, False, "k does not divide 1 - z1^2", details)
        if u.norm() <= 4:
            if u.norm() != 1 or u.im != 0:
                # k | 1-u^2 or k | 1-(u±2)^2 with a nonzero small value
                return SieveVerdict(x1, z1, False, "small u fails k | 1-u^2, 1-(u±2)^2", details)
            if r == -u * (4 * k + 2):
                return SieveVerdict(x1, z1, False, "u = ±1 with r = ∓(4k+2) makes x1^2 non-integral",
                                    details)
            if r == u * 4 * k:
                return SieveVerdict(x1, z1, True, "z1 = u*s + 4uk with u = ±1", details)
            return SieveVerdict(x1, z1, False, "u = ±1 with incompatible r", details)
        return SieveVerdict(x1, z1, False, "|u| >= sqrt 5 leaves the fundamental disk", details)
    return SieveVerdict(x1, z1, False, details.get("x_branch", "no branch applies"), details)


def candidate_fundamentals(k: IntLike, raw, depth: int = 8) -> list[FundamentalSolution]:
    """Filter raw fundamental classes down to those whose W can meet V.

    Raises UnexpectedSurvivor when a class outside the six-class set gets
    through; the filter never adds classes.
    """
    k = _k17(k)
    expected = six_class_set(k)
    kept, unexpected = [], []
    for sol in raw:
        v = classify_fundamental(k, sol.x0, sol.z0, depth)
        if v.survives:
            kept.append(sol)
            if (sol.x0, sol.z0) not in expected:
                unexpected.append((sol.x0, sol.z0))
    if unexpected:
        raise UnexpectedSurvivor(k, unexpected)
    return kept


def _principal_pair(x: GaussianInt, z: GaussianInt):
    return (x, z) if x.principal() == x else (-x, -z)


def compare_with_class_set(k: GaussianInt, kept) -> dict:
    """Compare survivors with the six-class set.

    A listed class can lie outside the fundamental disk; it then has to sit
    one unit step from a survivor, i.e. generate the same W-sequence up to
    an index shift.
    """
    from .pell import step_solution

    eq = family_equation_e2(k)
    n_max = disk_bound(eq)
    got = {(s.x0, s.z0) for s in kept}
    expected = six_class_set(k)
    unexpected = sorted(got - expected, key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    linked, unlinked = [], []
    for x, z in sorted(expected - got, key=lambda p: (p[0].sort_key(), p[1].sort_key())):
        neighbours = [_principal_pair(*step_solution(eq, (x, z), d)) for d in ("forward", "backward")]
        hit = [nb for nb in neighbours if nb in got]
        row = {"class": [x, z], "outside_disk": x.norm() > n_max, "linked_to": hit}
        (linked if hit and x.norm() > n_max else unlinked).append(row)
    return {"literal_equal": got == expected, "unexpected": unexpected,
            "outside_disk_linked": linked, "missing_unexplained": unlinked,
            "disk_norm_bound": n_max}


def sieve_report(k: IntLike, jobs: int = 1) -> Report:
    from .pell import enumerate_fundamental

    k = _k17(k)
    raw = enumerate_fundamental(family_equation_e2(k), k, jobs=jobs)
    verdicts = [classify_fundamental(k, s.x0, s.z0) for s in raw]
    kept = [s for s, v in zip(raw, verdicts) if v.survives]
    cmp = compare_with_class_set(k, kept)
    ok = not cmp["unexpected"] and not cmp["missing_unexplained"]
    return Report("candidate-fundamentals",
                  "surviving classes lie in {(±1,±1), (±k,±(4k^2+2k-1)), (±(2k-1),±(8k^2-1))} "
                  "and generate all of its sequences",
                  {"k": k, "raw_count": len(raw)}, PASS if ok else FAIL,
                  {"classes": verdicts, **cmp})


# ---- congruences modulo 4k(k-1) -----------------------------------------

Linear = tuple  # (slope, intercept) of an integer-valued linear function of the half index


@dataclass(frozen=True)
class CongruenceProfile:
    """W_{2m'+p} (or V_n) is congruent to A(m')*k + B(m') modulo 4k(k-1)."""

    sequence: str
    parity: str
    coeff_of_k: Linear
    constant: Linear
    printed_matches: bool = True

    def evaluate(self, k: GaussianInt, half: int) -> GaussianInt:
        a = self.coeff_of_k[0] * half + self.coeff_of_k[1]
        b = self.constant[0] * half + self.constant[1]
        return a * k + b

    def to_json(self) -> dict:
        return {"sequence": self.sequence, "parity": self.parity,
                "coeff_of_k": list(self.coeff_of_k), "constant": list(self.constant),
                "printed_matches": self.printed_matches}


# (A, B) with A = a1*m' + a0, B = b1*m' + b0
W_FORMS = {
    ("W1", "even"): ((-2, 0), (2, 1)),
    ("W1", "odd"): ((2, 3), (-2, -2)),
    ("W2", "even"): ((2, 0), (-2, 1)),
    ("W2", "odd"): ((-2, 1), (2, 0)),
    ("W3", "even"): ((2, 1), (-2, 0)),
    ("W3", "odd"): ((-2, 0), (2, 1)),
    ("W4", "even"): ((-2, 1), (2, 0)),
    ("W4", "odd"): ((2, 2), (-2, -1)),
    ("W5", "even"): ((2, 2), (-2, -1)),
    ("W5", "odd"): ((-2, -1), (2, 2)),
    ("W6", "even"): ((-2, 2), (2, -1)),
    ("W6", "odd"): ((2, 1), (-2, 0)),
}

# forms as printed where they differ from the verified ones above
PRINTED_DIFFERENT = {
    ("W4", "odd"): ((2, 0), (-2, -1)),
    ("W5", "odd"): ((-2, -1), (2, 0)),
}


def v_residue_mod(k: GaussianInt, n: int) -> GaussianInt:
    """1 for n = 0, 3 mod 4 and 2k-1 for n = 1, 2 mod 4."""
    return GaussianInt(1) if n % 4 in (0, 3) else 2 * k - 1


def profiles() -> list[CongruenceProfile]:
    out = []
    for (seq, parity), (a, b) in W_FORMS.items():
        out.append(CongruenceProfile(seq, parity, a, b, (seq, parity) not in PRINTED_DIFFERENT))
    return out


def congruence_profiles(k: IntLike, max_m: int):
    """Check V and all W congruences modulo 4k(k-1) for every index up to max_m."""
    k = GaussianInt.of(k)
    if k.norm() <= 1:
        raise PreconditionError("congruence profiles need |k| > 1")
    mod = 4 * k * (k - 1)
    reports = []
    v_terms = sequence_terms(v_spec(k), max_m + 1)
    bad = [n for n, t in enumerate(v_terms) if not gi_divides(mod, t - v_residue_mod(k, n))]
    reports.append(Report("congruence-v", "V_n mod 4k(k-1) is 1 or 2k-1 by n mod 4",
                          {"k": k, "max_index": max_m}, PASS if not bad else FAIL,
                          {"mismatched_indices": bad}))
    profs = profiles()
    specs = dict(zip(("W1", "W2", "W3", "W4", "W5", "W6"), w_specs(k)))
    for prof in profs:
        terms = sequence_terms(specs[prof.sequence], max_m + 1)
        p = 0 if prof.parity == "even" else 1
        bad = []
        printed_bad = []
        printed = PRINTED_DIFFERENT.get((prof.sequence, prof.parity))
        for idx in range(p, max_m + 1, 2):
            half = idx // 2
            if not gi_divides(mod, terms[idx] - prof.evaluate(k, half)):
                bad.append(idx)
            if printed is not None:
                alt = CongruenceProfile(prof.sequence, prof.parity, *printed)
                if not gi_divides(mod, terms[idx] - alt.evaluate(k, half)):
                    printed_bad.append(idx)
        wit = {"form": prof, "mismatched_indices": bad}
        if printed is not None:
            wit["printed_form"] = {"coeff_of_k": list(printed[0]), "constant": list(printed[1]),
                                   "mismatched_indices": printed_bad}
        reports.append(Report(f"congruence-{prof.sequence.lower()}-{prof.parity}",
                              f"{prof.sequence} at {prof.parity} indices mod 4k(k-1) matches A(m)k+B(m)",
                              {"k": k, "max_index": max_m}, PASS if not bad else FAIL, wit))
    return profs, reports


# ---- index lower bound ---------------------------------------------------

EXCLUDED = "excluded"
SMALL_INDEX = "small_index"
BOUND = "bound"


@dataclass(frozen=True)
class IndexClassification:
    kind: str
    reason: str
    half_index: int
    residual_k_coeff: int
    residual_const: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "reason": self.reason, "half_index": self.half_index,
                "residual": [self.residual_k_coeff, self.residual_const]}


def index_lower_bound(k: IntLike, match: Match) -> IndexClassification:
    """Classify V_n = ±W_m^(j) by the congruence residual modulo 4k(k-1).

    The residual sign*(A k + B) - v is A'k + B' = A'(k-1) + (A'+B'). For
    |k| > 17 it can vanish mod 4k(k-1) only when A'+B' = 0 and 4k | A'.
    With A' = 2e this is 2k | e, and e = ±(m'+δ) with |δ| <= 1, so either
    e = 0 (the known small solutions) or m' >= 2|k|-1.
    """
    k = _k17(k)
    mod = 4 * k * (k - 1)
    half, rem = divmod(match.m, 2)
    parity = "even" if rem == 0 else "odd"
    (a1, a0), (b1, b0) = W_FORMS[(f"W{match.j}", parity)]
    big_a, big_b = a1 * half + a0, b1 * half + b0
    sgn = 1 if match.sign == "+" else -1
    va, vb = (0, 1) if match.n % 4 in (0, 3) else (2, -1)
    ap, bp = sgn * big_a - va, sgn * big_b - vb
    residual = ap * k + bp
    if ap + bp != 0:
        # (k-1) | (A'+B'), a nonzero rational integer of size 2
        assert not gi_divides(k - 1, GaussianInt(ap + bp))
        return IndexClassification(EXCLUDED, f"k-1 divides {ap + bp}: impossible for |k| > 17",
                                   half, ap, bp)
    if ap == 0:
        assert gi_divides(mod, residual)
        return IndexClassification(SMALL_INDEX, "residual vanishes identically", half, ap, bp)
    if ap % 2:
        return IndexClassification(EXCLUDED, f"4k divides odd {ap}: impossible", half, ap, bp)
    e = ap // 2
    if gi_divides(mod, residual):
        assert gi_divides(2 * k, GaussianInt(e))
        # |e| >= 2|k| and |e| <= m'+1 give m' >= 2|k|-1
        assert abs(e) <= half + 1
        assert e * e >= 4 * k.norm()
        return IndexClassification(BOUND, f"2k divides {e}, so the half index is >= 2|k|-1",
                                   half, ap, bp)
    return IndexClassification(EXCLUDED, f"2k does not divide {e}", half, ap, bp)


def lower_bound_x(k: IntLike, precision_bits: int = DEFAULT_PRECISION) -> HighPrecReal:
    """(8|k|^2-4|k|-3)^(4|k|-3) as a certified interval."""
    k = _k17(k)
    ctx = ivctx(precision_bits)
    from .gint import gi_abs

    ka = gi_abs(k, precision_bits).iv
    base = 8 * ka * ka - 4 * ka - 3
    return HighPrecReal(ctx.exp((4 * ka - 3) * ctx.log(base)), precision_bits)


def lower_bound_log10_x(k: IntLike, precision_bits: int = DEFAULT_PRECISION) -> HighPrecReal:
    k = _k17(k)
    ctx = ivctx(precision_bits)
    from .gint import gi_abs

    ka = gi_abs(k, precision_bits).iv
    base = 8 * ka * ka - 4 * ka - 3
    return HighPrecReal((4 * ka - 3) * ctx.log(base) / ctx.log(10), precision_bits)


def index_bound_report(k: IntLike, n_max: int = 8, m_max: int = 8) -> Report:
    from .pell import intersect_sequences

    k = _k17(k)
    matches = intersect_sequences(k, n_max, m_max)
    rows = [{"match": mt, "classification": index_lower_bound(k, mt)} for mt in matches]
    # real matches are the known small ones; a bound here would be a discovery
    ok = all(r["classification"].kind == SMALL_INDEX for r in rows)
    return Report("index-lower-bound",
                  "every intersection within range is one of the small-index solutions",
                  {"k": k, "n_max": n_max, "m_max": m_max}, PASS if ok else FAIL,
                  {"matches": rows, "log10_lower_bound_x": lower_bound_log10_x(k)})
