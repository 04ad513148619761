"""Command-line front end: dispatch, configuration and report emission.

Exit codes: 0 all pass, 1 any fail (or an IO error), 2 usage error,
3 undecided without failures.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass

from .errors import GaussDioError
from .gint import GaussianInt
from .highprec import DEFAULT_PRECISION
from .reports import FAIL, PASS, Report, overall_exit_code, render

PRECISION_ENV = "GAUSSDIO_PRECISION_BITS"
EXIT_USAGE = 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    precision_bits: int = DEFAULT_PRECISION
    jobs: int = 1
    fmt: str = "json"
    output: str | None = None
    timing: bool = False

    def __post_init__(self):
        if self.precision_bits < 2:
            raise UsageError("precision bits must be at least 2")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")


def _gint(text: str) -> GaussianInt:
    try:
        return GaussianInt.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _elements(text: str) -> list[GaussianInt]:
    parts = [p for p in text.split(",")]
    if not parts or any(not p.strip() for p in parts):
        raise argparse.ArgumentTypeError("elements must be a comma-separated list")
    return [_gint(p.strip()) for p in parts]


# --- command handlers --------------------------------------------------------

def cmd_verify(args, cfg: RunConfig) -> list[Report]:
    from .tuples import TupleError, verify_tuple

    try:
        t = verify_tuple(args.elements)
        return [Report("dio-tuple", "every pairwise product plus one is a square",
                       {"elements": args.elements}, PASS, t)]
    except TupleError as exc:
        return [Report("dio-tuple", "every pairwise product plus one is a square",
                       {"elements": args.elements}, FAIL, {"reason": str(exc)})]


def cmd_family(args, cfg: RunConfig) -> list[Report]:
    from .tuples import family_triple, known_extensions, verify_tuple

    fam = family_triple(args.k)
    verify_tuple(fam.elements())
    ext = known_extensions(args.k)
    return [Report("family-triple", "{k-1, k+1, 16k^3-4k} with roots r, s, t; both known extensions verified",
                   {"k": args.k}, PASS, {"triple": fam, "extensions": ext})]


def cmd_search(args, cfg: RunConfig) -> list[Report]:
    from .tuples import extend_search

    ext = extend_search(args.k, args.index_bound)
    k = args.k
    expected = {4 * k, 64 * k**5 - 48 * k**3 + 8 * k}
    got = {e.d for e in ext}
    verdict = PASS if got == expected else FAIL
    return [Report("extension-search", "extensions found on V and W up to the index bound",
                   {"k": k, "index_bound": args.index_bound}, verdict,
                   {"extensions": ext, "d": [e.d for e in ext],
                    "unexpected": sorted(got - expected, key=lambda z: (z.norm(), z.re, z.im)),
                    "missing": sorted(expected - got, key=lambda z: (z.norm(), z.re, z.im))})]


def cmd_pell_fundamental(args, cfg: RunConfig) -> list[Report]:
    from .pell import fundamental_report

    return [fundamental_report(args.k, jobs=cfg.jobs)]


def cmd_pell_intersect(args, cfg: RunConfig) -> list[Report]:
    from .pell import intersect_sequences

    ms = intersect_sequences(args.k, args.n_max, args.m_max)
    bad = [m for m in ms if not (m.m <= m.n <= 3 * m.m + 2)]
    return [Report("sequence-intersections", "matches V_n = ±W_m obey m <= n <= 3m+2",
                   {"k": args.k, "n_max": args.n_max, "m_max": args.m_max},
                   PASS if not bad else FAIL, {"matches": ms, "violations": bad})]


def cmd_sieve_candidates(args, cfg: RunConfig) -> list[Report]:
    from .sieve import sieve_report

    return [sieve_report(args.k, jobs=cfg.jobs)]


def cmd_sieve_profiles(args, cfg: RunConfig) -> list[Report]:
    from .sieve import congruence_profiles

    _, reps = congruence_profiles(args.k, args.max_index)
    return reps


def cmd_analytic_jz(args, cfg: RunConfig) -> list[Report]:
    from .analytic.jz import SYSTEM1, SYSTEM2, jz_report

    variants = [SYSTEM1, SYSTEM2] if args.variant == "both" else [args.variant]
    return [jz_report(args.k, v, cfg.precision_bits) for v in variants]


def cmd_analytic_bw(args, cfg: RunConfig) -> list[Report]:
    from .analytic.bw import bw_threshold

    return [bw_threshold(cfg.precision_bits)]


def cmd_analytic_thresholds(args, cfg: RunConfig) -> list[Report]:
    from .analytic.thresholds import threshold_manifest

    return [threshold_manifest()]


def cmd_analytic_linform(args, cfg: RunConfig) -> list[Report]:
    from .analytic.linform import derivation_check, linear_form_report, pq_bound_check

    p = cfg.precision_bits
    return [linear_form_report(args.k, args.x1, args.z1, args.m, args.n, p),
            pq_bound_check(args.k, args.m, args.n, args.x1, args.z1, p),
            derivation_check(args.k, args.x1, args.z1, args.m, p)]


def cmd_analytic_heights(args, cfg: RunConfig) -> list[Report]:
    from .analytic.heights import alpha3_conjugate_bound, heights_report

    p = cfg.precision_bits
    return [heights_report(args.k, args.x1, args.z1, p),
            alpha3_conjugate_bound(args.k, args.x1, args.z1, p)]


def cmd_lemmas_bkroza(args, cfg: RunConfig) -> list[Report]:
    from .lemma_lab import bkroza_scan

    return [bkroza_scan(args.max, cfg.jobs)]


def cmd_lemmas_ckroza_cases(args, cfg: RunConfig) -> list[Report]:
    from .lemma_lab import ckroza_cases

    return [ckroza_cases()[1]]


def cmd_lemmas_ckroza_scan(args, cfg: RunConfig) -> list[Report]:
    from .lemma_lab import ckroza_scan

    return [ckroza_scan(args.max, cfg.jobs)]


def cmd_suite(args, cfg: RunConfig) -> list[Report]:
    from .suite import run_suite

    only = None
    if args.only:
        try:
            only = sorted({int(x) for x in args.only.split(",")})
        except ValueError:
            raise UsageError("--only takes a comma-separated list of criterion numbers") from None
    return run_suite(cfg.jobs, only)


# --- parser ------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--precision-bits", type=_positive, default=argparse.SUPPRESS,
                   help=f"interval precision (default ${PRECISION_ENV} or {DEFAULT_PRECISION})")
    p.add_argument("--jobs", type=_positive, default=argparse.SUPPRESS, help="worker processes")
    p.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    p.add_argument("--output", default=argparse.SUPPRESS, help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                   help="include wall-clock timing (output is then not reproducible)")
    return p


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="gaussdio", parents=[common],
                     description="Exact and certified checks for the Gaussian-integer triple "
                                 "{k-1, k+1, 16k^3-4k}.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(subparsers, name, handler, help_text):
        sp = subparsers.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(handler=handler)
        return sp

    sp = add(sub, "verify", cmd_verify, "check a candidate Diophantine tuple")
    sp.add_argument("--elements", type=_elements, required=True, help='e.g. "1,3,120" or "1+i,2"')

    sp = add(sub, "family", cmd_family, "the family triple and its two known extensions")
    sp.add_argument("--k", type=_gint, required=True)

    sp = add(sub, "search", cmd_search, "extensions reachable from the V and W sequences")
    sp.add_argument("--k", type=_gint, required=True)
    sp.add_argument("--index-bound", type=int, default=8)

    pell = sub.add_parser("pell", help="Pell equations and sequence intersections")
    pell_sub = pell.add_subparsers(dest="pell_command", required=True, parser_class=_Parser)
    sp = add(pell_sub, "fundamental", cmd_pell_fundamental, "fundamental solutions in the disk")
    sp.add_argument("--k", type=_gint, required=True)
    sp = add(pell_sub, "intersect", cmd_pell_intersect, "all V_n = ±W_m up to index bounds")
    sp.add_argument("--k", type=_gint, required=True)
    sp.add_argument("--n-max", type=_positive, default=12)
    sp.add_argument("--m-max", type=_positive, default=12)

    sieve = sub.add_parser("sieve", help="congruence sieve")
    sieve_sub = sieve.add_subparsers(dest="sieve_command", required=True, parser_class=_Parser)
    sp = add(sieve_sub, "candidates", cmd_sieve_candidates, "fundamental classes surviving mod s")
    sp.add_argument("--k", type=_gint, required=True)
    sp = add(sieve_sub, "profiles", cmd_sieve_profiles, "sequence residues mod 4k(k-1)")
    sp.add_argument("--k", type=_gint, required=True)
    sp.add_argument("--max-index", type=_positive, default=40)

    ana = sub.add_parser("analytic", help="certified analytic checks")
    ana_sub = ana.add_subparsers(dest="analytic_command", required=True, parser_class=_Parser)
    sp = add(ana_sub, "jz", cmd_analytic_jz, "simultaneous-approximation constants")
    sp.add_argument("--k", type=_gint, required=True)
    sp.add_argument("--variant", choices=("system1", "system2", "both"), default="both")
    add(ana_sub, "bw", cmd_analytic_bw, "the final |k| threshold from linear forms in logarithms")
    add(ana_sub, "thresholds", cmd_analytic_thresholds, "certify every |k| threshold")
    for name, handler, text in (("linform", cmd_analytic_linform, "linear-form bounds"),
                                ("heights", cmd_analytic_heights, "minimal polynomials and heights")):
        sp = add(ana_sub, name, handler, text)
        sp.add_argument("--k", type=_gint, required=True)
        sp.add_argument("--x1", type=_gint, default=GaussianInt(1))
        sp.add_argument("--z1", type=_gint, default=GaussianInt(1))
        if name == "linform":
            sp.add_argument("--m", type=int, default=3)
            sp.add_argument("--n", type=int, default=3)

    lem = sub.add_parser("lemmas", help="irrationality lemma verifiers")
    lem_sub = lem.add_subparsers(dest="lemmas_command", required=True, parser_class=_Parser)
    sp = add(lem_sub, "bkroza", cmd_lemmas_bkroza, "|k+1||k-1| is never an integer")
    sp.add_argument("--max", type=_positive, default=200)
    add(lem_sub, "ckroza-cases", cmd_lemmas_ckroza_cases, "discriminant case split over w")
    sp = add(lem_sub, "ckroza-scan", cmd_lemmas_ckroza_scan, "|16k^3-4k||k-1| is never an integer")
    sp.add_argument("--max", type=_positive, default=100)

    sp = add(sub, "paper-suite", cmd_suite, "run the full acceptance battery")
    sp.add_argument("--only", default=None, help="comma-separated criterion numbers")
    return parser


def _config(ns) -> RunConfig:
    prec = getattr(ns, "precision_bits", None)
    if prec is None:
        env = os.environ.get(PRECISION_ENV)
        if env:
            try:
                prec = int(env)
            except ValueError:
                raise UsageError(f"${PRECISION_ENV} must be an integer") from None
        else:
            prec = DEFAULT_PRECISION
    return RunConfig(precision_bits=prec, jobs=getattr(ns, "jobs", 1),
                     fmt=getattr(ns, "format", "json"), output=getattr(ns, "output", None),
                     timing=getattr(ns, "timing", False))


def emit_report(reports: list[Report], cfg: RunConfig) -> str:
    text = render(reports, cfg.fmt, cfg.timing)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = _config(ns)
    except UsageError as exc:
        print(f"gaussdio: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        reports = ns.handler(ns, cfg)
    except UsageError as exc:
        print(f"gaussdio: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GaussDioError, ValueError) as exc:
        # precondition violations are input errors
        print(f"gaussdio: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start
    # handlers that do not time their own reports share the wall time evenly
    for r in reports:
        if r.timing is None:
            r.timing = elapsed / len(reports)
    try:
        emit_report(reports, cfg)
    except OSError as exc:
        print(f"gaussdio: error writing report: {exc}", file=sys.stderr)
        return 1
    return overall_exit_code(reports)


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
