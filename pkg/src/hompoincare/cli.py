"""Command-line front end: compute series, top terms, stability ranges and generators, and run the check suites."""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import factorial

from . import analysis, invariants, poincare, refdata
from .exactalg import ONE, T, Poly, format_plain, truncate
from .partitions import (emb_count, emb_count_signed, enum_partitions,
                         enum_signed_partitions, stirling1, stirling2, theta)
from .weylgroups import (BUDGETS, BudgetExceeded, Family, GroupSpec, cycle_partition,
                         enumerate_group, hyperoctahedral_group, signed_cycle_partition,
                         symmetric_group, weyl_order)

SCHEMA = "hompoincare.series/1"
SUITES = ("combinatorics", "formulas", "topterms", "stability", "invariants", "fixtures")

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- formatting ------------------------------------------------------------

def format_latex(p: Poly) -> str:
    parts = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if i == 0:
            body = str(c)
        else:
            mono = "t" if i == 1 else f"t^{{{i}}}"
            body = mono if c == 1 else f"{c} {mono}"
        parts.append(body)
    return "+".join(parts) or "0"


def series_record(spec: GroupSpec, m: int, p: Poly, method: str) -> dict:
    return {"schema": SCHEMA, "group": spec.label, "m": m, "method": method,
            "coefficients": [int(c) for c in p.coeffs]}


def render_series(spec: GroupSpec, m: int, p: Poly, method: str, fmt: str) -> str:
    if fmt == "plain":
        return format_plain(p)
    if fmt == "latex":
        return format_latex(p)
    if fmt == "csv":
        rows = ["degree,coefficient"]
        rows += [f"{i},{c}" for i, c in enumerate(p.coeffs) if c]
        return "\n".join(rows)
    return json.dumps(series_record(spec, m, p, method), separators=(",", ":"))


def _spec(args) -> GroupSpec:
    try:
        family = GroupSpec.parse(args.family, 1).family
        if not family.exceptional and args.rank is None:
            raise UsageError(f"--rank is required for {family.value}")
        return GroupSpec(family, args.rank or 0)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_m(m: int) -> None:
    if m < 1:
        raise UsageError("-m must be a positive integer")


# --- commands --------------------------------------------------------------

def cmd_series(args) -> int:
    spec = _spec(args)
    _check_m(args.m)
    method = args.method or ("oracle" if spec.exceptional else "formula")
    if spec.exceptional and method in ("formula", "both"):
        raise UsageError(f"no closed formula for {spec.label}; use --method oracle")
    if method == "both":
        a = poincare.series_formula(spec, args.m)
        b = poincare.series_oracle(spec, args.m, args.budget)
        print(f"formula: {render_series(spec, args.m, a, 'formula', args.format)}")
        print(f"oracle:  {render_series(spec, args.m, b, 'oracle', args.format)}")
        print("match" if a == b else "MISMATCH")
        return EXIT_OK if a == b else EXIT_FAIL
    p = poincare.compute(spec, args.m, method, args.budget)
    print(render_series(spec, args.m, p, method, args.format))
    return EXIT_OK


def cmd_top(args) -> int:
    spec = _spec(args)
    _check_m(args.m)
    try:
        want = analysis.predicted_top(spec, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    got = analysis.top_term(poincare.compute(spec, args.m, budget=args.budget))
    ok = got == want
    print(f"coeff {got.coefficient} deg {got.degree} | predicted {want.coefficient},{want.degree} | "
          f"{'OK' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_stability(args) -> int:
    if args.rank is None:
        raise UsageError("--rank is required")
    _check_m(args.m)
    try:
        rep = analysis.stability_scan(Family(GroupSpec.parse(args.family, 1).family), args.m, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"{rep.family.value} m={rep.m} n={rep.n}: agreement {rep.agreement_degree} "
          f"(expected {rep.expected}), strict growth at {rep.strict_growth_at} | "
          f"{'OK' if rep.ok else 'MISMATCH'}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_generators(args) -> int:
    spec = _spec(args)
    _check_m(args.m)
    try:
        gens = invariants.gen_set(spec.family, args.m, spec.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for g in sorted(gens, key=lambda g: g.degree):
        print(f"{g}\t{g.degree}")
    if not args.relations:
        return EXIT_OK
    if (spec.family, spec.n, args.m) != (Family.SU, 3, 2):
        raise UsageError("--relations is available for SU(3) with m = 2 only")
    rep = invariants.su3_ring_report()
    print(f"relations vanish: {rep.relations_vanish}")
    print(f"cubes vanish: {rep.cubes_vanish}")
    print(f"presented series: {format_plain(rep.presented_series)}")
    print(f"ring series:      {format_plain(rep.ring_series)}")
    print(f"fixture series:   {format_plain(rep.fixture)}")
    if rep.vanishing_products:
        print(f"also zero in the ring: {', '.join(rep.vanishing_products)}")
    print("OK" if rep.ok else "MISMATCH")
    return EXIT_OK if rep.ok else EXIT_FAIL


# --- verification suites ---------------------------------------------------

@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""


def _first_failure(cases):
    """Return a description of the first failing case, or '' when all pass."""
    for label, ok in cases:
        if not ok:
            return str(label)
    return ""


def _check(suite, name, cases) -> Check:
    detail = _first_failure(cases)
    return Check(suite, name, not detail, detail)


def _within(spec: GroupSpec, budget) -> bool:
    return weyl_order(spec) <= BUDGETS[budget]


def _classical_grid():
    for fam, top in ((Family.U, 5), (Family.SU, 5), (Family.Sp, 4),
                     (Family.SOodd, 4), (Family.SOeven, 4)):
        for n in range(1, top + 1):
            for m in (1, 2, 3):
                yield GroupSpec(fam, n), m


def suite_combinatorics(budget):
    def counting():
        for n in range(1, 8):
            counts = Counter(cycle_partition(w) for w in symmetric_group(n))
            for k in range(n + 1):
                for lam in enum_partitions(k):
                    for i in range(n - k + 1):
                        lhs = sum(c * emb_count(lam, mu) for mu, c in counts.items()
                                  if len(mu) - len(lam) == i)
                        rhs = Fraction(factorial(n) * stirling1(n - k, i),
                                       theta(lam) * factorial(n - k))
                        yield (n, str(lam), i), lhs == rhs

    def counting_signed():
        for n in range(1, 6):
            counts = Counter(signed_cycle_partition(w) for w in hyperoctahedral_group(n))
            for k in range(n + 1):
                for lam in enum_signed_partitions(k):
                    for i in range(n - k + 1):
                        lhs = sum(c * emb_count_signed(lam, mu) for mu, c in counts.items()
                                  if len(mu) - len(lam) == i)
                        rhs = Fraction(2 ** (n - len(lam)) * factorial(n) * stirling1(n - k, i),
                                       theta(lam.positive) * factorial(n - k))
                        yield (n, str(lam), i), lhs == rhs

    def counting_even():
        for n in range(2, 6):
            counts = Counter(signed_cycle_partition(w) for w in hyperoctahedral_group(n, even=True))
            lams = enum_signed_partitions(n - 1)
            total = {lam: sum(c * emb_count_signed(lam, mu) for mu, c in counts.items()) for lam in lams}
            for a, b in combinations(lams, 2):
                if a.positive == b.positive and sum(x != y for x, y in zip(a.parts, b.parts)) == 1:
                    yield (n, str(a), str(b)), total[a] == total[b]

    def rising():
        x = T
        for n in range(1, 13):
            lhs = sum((Poly.monomial(k, stirling1(n, k)) for k in range(n + 1)), Poly())
            rhs = ONE
            for j in range(n):
                rhs = rhs * (x + j)
            yield n, lhs == rhs

    def alternating():
        for n in range(2, 13):
            yield n, sum((-1) ** k * factorial(k - 1) * stirling2(n, k) for k in range(1, n + 1)) == 0

    def class_sizes():
        for k in range(9):
            yield k, sum(Fraction(factorial(k), theta(lam)) for lam in enum_partitions(k)) == factorial(k)

    s = "combinatorics"
    yield _check(s, "cycle-type embedding counts over S_n, n <= 7", counting())
    yield _check(s, "signed embedding counts over B_n, n <= 5", counting_signed())
    yield _check(s, "one-sign swaps over the even-sign subgroup, n <= 5", counting_even())
    yield _check(s, "first-kind Stirling rising factorial, n <= 12", rising())
    yield _check(s, "second-kind Stirling alternating sum, n <= 12", alternating())
    yield _check(s, "class sizes sum to k!, k <= 8", class_sizes())


def suite_formulas(budget):
    def equal():
        for spec, m in _classical_grid():
            if _within(spec, budget):
                yield (spec.label, m), poincare.series_formula(spec, m) == poincare.series_oracle(spec, m, budget)

    def odd_orthogonal():
        for n in range(1, 5):
            for m in (1, 2, 3):
                yield (n, m), (poincare.series_formula(GroupSpec(Family.SOodd, n), m)
                               == poincare.series_formula(GroupSpec(Family.Sp, n), m))

    yield _check("formulas", "closed formula equals the Weyl-group average", equal())
    yield _check("formulas", "SO(2n+1) and Sp(n) series agree, n <= 4", odd_orthogonal())


def suite_topterms(budget):
    def tops():
        for spec, m in _classical_grid():
            p = poincare.series_formula(spec, m)
            yield (spec.label, m), analysis.top_term(p) == analysis.predicted_top(spec, m)

    def palindromes():
        for spec, m in _classical_grid():
            if analysis.is_torus_or_trivial(spec):
                continue
            yield (spec.label, m), analysis.is_palindromic(poincare.series_formula(spec, m)) == (m % 2 == 1)

    def fixture_tops():
        for label in refdata.EXCEPTIONAL:
            spec = GroupSpec(Family(label))
            fx = refdata.load_fixture(label, 2)
            got = analysis.TopTerm(fx.coefficients[-1], fx.degree)
            yield label, got == analysis.predicted_top(spec, 2)

    yield _check("topterms", "leading term matches the closed form", tops())
    yield _check("topterms", "palindromic exactly for odd m", palindromes())
    yield _check("topterms", "reference exceptional series end in (rank+1) t^dim", fixture_tops())


def suite_stability(budget):
    def cases():
        for m in (1, 2, 3):
            for n in range(m, 6):
                for fam in (Family.U, Family.SU):
                    if fam is Family.SU and n < 2:
                        continue
                    yield (fam.value, m, n), analysis.stability_scan(fam, m, n).ok
        for m in (2, 3):
            for n in range(1, 4):
                for fam in (Family.Sp, Family.SOodd):
                    yield (fam.value, m, n), analysis.stability_scan(fam, m, n).ok

    yield _check("stability", "series stabilize exactly in the predicted range", cases())


def suite_invariants(budget):
    s = "invariants"

    def dims():
        grid = [(f, n, m, 8) for f in ("U", "Sp", "SOodd") for n in (1, 2, 3) for m in (1, 2)]
        grid.append(("SOeven", 3, 2, 6))
        for fam, n, m, top in grid:
            series = poincare.series_formula(GroupSpec(Family(fam), n), m)
            for d in range(top + 1):
                yield (fam, n, m, d), invariants.invariant_dim(fam, m, n, d) == series.coeff(d)

    def low_dim():
        for fam in (Family.U, Family.SU, Family.Sp, Family.SOodd):
            for n in range(1, 5):
                for m in (1, 2, 3):
                    if fam in (Family.U, Family.SU):
                        if n < m or (fam is Family.SU and n < 2):
                            continue
                        N = 2 * n - m
                    else:
                        N = 2 * n + 1
                    gens = invariants.gen_set(fam, m, n)
                    free = invariants.free_gca_hilbert([(g.degree, g.odd) for g in gens], N)
                    yield (fam.value, n, m), free == truncate(poincare.series_formula(GroupSpec(fam, n), m), N)

    def invariance():
        for fam in ("U", "Sp", "SOodd"):
            for n in (1, 2, 3):
                group = enumerate_group(GroupSpec(Family(fam), n))
                for m in (1, 2):
                    for g in invariants.gen_set(fam, m, n):
                        z = invariants.z_elem(g, n, m)
                        yield (fam, n, m, str(g)), all(invariants.apply_group_element(z, w) == z for w in group)

    def newton():
        for n in range(1, 5):
            for m in range(1, 4):
                for k in range(1, m + 1):
                    for I in combinations(range(1, m + 1), k):
                        for d in (1, 2, 3):
                            yield (d, I, n, m), invariants.check_newton(d, I, n, m)

    def coinv():
        for n in range(1, 5):
            for k in range(1, n + 1):
                yield (k, n), invariants.check_coinv(k, n)

    def antisym():
        for n in range(1, 5):
            for ks in product(range(4), repeat=n):
                yield (ks, n), invariants.check_antisym(ks, n)

    def least():
        rng = random.Random(20240101)
        for _ in range(200):
            n = rng.randint(1, 4)
            m = rng.randint(1, 3)
            subsets = [I for r in range(1, m + 1) for I in combinations(range(1, m + 1), r)]
            factors = [(rng.randint(1, 3), rng.choice(subsets)) for _ in range(rng.randint(1, n))]
            p = invariants.product_of(factors, n, m)
            if p.is_zero():
                continue
            want = invariants.least_term_closed_form(factors, n, m)
            yield (factors, n, m), invariants.least_term(p, m, n) == want

    def distinct():
        for n in (1, 2, 3):
            for m in (1, 2):
                yield (n, m), invariants.v_least_terms_distinct(m, n, 8)

    def minimal():
        for n in (1, 2, 3):
            yield n, not invariants.redundant_generators("U", 2, n)

    yield _check(s, "invariant dimensions match the series", dims())
    yield _check(s, "free algebra on the generators agrees in low degrees", low_dim())
    yield _check(s, "generators are fixed by the Weyl group", invariance())
    yield _check(s, "Newton-type identities", newton())
    yield _check(s, "complete homogeneous sums vanish in the coinvariants", coinv())
    yield _check(s, "antisymmetrization identity", antisym())
    yield _check(s, "least term of generator products", least())
    yield _check(s, "least terms of independent products are distinct", distinct())
    yield _check(s, "no U generator is redundant, m = 2, n <= 3", minimal())


def suite_fixtures(budget):
    def classical():
        for n in range(2, 7):
            fx = refdata.load_fixture(f"SU({n})", 2)
            yield fx.key, tuple(poincare.series_formula(GroupSpec(Family.SU, n), 2).coeffs) == fx.coefficients

    def exceptional():
        for label in ("G2", "F4", "E6", "E7"):
            spec = GroupSpec(Family(label))
            if not _within(spec, budget):
                continue
            fx = refdata.load_fixture(label, 2)
            yield fx.key, tuple(poincare.series_oracle(spec, 2, budget).coeffs) == fx.coefficients

    def well_formed():
        for key in refdata.fixture_keys():
            label, _, m = key.partition(",m=")
            fx = refdata.load_fixture(label, int(m))
            yield key, fx.coefficients[0] == 1 and min(fx.coefficients) >= 0

    yield _check("fixtures", "every fixture record is well formed", well_formed())
    yield _check("fixtures", "SU(n) closed form reproduces the reference series", classical())
    yield _check("fixtures", "Weyl-group average reproduces the reference exceptional series", exceptional())


SUITE_FUNCS = {
    "combinatorics": suite_combinatorics,
    "formulas": suite_formulas,
    "topterms": suite_topterms,
    "stability": suite_stability,
    "invariants": suite_invariants,
    "fixtures": suite_fixtures,
}


def run_suite(name: str, budget: str = "small"):
    names = SUITES if name == "all" else (name,)
    for n in names:
        try:
            yield from SUITE_FUNCS[n](budget)
        except refdata.ValidationFailure as exc:
            yield Check(n, "reference data", False, str(exc))


def cmd_verify(args) -> int:
    results = []
    for chk in run_suite(args.suite, args.budget):
        results.append(chk)
        if args.format != "json":
            line = f"{'PASS' if chk.ok else 'FAIL'} [{chk.suite}] {chk.name}"
            print(line + (f": first counterexample {chk.detail}" if not chk.ok else ""), flush=True)
    ok = all(c.ok for c in results)
    if args.format == "json":
        print(json.dumps({"schema": "hompoincare.verify/1", "suite": args.suite, "ok": ok,
                          "checks": [c.__dict__ for c in results]}, separators=(",", ":")))
    else:
        print("OK" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_FAIL


# --- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hompoincare", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group_args(p, rank_required=False):
        p.add_argument("--family", required=True, help="U, SU, Sp, SOodd, SOeven, G2, F4, E6, E7, E8")
        p.add_argument("--rank", type=int, required=rank_required,
                       help="n for U(n), SU(n), Sp(n), SO(2n+1), SO(2n)")
        p.add_argument("-m", type=int, default=2, help="number of commuting elements")
        p.add_argument("--budget", choices=list(BUDGETS), default="small")

    p = sub.add_parser("series", help="print the Poincare series")
    group_args(p)
    p.add_argument("--method", choices=["formula", "oracle", "both"])
    p.add_argument("--format", choices=["plain", "json", "csv", "latex"], default="plain")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("top", help="compare the leading term with its closed form")
    group_args(p)
    p.set_defaults(func=cmd_top)

    p = sub.add_parser("stability", help="stable range between rank n and n+1")
    group_args(p, rank_required=True)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("generators", help="list the minimal generators of the invariant ring")
    group_args(p)
    p.add_argument("--relations", action="store_true",
                   help="also check the quadratic presentation (SU(3), m = 2)")
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("verify", help="run a check suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--budget", choices=list(BUDGETS), default="small")
    p.add_argument("--format", choices=["plain", "json"], default="plain")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except refdata.ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
