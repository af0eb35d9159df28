"""Top terms, palindromicity and stability ranges of the computed series."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod

from .exactalg import Poly
from .poincare import compute, series_formula
from .weylgroups import Family, GroupSpec


@dataclass(frozen=True, order=True)
class TopTerm:
    coefficient: int
    degree: int

    def __post_init__(self):
        if self.coefficient < 1:
            raise ValueError("top coefficient must be positive")

    def __str__(self):
        return f"{self.coefficient} t^{self.degree}"


def top_term(p: Poly) -> TopTerm:
    if p.is_zero():
        raise ValueError("the zero polynomial has no top term")
    return TopTerm(int(p.leading), p.degree)


def _top_degree_odd(spec: GroupSpec, m: int) -> int:
    """Degree of the top term for odd m (also reused with m-1 for even m)."""
    f, n = spec.family, spec.n
    if f is Family.U:
        return n * n + (m - 1) * n
    if f is Family.SU:
        return n * n + (m - 1) * (n - 1) - 1
    if f in (Family.Sp, Family.SOodd):
        return 2 * n * n + m * n
    return 2 * n * n + (m - 2) * n


def _binom_top(spec: GroupSpec, m: int) -> int:
    if spec.family in (Family.U, Family.SU):
        return comb(m + spec.n - 2, m - 1)
    return comb(m + spec.n - 1, m - 1)


def predicted_top(spec: GroupSpec, m: int) -> TopTerm:
    """Closed-form leading term of the series of a classical group."""
    if m < 1:
        raise ValueError("m must be positive")
    if spec.exceptional:
        if m != 2:
            raise ValueError(f"no top-term prediction for {spec.label} with m={m}")
        return predicted_top_general([(spec.rank, spec.dim)])
    f, n = spec.family, spec.n
    if f is Family.SU and n == 1:
        return TopTerm(1, 0)
    if f is Family.SOeven and n == 1:
        return TopTerm(1, m)
    if f is Family.SOeven and n == 2:
        # SU(2) x SU(2) up to a finite cover
        half = predicted_top(GroupSpec(Family.SU, 2), m)
        return TopTerm(half.coefficient ** 2, 2 * half.degree)
    if m % 2:
        return TopTerm(1, _top_degree_odd(spec, m))
    eps = 1 if f is Family.U else 0
    return TopTerm(_binom_top(spec, m), _top_degree_odd(spec, m - 1) + eps)


def predicted_top_general(simple_factors, torus_dim: int = 0, pi1_rank=None) -> TopTerm:
    """m = 2 top term of a compact connected group from its simple factors.

    ``simple_factors`` holds (rank, dim) pairs; ``pi1_rank`` defaults to the
    torus dimension, which is the rank of the fundamental group.
    """
    if pi1_rank is None:
        pi1_rank = torus_dim
    coeff = prod(r + 1 for r, _ in simple_factors)
    dim = sum(d for _, d in simple_factors) + torus_dim
    return TopTerm(coeff, dim + pi1_rank)


def is_palindromic(p: Poly) -> bool:
    if p.is_zero():
        raise ValueError("palindromicity of the zero polynomial is undefined")
    cs = list(p.coeffs)
    return cs == cs[::-1]


def is_torus_or_trivial(spec: GroupSpec) -> bool:
    f, n = spec.family, spec.n
    return (f is Family.U and n == 1) or (f is Family.SU and n == 1) or (f is Family.SOeven and n == 1)


def hyperbolicity_witness(spec: GroupSpec, m: int, budget="small") -> bool:
    """True when the top coefficient exceeds one, so Poincare duality fails."""
    return top_term(compute(spec, m, budget=budget)).coefficient > 1


def stable_range(family: Family, m: int, n: int) -> int:
    family = Family(family)
    if family in (Family.U, Family.SU):
        return 2 * n - m + 1
    if family in (Family.Sp, Family.SOodd):
        return 2 * n + 1
    raise ValueError(f"no stable range for {family.value}")


@dataclass(frozen=True)
class StabilityReport:
    family: Family
    m: int
    n: int
    agreement_degree: int
    expected: int
    strict_growth_at: int

    @property
    def ok(self) -> bool:
        return self.agreement_degree == self.expected and self.strict_growth_at == self.expected + 1


def stability_scan(family, m: int, n: int) -> StabilityReport:
    """Compare the rank-n and rank-(n+1) series coefficient by coefficient."""
    family = Family(family)
    if family in (Family.U, Family.SU):
        if n < m:
            raise ValueError("stability for U/SU needs n >= m")
    elif family in (Family.Sp, Family.SOodd):
        if m < 2:
            raise ValueError("stability for Sp/SO(2n+1) needs m >= 2")
    else:
        raise ValueError(f"no stability statement for {family.value}")
    small = series_formula(GroupSpec(family, n), m)
    big = series_formula(GroupSpec(family, n + 1), m)
    top = max(small.degree, big.degree) + 1
    agree = -1
    while agree + 1 <= top and small.coeff(agree + 1) == big.coeff(agree + 1):
        agree += 1
    growth = next(d for d in range(top + 1) if big.coeff(d) > small.coeff(d))
    return StabilityReport(family, m, n, agree, stable_range(family, m, n), growth)
