"""Poincare series of Hom(Z^m, G)_1.

Two independent routes:

* ``series_formula`` sums partition-indexed rational terms for the classical
  families, so the work is polynomial in n rather than proportional to |W|.
* ``series_oracle`` averages det(1+tw)^m / det(1-t^2 w) over the Weyl group,
  times the product of (1 - t^(2d)) over the characteristic degrees d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exactalg import (ONE, T, NonPolynomialResult, Poly, RatFn, exact_to_poly,
                       one_minus_t_pow, product, truncate, truncated_expand)
from .partitions import (SignedPartition, enum_partitions,
                         enum_signed_partitions, theta)
from .weylgroups import (Family, GroupSpec, characteristic_degrees,
                         det_factor_counts, weyl_order)

GUARD_BAND = 8


class NegativeCoefficient(ArithmeticError):
    """A computed Poincare series has a coefficient that is not a nonnegative integer."""


def t_power(e: int) -> RatFn:
    """t^e for any integer e, negative exponents as 1/t^(-e)."""
    if e >= 0:
        return RatFn(Poly.monomial(e))
    return RatFn(ONE, Poly.monomial(-e))


@lru_cache(maxsize=None)
def q_term(k: int, m: int, signed: bool = False) -> RatFn:
    """The per-cycle term attached to a cycle of length |k| (and sign of k when signed)."""
    if k == 0:
        raise ValueError("q_term needs a nonzero k")
    if not signed and k < 0:
        raise ValueError("unsigned q_term needs a positive k")
    if m < 1:
        raise ValueError("m must be positive")
    L, s = abs(k), (1 if k > 0 else -1)
    lead = (-1) ** (m * (L + 1)) * s ** (m + 1)
    numer = (ONE + Poly.monomial(L, (-1) ** (L + 1) * s)) ** m
    return t_power((m - 2) * L) * lead + RatFn(numer, one_minus_t_pow(2 * L, s))


def q_lambda(lam, m: int, n: int) -> RatFn:
    """Product of the per-part terms, padded by t^((m-2)(n - |lam|))."""
    signed = isinstance(lam, SignedPartition)
    k = lam.size
    if k > n:
        raise ValueError(f"partition of {k} does not fit rank {n}")
    out = t_power((m - 2) * (n - k))
    for part in lam:
        out = out * q_term(part, m, signed)
    return out


def _weight(lam) -> Fraction:
    if isinstance(lam, SignedPartition):
        return Fraction(1, 2 ** len(lam) * theta(lam.positive))
    return Fraction(1, theta(lam))


def _weighted_sum(terms) -> RatFn:
    total = RatFn(Poly())
    for coeff, lam, m, n in terms:
        if coeff:
            total = total + q_lambda(lam, m, n) * coeff
    return total


def _finish(prefactor: Poly, total: RatFn) -> Poly:
    p = exact_to_poly(total * prefactor)
    check_series(p)
    return p


def check_series(p: Poly) -> None:
    for i, c in enumerate(p.coeffs):
        if c < 0 or Fraction(c).denominator != 1:
            raise NegativeCoefficient(f"coefficient {c} at t^{i}")
    if p.coeff(0) != 1:
        raise NegativeCoefficient(f"constant term {p.coeff(0)} is not 1")


def _unitary(m: int, n: int) -> Poly:
    pre = product(one_minus_t_pow(2 * i) for i in range(1, n + 1))
    if m % 2 == 0:
        terms = [((-1) ** (n + k) * _weight(lam), lam, m, n)
                 for k in (n - 1, n) for lam in enum_partitions(k)]
    else:
        terms = [((-1) ** (n - k) * _weight(lam), lam, m, n)
                 for k in range(n + 1) for lam in enum_partitions(k)]
    return _finish(pre, _weighted_sum(terms))


def _symplectic(m: int, n: int) -> Poly:
    pre = product(one_minus_t_pow(4 * i) for i in range(1, n + 1))
    if m % 2 == 0:
        terms = [(_weight(lam), lam, m, n) for lam in enum_signed_partitions(n)]
    else:
        terms = [((-1) ** (n - k) * _weight(lam), lam, m, n)
                 for k in range(n + 1) for lam in enum_signed_partitions(k)]
    return _finish(pre, _weighted_sum(terms))


def _even_orthogonal(m: int, n: int) -> Poly:
    if n == 1:
        return (ONE + T) ** m
    pre = one_minus_t_pow(2 * n) * product(one_minus_t_pow(4 * i) for i in range(1, n))
    if m % 2 == 0:
        terms = [(-lam.sign * _weight(lam), lam, m, n) for lam in enum_signed_partitions(n - 1)]
        terms += [((1 + lam.sign) * _weight(lam), lam, m, n) for lam in enum_signed_partitions(n)]
    else:
        terms = [((-1) ** (n - k) * _weight(lam), lam, m, n)
                 for k in range(n + 1) for lam in enum_signed_partitions(k)]
        terms += [(lam.sign * _weight(lam), lam, m, n) for lam in enum_signed_partitions(n)]
    return _finish(pre, _weighted_sum(terms))


@lru_cache(maxsize=None)
def _formula_cached(family: Family, n: int, m: int) -> Poly:
    if family is Family.U:
        return _unitary(m, n)
    if family is Family.SU:
        q, r = divmod(_unitary(m, n), (ONE + T) ** m)
        if not r.is_zero():
            raise NonPolynomialResult("U(n) series is not divisible by the torus factor")
        return q
    if family in (Family.Sp, Family.SOodd):
        return _symplectic(m, n)
    return _even_orthogonal(m, n)


def series_formula(spec: GroupSpec, m: int) -> Poly:
    """Closed-form series for a classical family."""
    if spec.exceptional:
        raise ValueError(f"no closed formula for {spec.label}; use the oracle")
    if m < 1:
        raise ValueError("m must be positive")
    return _formula_cached(spec.family, spec.n, m)


def oracle_bound(spec: GroupSpec, m: int) -> int:
    """Top possible degree: dim(G/T) + m * rank."""
    return spec.dim - spec.rank + m * spec.rank


def series_oracle(spec: GroupSpec, m: int, budget="small", mode: str = "exact") -> Poly:
    """Average over W of det(1+tw)^m / det(1-t^2 w), times prod(1 - t^(2d)).

    Elements are bucketed by their pair of determinant factors first.  In
    ``truncated`` mode each bucket is expanded as a power series up to the
    degree bound plus a guard band that must come out zero.
    """
    if m < 1:
        raise ValueError("m must be positive")
    buckets = det_factor_counts(spec, budget)
    pre = product(one_minus_t_pow(2 * d) for d in characteristic_degrees(spec))
    order = weyl_order(spec)
    if sum(buckets.values()) != order:
        raise NonPolynomialResult(f"enumerated {sum(buckets.values())} elements, expected {order}")
    items = sorted(buckets.items(), key=lambda kv: (kv[0][0].coeffs, kv[0][1].coeffs))
    if mode == "exact":
        total = RatFn(Poly())
        for (plus, minus), count in items:
            total = total + RatFn(plus ** m * count, minus)
        p = exact_to_poly(total * pre * Fraction(1, order))
    elif mode == "truncated":
        bound = oracle_bound(spec, m)
        N = bound + GUARD_BAND
        acc = Poly()
        for (plus, minus), count in items:
            acc = acc + truncated_expand(RatFn(plus ** m * count, minus), N)
        full = truncate(acc * pre, N) * Fraction(1, order)
        if any(full.coeff(i) for i in range(bound + 1, N + 1)):
            raise NonPolynomialResult("nonzero coefficients in the guard band")
        p = truncate(full, bound)
    else:
        raise ValueError(f"unknown oracle mode {mode!r}")
    check_series(p)
    return p


def series_product(factors) -> Poly:
    return product(list(factors))


def torus_series(dim: int, m: int) -> Poly:
    return (ONE + T) ** (m * dim)


@dataclass(frozen=True)
class SeriesReport:
    spec: GroupSpec
    m: int
    series: Poly
    method: str
    top: tuple
    palindromic: bool


def compute(spec: GroupSpec, m: int, method: str = "auto", budget="small") -> Poly:
    if method == "auto":
        method = "oracle" if spec.exceptional else "formula"
    if method == "formula":
        return series_formula(spec, m)
    if method == "oracle":
        return series_oracle(spec, m, budget)
    raise ValueError(f"unknown method {method!r}")


def report(spec: GroupSpec, m: int, method: str = "auto", budget="small") -> SeriesReport:
    p = compute(spec, m, method, budget)
    coeffs = p.coeffs
    return SeriesReport(spec, m, p, method, (int(p.leading), p.degree),
                        list(coeffs) == list(reversed(coeffs)))


def binom(a: int, b: int) -> int:
    return comb(a, b)
