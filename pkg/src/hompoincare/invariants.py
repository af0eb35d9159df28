"""Invariant theory in P(n) (x) exterior algebra, by brute force.

Elements live in the graded-commutative algebra generated by even variables
``x_1..x_n`` (degree 2) and odd variables ``y_j^i`` (degree 1, 1 <= i <= m).
A monomial is a pair ``(xexp, ymask)``: a tuple of exponents and a bitmask
where bit ``j*m + i`` (0-based) marks ``y_j^i``.  The normal order of the odd
generators is increasing bit index, i.e. blocks by j, and by i within a block.

The coinvariant quotient P(n)_W is handled degree by degree with exact row
reduction against the ideal generated by the basic invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
from math import factorial

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .exactalg import ONE, Poly, truncate
from .weylgroups import (BudgetExceeded, Family, GroupSpec, Permutation,
                         SignedPermutation, enumerate_group, weyl_order)

_INVARIANT_BUDGET = 5000


# --- exterior-polynomial algebra ------------------------------------------

def _bits(mask: int) -> list:
    out, b = [], 0
    while mask:
        if mask & 1:
            out.append(b)
        mask >>= 1
        b += 1
    return out


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _ysign(u: int, v: int) -> int:
    """Sign of y^u * y^v after sorting into normal order; 0 when they share a generator."""
    if u & v:
        return 0
    swaps = 0
    for b in _bits(v):
        swaps += _popcount(u >> (b + 1))
    return -1 if swaps & 1 else 1


def _sort_sign(seq: list) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv & 1 else 1


class ExtPoly:
    """Element of F[x_1..x_nx] (x) Lambda(y_j^i : j < ny, i < m) with exact coefficients."""

    __slots__ = ("nx", "ny", "m", "terms")

    def __init__(self, nx: int, m: int, terms=None, ny: int = None):
        self.nx, self.m = nx, m
        self.ny = nx if ny is None else ny
        self.terms = {k: c for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def monomial(cls, nx, m, xexp=None, ymask=0, coeff=1, ny=None) -> "ExtPoly":
        xexp = tuple(xexp) if xexp is not None else (0,) * nx
        return cls(nx, m, {(xexp, ymask): coeff}, ny)

    def _like(self, terms) -> "ExtPoly":
        return ExtPoly(self.nx, self.m, terms, self.ny)

    def zero(self) -> "ExtPoly":
        return self._like({})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "ExtPoly") -> "ExtPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExtPoly":
        return self._like({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, ExtPoly):
            return self.scale(other)
        out = {}
        for (xa, ya), ca in self.terms.items():
            for (xb, yb), cb in other.terms.items():
                s = _ysign(ya, yb)
                if s:
                    key = (tuple(p + q for p, q in zip(xa, xb)), ya | yb)
                    out[key] = out.get(key, 0) + s * ca * cb
        return self._like(out)

    def __pow__(self, e: int):
        out = ExtPoly.monomial(self.nx, self.m, ny=self.ny)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, ExtPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degrees(self) -> set:
        return {2 * sum(x) + _popcount(y) for x, y in self.terms}

    def __repr__(self):
        parts = []
        for (x, y), c in sorted(self.terms.items()):
            mono = "".join(f"x{j + 1}^{e}" for j, e in enumerate(x) if e)
            mono += "".join(f"y{b // self.m + 1}^{b % self.m + 1}" for b in _bits(y))
            parts.append(f"{c}*{mono or '1'}")
        return " + ".join(parts) or "0"


def ymask_of(j: int, I, m: int) -> int:
    """Mask of y_j^I (0-based position j, 1-based indices in I)."""
    return sum(1 << (j * m + i - 1) for i in I)


# --- group action ---------------------------------------------------------

def _as_signed(w) -> SignedPermutation:
    if isinstance(w, SignedPermutation):
        return w
    if isinstance(w, Permutation):
        return SignedPermutation(w.images, (1,) * w.size)
    raise TypeError(f"cannot act by {type(w).__name__}")


def _act_monomial(w: SignedPermutation, m: int, xexp: tuple, ymask: int):
    n = w.size
    newx = [0] * n
    sign = 1
    for j, e in enumerate(xexp):
        newx[w.images[j]] = e
        if e & 1 and w.signs[j] < 0:
            sign = -sign
    seq = []
    for b in _bits(ymask):
        j, i = divmod(b, m)
        seq.append(w.images[j] * m + i)
        if w.signs[j] < 0:
            sign = -sign
    sign *= _sort_sign(seq)
    return tuple(newx), sum(1 << b for b in seq), sign


def apply_group_element(p: ExtPoly, w) -> ExtPoly:
    """x_j -> s_j x_{w(j)}, y_j^i -> s_j y_{w(j)}^i, extended multiplicatively."""
    w = _as_signed(w)
    if w.size != p.nx or p.ny != p.nx:
        raise ValueError(f"group element acts on {w.size} letters, element has rank {p.nx}")
    out = {}
    for (x, y), c in p.terms.items():
        nx_, ny_, s = _act_monomial(w, p.m, x, y)
        out[nx_, ny_] = out.get((nx_, ny_), 0) + s * c
    return p._like(out)


# --- generators -----------------------------------------------------------

def subset_key(I) -> tuple:
    """Order on subsets of [m]: by cardinality, then lexicographically."""
    I = tuple(sorted(I))
    return (len(I), I)


def eps(k: int) -> int:
    return k % 2


@dataclass(frozen=True)
class GeneratorSpec:
    d: int
    I: tuple
    flavor: str = "z"  # "z" for U/SU, "w" for Sp/SO(2n+1)

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(sorted(self.I)))
        if not self.I:
            raise ValueError("generator index set must be nonempty")
        if self.d < 1:
            raise ValueError("generator needs d >= 1")
        if self.flavor not in ("z", "w"):
            raise ValueError(f"unknown flavor {self.flavor!r}")

    @property
    def x_power(self) -> int:
        if self.flavor == "z":
            return self.d - 1
        return 2 * self.d + eps(len(self.I)) - 2

    @property
    def degree(self) -> int:
        return 2 * self.x_power + len(self.I)

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    def __str__(self):
        I = "{" + ",".join(map(str, self.I)) + "}"
        return f"{self.flavor}({self.d},{I})"


def power_sum_elem(power: int, I, n: int, m: int) -> ExtPoly:
    """sum_j x_j^power y_j^I."""
    terms = {}
    for j in range(n):
        x = tuple(power if k == j else 0 for k in range(n))
        terms[x, ymask_of(j, I, m)] = 1
    return ExtPoly(n, m, terms)


def z_elem(g, n: int, m: int) -> ExtPoly:
    if not isinstance(g, GeneratorSpec):
        g = GeneratorSpec(*g)
    return power_sum_elem(g.x_power, g.I, n, m)


def e_elem(d: int, I, n: int, m: int) -> ExtPoly:
    """Sum over injections s: [k] -> [n] of x_{s(1)}^d y_{s(1)}^{i_1} ... y_{s(k)}^{i_k}."""
    I = sorted(I)
    k = len(I)
    out = ExtPoly(n, m)
    for s in permutations(range(n), k):
        x = tuple(d if j == s[0] else 0 for j in range(n))
        seq = [s[t] * m + I[t] - 1 for t in range(k)]
        mask = sum(1 << b for b in seq)
        out = out + ExtPoly(n, m, {(x, mask): _sort_sign(seq)})
    return out


def _subsets(m: int) -> list:
    subs = [c for r in range(1, m + 1) for c in combinations(range(1, m + 1), r)]
    return sorted(subs, key=subset_key)


def gen_set(family, m: int, n: int) -> list:
    """Minimal generating set of the invariant cohomology ring."""
    family = Family(family)
    out = []
    if family in (Family.U, Family.SU):
        for I in _subsets(m):
            for d in range(1, n - len(I) + 2):
                if family is Family.SU and d == 1 and len(I) == 1:
                    continue
                out.append(GeneratorSpec(d, I, "z"))
    elif family in (Family.Sp, Family.SOodd):
        for I in _subsets(m):
            d = 1
            while 2 * d + len(I) + eps(len(I)) - 2 <= 2 * n:
                out.append(GeneratorSpec(d, I, "w"))
                d += 1
    else:
        raise ValueError(f"no generating set for {family.value}")
    return sorted(out, key=lambda g: (len(g.I), g.d, subset_key(g.I)))


def free_gca_hilbert(generators, N: int) -> Poly:
    """Hilbert series, through degree N, of the free graded-commutative algebra.

    ``generators`` holds degrees or ``(degree, odd)`` pairs; odd generators
    square to zero, even ones are polynomial.
    """
    out = ONE
    for g in generators:
        deg, odd = (g, g % 2 == 1) if isinstance(g, int) else g
        if deg < 1:
            raise ValueError("generator degrees must be positive")
        if odd:
            factor = ONE + Poly.monomial(deg)
        else:
            factor = Poly([1 if i % deg == 0 else 0 for i in range(N + 1)])
        out = truncate(out * factor, N)
    return out


# --- coinvariant quotients ------------------------------------------------

def _monomials(n: int, a: int) -> list:
    out = []
    for combo in combinations_with_replacement(range(n), a):
        e = [0] * n
        for j in combo:
            e[j] += 1
        out.append(tuple(e))
    return out


def _elementary(n: int, i: int, square: bool = False) -> dict:
    out = {}
    for combo in combinations(range(n), i):
        e = [0] * n
        for j in combo:
            e[j] = 2 if square else 1
        out[tuple(e)] = 1
    return out


def _lemma_basis_A(n: int, e: tuple) -> bool:
    return e[n - 1] == 0 and all(e[k] <= n - 1 - k for k in range(n - 1))


def _lemma_basis_B(n: int, e: tuple) -> bool:
    return all(e[k] // 2 <= n - 1 - k for k in range(n))


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def rank_of(rows, ncols: int) -> int:
    """Exact rank of sparse rows given as ``{column: coefficient}`` dicts."""
    rows = [r for r in rows if r]
    if not rows:
        return 0
    data = {i: {j: QQ(c.numerator, c.denominator) if isinstance(c, Fraction) else QQ(c)
                for j, c in r.items()} for i, r in enumerate(rows)}
    return DomainMatrix(data, (len(rows), ncols), QQ).rank()


class Coinvariants:
    """Degree-wise normal forms in P(n)_W for W of type A, B or D.

    Basic invariants: e_1..e_n (A), e_i(x^2) (B), e_i(x^2) for i < n and
    x_1...x_n (D).  Quotient representatives are the classical monomial bases
    for A and B; for D the non-pivot monomials of the reduction.
    """

    def __init__(self, kind: str, n: int):
        if kind not in ("A", "B", "D"):
            raise ValueError(f"unknown Weyl type {kind!r}")
        self.kind, self.n = kind, n
        if kind == "A":
            self.invariants = [_elementary(n, i) for i in range(1, n + 1)]
        elif kind == "B":
            self.invariants = [_elementary(n, i, True) for i in range(1, n + 1)]
        else:
            self.invariants = [_elementary(n, i, True) for i in range(1, n)]
            self.invariants.append({(1,) * n: 1})
        self._cache = {}

    @classmethod
    def for_family(cls, family, n: int) -> "Coinvariants":
        family = Family(family)
        kind = {Family.U: "A", Family.SU: "A", Family.Sp: "B",
                Family.SOodd: "B", Family.SOeven: "D"}[family]
        return _coinvariants(kind, n)

    def lemma_basis(self, e: tuple) -> bool:
        if self.kind == "A":
            return _lemma_basis_A(self.n, e)
        if self.kind == "B":
            return _lemma_basis_B(self.n, e)
        return False

    def _slice(self, a: int):
        if a in self._cache:
            return self._cache[a]
        monos = _monomials(self.n, a)
        # columns: non-representatives first so that pivots land on them
        order = sorted(monos, key=lambda e: (self.lemma_basis(e), tuple(-x for x in reversed(e))))
        col = {e: i for i, e in enumerate(order)}
        rows = []
        for f in self.invariants:
            df = sum(next(iter(f)))
            if df > a:
                continue
            for mu in _monomials(self.n, a - df):
                row = {}
                for e, c in f.items():
                    key = col[tuple(p + q for p, q in zip(e, mu))]
                    row[key] = row.get(key, 0) + c
                rows.append(row)
        pivots, R = (), None
        if rows:
            data = {i: {j: QQ(c) for j, c in r.items()} for i, r in enumerate(rows)}
            R, pivots = DomainMatrix(data, (len(rows), len(order)), QQ).rref()
        pivset = set(pivots)
        basis = [order[j] for j in range(len(order)) if j not in pivset]
        bidx = {e: i for i, e in enumerate(basis)}
        nf = {e: {bidx[e]: Fraction(1)} for e in basis}
        if pivots:
            dense = R.to_sdm()
            for r, p in enumerate(pivots):
                row = dense.get(r, {})
                nf[order[p]] = {bidx[order[j]]: -_to_fraction(c)
                                for j, c in row.items() if j != p}
        self._cache[a] = (basis, nf)
        return self._cache[a]

    def basis(self, a: int) -> list:
        return list(self._slice(a)[0])

    def dim(self, a: int) -> int:
        return len(self._slice(a)[0])

    def normal_form(self, e: tuple) -> dict:
        """Coordinates of x^e in the degree-|e| quotient basis."""
        return self._slice(sum(e))[1][tuple(e)]

    def in_ideal(self, poly: dict) -> bool:
        acc = {}
        for e, c in poly.items():
            for k, v in self.normal_form(e).items():
                acc[k] = acc.get(k, 0) + c * v
        return all(v == 0 for v in acc.values())

    def lemma_basis_matches(self, a: int) -> bool:
        basis = set(self.basis(a))
        return basis == {e for e in _monomials(self.n, a) if self.lemma_basis(e)}


@lru_cache(maxsize=None)
def _coinvariants(kind: str, n: int) -> Coinvariants:
    return Coinvariants(kind, n)


def reduce_ext(p: ExtPoly, coinv: Coinvariants) -> dict:
    """Coordinates of p in (coinvariant basis) (x) (exterior monomials): {(a, idx, ymask): c}."""
    out = {}
    for (x, y), c in p.terms.items():
        a = sum(x)
        for idx, v in coinv.normal_form(x).items():
            key = (a, idx, y)
            out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v != 0}


# --- invariant dimensions -------------------------------------------------

def _group_elements(family, n: int, budget):
    spec = GroupSpec(Family(family), n)
    if spec.family is Family.SU:
        raise ValueError("SU(n) is handled through the U(n) model")
    if weyl_order(spec) > budget:
        raise BudgetExceeded(spec.label, weyl_order(spec), budget)
    return [_as_signed(w) for w in enumerate_group(spec, "small")]


def invariant_dim(family, m: int, n: int, d: int, budget: int = _INVARIANT_BUDGET) -> int:
    """Dimension of the degree-d invariants of P(n)_W (x) Lambda(y_j^i).

    Averages one monomial per W-orbit (the average of any other orbit member
    is the same up to sign), reduces modulo the coinvariant ideal and takes
    the exact rank.
    """
    if d < 0:
        return 0
    group = _group_elements(family, n, budget)
    coinv = Coinvariants.for_family(family, n)
    total = 0
    for a in range(d // 2 + 1):
        b = d - 2 * a
        if b > m * n or coinv.dim(a) == 0:
            continue
        masks = [sum(1 << i for i in c) for c in combinations(range(m * n), b)]
        seen = set()
        rows = []
        for x in _monomials(n, a):
            for y in masks:
                if (x, y) in seen:
                    continue
                vec = {}
                for w in group:
                    wx, wy, s = _act_monomial(w, m, x, y)
                    seen.add((wx, wy))
                    for idx, c in coinv.normal_form(wx).items():
                        key = (idx, wy)
                        vec[key] = vec.get(key, 0) + s * c
                vec = {k: v for k, v in vec.items() if v != 0}
                if vec:
                    rows.append(vec)
        cols = {k for r in rows for k in r}
        index = {k: i for i, k in enumerate(sorted(cols))}
        total += rank_of([{index[k]: v for k, v in r.items()} for r in rows], len(index))
    return total


def _products_of_degree(gens, degree: int):
    """Index tuples (with repetition for even generators) of monomials in gens of the given degree."""
    degs = [g[0] for g in gens]
    odd = [g[1] for g in gens]
    out = []

    def rec(start, remaining, chosen):
        if remaining == 0:
            out.append(tuple(chosen))
            return
        for i in range(start, len(gens)):
            if degs[i] > remaining:
                continue
            if odd[i] and chosen and chosen[-1] == i:
                continue
            chosen.append(i)
            rec(i, remaining - degs[i], chosen)
            chosen.pop()

    rec(0, degree, [])
    return out


def subalgebra_dim(elements, degree: int, coinv: Coinvariants) -> int:
    """Dimension in the given degree of the subalgebra generated by ``elements`` (ExtPolys)."""
    if degree == 0:
        return 1
    info = []
    for p in elements:
        degs = p.degrees()
        if len(degs) != 1:
            raise ValueError("generators must be homogeneous")
        deg = degs.pop()
        info.append((deg, deg % 2 == 1))
    rows = []
    cache = {}
    for combo in _products_of_degree(info, degree):
        prod_ = cache.get(combo[:-1])
        if prod_ is None:
            prod_ = elements[combo[0]]
            for i in combo[1:-1]:
                prod_ = prod_ * elements[i]
            if len(combo) > 1:
                cache[combo[:-1]] = prod_
        full = prod_ * elements[combo[-1]] if len(combo) > 1 else prod_
        vec = reduce_ext(full, coinv)
        if vec:
            rows.append(vec)
    cols = {k for r in rows for k in r}
    index = {k: i for i, k in enumerate(sorted(cols))}
    return rank_of([{index[k]: v for k, v in r.items()} for r in rows], len(index))


def generator_elements(family, m: int, n: int, gens=None) -> list:
    family = Family(family)
    gens = gen_set(family, m, n) if gens is None else gens
    return [z_elem(g, n, m) for g in gens]


# --- lemma checks ---------------------------------------------------------

def newton_sides(d: int, I, n: int, m: int):
    """Both sides of the generalized Newton identity in P(n) (x) Lambda."""
    I = sorted(I)
    k = len(I)
    lhs = ExtPoly(n, m)
    for l in range(k - 1):
        for rest in combinations(I[1:], l):
            J = [I[0], *rest]
            pos = sum(I.index(i) + 1 for i in J)
            dJ = pos - len(J) * (len(J) + 1) // 2
            coeff = (-1) ** (l + dJ) * factorial(l)
            comp = [i for i in I if i not in J]
            lhs = lhs + (power_sum_elem(d - 1, J, n, m) * e_elem(0, comp, n, m)).scale(coeff)
    lhs = lhs + power_sum_elem(d - 1, I, n, m).scale((-1) ** (k + 1) * factorial(k - 1))
    rhs = e_elem(d - 1, I, n, m) if k <= n else ExtPoly(n, m)
    return lhs, rhs


def check_newton(d: int, I, n: int, m: int) -> bool:
    lhs, rhs = newton_sides(d, I, n, m)
    return lhs == rhs


def check_coinv(k: int, n: int) -> bool:
    """The complete homogeneous sum h_{n-k+1}(x_1..x_k) vanishes in P(n)_{S_n}."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    a = n - k + 1
    poly = {}
    for e in _monomials(k, a):
        poly[e + (0,) * (n - k)] = 1
    return _coinvariants("A", n).in_ideal(poly)


def check_antisym(k_list, n: int) -> bool:
    """q_{k_1}...q_{k_n} = q_{k_1..k_n} y_1...y_n with q_i = sum_j x_j^i y_j."""
    if len(k_list) != n:
        raise ValueError("need one exponent per variable")
    lhs = ExtPoly.monomial(n, 1)
    for k in k_list:
        lhs = lhs * power_sum_elem(k, (1,), n, 1)
    full = (1 << n) - 1
    terms = {}
    for perm in permutations(range(n)):
        x = [0] * n
        for pos, j in enumerate(perm):
            x[j] += k_list[pos]
        sign = _sort_sign(list(perm))
        terms[tuple(x), full] = terms.get((tuple(x), full), 0) + sign
    return lhs == ExtPoly(n, 1, terms)


def ysets(ymask: int, m: int, n: int) -> list:
    return [tuple(i + 1 for i in range(m) if ymask >> (j * m + i) & 1) for j in range(n)]


def in_M(xexp: tuple, ymask: int, m: int) -> bool:
    """Nonempty y-sets occupy the first positions, in nondecreasing subset order."""
    sets = ysets(ymask, m, len(xexp))
    r = sum(1 for s in sets if s)
    if any(sets[j] for j in range(r, len(sets))) or not all(sets[j] for j in range(r)):
        return False
    keys = [subset_key(s) for s in sets[:r]]
    return keys == sorted(keys)


def order_key(xexp: tuple, ymask: int, m: int) -> tuple:
    """Sort key on M(m, n): least element first."""
    sets = ysets(ymask, m, len(xexp))
    r = sum(1 for s in sets if s)
    subs = _subsets(m)
    dvec = tuple(sum(1 for s in sets if s == S) for S in subs)
    ext = _popcount(ymask)
    return (2 * sum(xexp) + ext, -ext, -r, dvec, tuple(reversed(xexp)))


def least_term(p: ExtPoly, m: int, n: int) -> tuple:
    """Least monomial of M(m, n) occurring in a symmetric element."""
    if p.is_zero():
        raise ValueError("zero element has no least term")
    cands = [(x, y) for (x, y) in p.terms if in_M(x, y, m)]
    if not cands:
        raise ValueError("element has no term in M(m, n); is it symmetric?")
    return min(cands, key=lambda t: order_key(t[0], t[1], m))


def least_term_closed_form(factors, n: int, m: int) -> tuple:
    """x_1^{d_1-1}...x_k^{d_k-1} y_1^{I_1}...y_k^{I_k} for factors sorted by I (ties: d descending)."""
    factors = sort_factors(factors)
    x = [0] * n
    mask = 0
    for j, (d, I) in enumerate(factors):
        x[j] = d - 1
        mask |= ymask_of(j, I, m)
    return tuple(x), mask


def sort_factors(factors) -> list:
    return sorted(((d, tuple(sorted(I))) for d, I in factors),
                  key=lambda f: (subset_key(f[1]), -f[0]))


def product_of(factors, n: int, m: int) -> ExtPoly:
    out = ExtPoly.monomial(n, m)
    for d, I in factors:
        out = out * power_sum_elem(d - 1, I, n, m)
    return out


# --- the SU(3), m = 2 ring --------------------------------------------------

def su_model(p: ExtPoly) -> ExtPoly:
    """Image in P(n) (x) Lambda(y_j^i : j < n) after y_n^i = -(y_1^i + ... + y_{n-1}^i)."""
    n, m = p.nx, p.m
    out = ExtPoly(n, m, ny=n - 1)
    last = n - 1
    for (x, y), c in p.terms.items():
        term = ExtPoly(n, m, {(x, 0): c}, ny=n - 1)
        for b in _bits(y):
            j, i = divmod(b, m)
            if j != last:
                factor = ExtPoly(n, m, {((0,) * n, 1 << b): 1}, ny=n - 1)
            else:
                factor = ExtPoly(n, m, {((0,) * n, 1 << (jj * m + i)): -1
                                        for jj in range(n - 1)}, ny=n - 1)
            term = term * factor
        out = out + term
    return out


def _free_quadratic_series(degs, relations, N: int) -> Poly:
    """Hilbert series of a free graded-commutative algebra mod (gens)^3 and quadratic relations.

    ``relations`` are dicts over index pairs (i, j), i <= j, meaning the
    product g_i g_j in that order.
    """
    counts = [0] * (N + 1)
    counts[0] = 1
    for d in degs:
        if d <= N:
            counts[d] += 1
    pairs = [(i, j) for i in range(len(degs)) for j in range(i, len(degs))
             if not (i == j and degs[i] % 2)]
    for i, j in pairs:
        if degs[i] + degs[j] <= N:
            counts[degs[i] + degs[j]] += 1
    col = {p: k for k, p in enumerate(pairs)}
    by_deg = {}
    for rel in relations:
        (i, j) = next(iter(rel))
        by_deg.setdefault(degs[i] + degs[j], []).append({col[p]: c for p, c in rel.items()})
    for deg, rows in by_deg.items():
        if deg <= N:
            counts[deg] -= rank_of(rows, len(pairs))
    return Poly(counts)


@dataclass
class SU3Report:
    relations_vanish: bool
    cubes_vanish: bool
    presented_series: Poly
    ring_series: Poly
    fixture: Poly
    vanishing_products: list = None  # generator products that are zero but not among the relations

    @property
    def presented_matches(self) -> bool:
        return truncate(self.presented_series, 8) == truncate(self.fixture, 8)

    @property
    def ok(self) -> bool:
        return self.relations_vanish and self.cubes_vanish and self.presented_matches

    def extra_relations_needed(self) -> dict:
        """Degrees where the presented algebra is larger than the actual ring."""
        top = max(self.presented_series.degree, self.ring_series.degree)
        return {d: self.presented_series.coeff(d) - self.ring_series.coeff(d)
                for d in range(top + 1)
                if self.presented_series.coeff(d) != self.ring_series.coeff(d)}


def su3_ring_report() -> SU3Report:
    from .refdata import load_fixture

    n, m = 3, 2
    coinv = _coinvariants("A", n)
    names = ["a1", "a2", "b1", "b2", "c1", "c2"]
    specs = [GeneratorSpec(2, (1,)), GeneratorSpec(3, (1,)), GeneratorSpec(2, (2,)),
             GeneratorSpec(3, (2,)), GeneratorSpec(1, (1, 2)), GeneratorSpec(2, (1, 2))]
    g = dict(zip(names, (su_model(z_elem(s, n, m)) for s in specs)))
    degs = [s.degree for s in specs]
    # with these generators the mixed c-relations hold with a plus sign
    relations = [g["c1"] * g["c2"], g["a2"] * g["c2"], g["b2"] * g["c2"],
                 g["a2"] * g["c1"] + g["a1"] * g["c2"],
                 g["b2"] * g["c1"] + g["b1"] * g["c2"],
                 g["a2"] * g["b1"] - g["b2"] * g["a1"]]
    relations_vanish = all(not reduce_ext(r, coinv) for r in relations)
    gens = [g[k] for k in names]
    cubes_vanish = all(not reduce_ext(gens[i] * gens[j] * gens[k], coinv)
                       for i, j, k in combinations_with_replacement(range(6), 3))
    ix = {k: i for i, k in enumerate(names)}

    def pair(a, b):
        i, j = ix[a], ix[b]
        # g_a g_b = (+-) g_j g_i when reordered; odd-odd swaps pick up a sign
        if i <= j:
            return (i, j), 1
        return (j, i), -1 if degs[i] % 2 and degs[j] % 2 else 1

    def rel(*terms):
        out = {}
        for c, a, b in terms:
            p, s = pair(a, b)
            out[p] = out.get(p, 0) + c * s
        return out

    free_rels = [rel((1, "c1", "c2")), rel((1, "a2", "c2")), rel((1, "b2", "c2")),
                 rel((1, "a2", "c1"), (1, "a1", "c2")), rel((1, "b2", "c1"), (1, "b1", "c2")),
                 rel((1, "a2", "b1"), (-1, "b2", "a1"))]
    top = 2 * max(degs)
    presented = _free_quadratic_series(degs, free_rels, top)
    ring = Poly([subalgebra_dim(gens, d, coinv) for d in range(top + 1)])
    fixture = Poly(list(load_fixture("SU(3)", 2).coefficients))
    listed = {"c1*c2", "a2*c2", "b2*c2"}
    vanishing = [f"{a}*{b}" for a, b in combinations_with_replacement(names, 2)
                 if f"{a}*{b}" not in listed and not reduce_ext(g[a] * g[b], coinv)
                 and not (a == b and degs[ix[a]] % 2)]
    return SU3Report(relations_vanish, cubes_vanish, presented, ring, fixture, vanishing)


def check_su3_relations(m: int = 2) -> bool:
    if m != 2:
        raise ValueError("the SU(3) ring fixture is for m = 2")
    return su3_ring_report().ok


def m_monomials(m: int, n: int, degree: int) -> list:
    """Elements of M(m, n) of the given cohomological degree, least first."""
    out = []
    for b in range(degree % 2, min(degree, m * n) + 1, 2):
        for x in _monomials(n, (degree - b) // 2):
            for c in combinations(range(m * n), b):
                y = sum(1 << i for i in c)
                if in_M(x, y, m):
                    out.append((x, y))
    return sorted(out, key=lambda t: order_key(t[0], t[1], m))


def v_set(m: int, n: int, max_degree: int) -> list:
    """Index data ((d_1, I_1), ..., (d_k, I_k)) with I_1 < ... < I_k and k + max d - 1 <= n."""
    subs = _subsets(m)
    out = []
    for k in range(1, n + 1):
        for Is in combinations(subs, k):
            for ds in product(range(1, n - k + 2), repeat=k):
                deg = sum(2 * d + len(I) - 2 for d, I in zip(ds, Is))
                if deg <= max_degree:
                    out.append(tuple(zip(ds, Is)))
    return out


def v_least_terms_distinct(m: int, n: int, max_degree: int) -> bool:
    seen = set()
    for data in v_set(m, n, max_degree):
        p = product_of(data, n, m)
        if p.is_zero():
            return False
        lt = least_term(p, m, n)
        if lt in seen:
            return False
        seen.add(lt)
    return True


def redundant_generators(family, m: int, n: int) -> list:
    """Generators whose removal leaves the subalgebra dimension in their degree unchanged."""
    family = Family(family)
    if family not in (Family.U, Family.Sp, Family.SOodd):
        raise ValueError(f"redundancy check needs U, Sp or SO(2n+1), got {family.value}")
    gens = gen_set(family, m, n)
    elems = generator_elements(family, m, n, gens)
    coinv = Coinvariants.for_family(family, n)
    out = []
    for i, g in enumerate(gens):
        rest = elems[:i] + elems[i + 1:]
        if subalgebra_dim(rest, g.degree, coinv) >= subalgebra_dim(elems, g.degree, coinv):
            out.append(g)
    return out
