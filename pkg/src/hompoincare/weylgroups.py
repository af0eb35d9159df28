"""Weyl groups of the compact Lie groups handled by the package.

Classical Weyl groups are realised as permutations (type A) and signed
permutations (types B, C, D).  Exceptional ones are generated from their
Cartan matrix as integer matrices in the root basis, enumerated breadth first
by Coxeter length with numpy so that E6 and E7 stay tractable.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import permutations, product
from math import factorial, prod

import numpy as np

from .exactalg import ONE, Poly, one_minus_t_pow
from .partitions import Partition, SignedPartition

log = logging.getLogger(__name__)

BUDGETS = {"small": 10**5, "medium": 6 * 10**6, "large": 10**7}
SLOW_WARNING = 10**6


class BudgetExceeded(RuntimeError):
    """The group is larger than the enumeration cap."""

    def __init__(self, label, size, cap):
        super().__init__(f"{label}: |W| = {size} exceeds the enumeration budget {cap} "
                         f"(raise it with --budget medium/large)")
        self.label, self.size, self.cap = label, size, cap


class Family(str, Enum):
    U = "U"
    SU = "SU"
    Sp = "Sp"
    SOodd = "SOodd"
    SOeven = "SOeven"
    G2 = "G2"
    F4 = "F4"
    E6 = "E6"
    E7 = "E7"
    E8 = "E8"

    @property
    def exceptional(self) -> bool:
        return self.value in _EXC_RANK


_EXC_RANK = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}
_EXC_DIM = {"G2": 14, "F4": 52, "E6": 78, "E7": 133, "E8": 248}
CLASSICAL = (Family.U, Family.SU, Family.Sp, Family.SOodd, Family.SOeven)


@dataclass(frozen=True)
class GroupSpec:
    """A compact group by family; ``n`` is the matrix size for U/SU and the rank otherwise."""

    family: Family
    n: int = 0

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if fam.exceptional:
            object.__setattr__(self, "n", _EXC_RANK[fam.value])
        elif self.n < 1:
            raise ValueError(f"{fam.value} needs a positive rank parameter")

    @classmethod
    def parse(cls, family: str, n: int = 0) -> "GroupSpec":
        aliases = {"SO_ODD": "SOodd", "SO_EVEN": "SOeven", "SP": "Sp"}
        key = family.strip()
        key = aliases.get(key.upper(), key)
        try:
            return cls(Family(key), n)
        except ValueError:
            raise ValueError(f"unknown family {family!r}") from None

    @property
    def exceptional(self) -> bool:
        return self.family.exceptional

    @property
    def rank(self) -> int:
        """Rank of the maximal torus (dimension of the reflection representation)."""
        if self.family is Family.SU:
            return self.n - 1
        return self.n

    @property
    def dim(self) -> int:
        f, n = self.family, self.n
        if f is Family.U:
            return n * n
        if f is Family.SU:
            return n * n - 1
        if f in (Family.Sp, Family.SOodd):
            return n * (2 * n + 1)
        if f is Family.SOeven:
            return n * (2 * n - 1)
        return _EXC_DIM[f.value]

    @property
    def label(self) -> str:
        f, n = self.family, self.n
        if f is Family.SOodd:
            return f"SO({2 * n + 1})"
        if f is Family.SOeven:
            return f"SO({2 * n})"
        if f.exceptional:
            return f.value
        return f"{f.value}({n})"

    def __str__(self):
        return self.label


def characteristic_degrees(spec: GroupSpec) -> list:
    f, n = spec.family, spec.n
    if f is Family.U:
        return list(range(1, n + 1))
    if f is Family.SU:
        return list(range(2, n + 1))
    if f in (Family.Sp, Family.SOodd):
        return [2 * i for i in range(1, n + 1)]
    if f is Family.SOeven:
        return [2 * i for i in range(1, n)] + [n]
    from .refdata import exceptional_degrees
    return exceptional_degrees(f.value)


def weyl_order(spec: GroupSpec) -> int:
    return prod(characteristic_degrees(spec))


# --- element types --------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """``images[i]`` is the image of ``i`` (0-based)."""

    images: tuple

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    @property
    def size(self) -> int:
        return len(self.images)

    def cycles(self) -> list:
        """Standard decomposition: each cycle starts at its least element, cycles by least element."""
        seen = [False] * self.size
        out = []
        for start in range(self.size):
            if seen[start]:
                continue
            cyc, j = [], start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def matrix(self) -> np.ndarray:
        n = self.size
        mat = np.zeros((n, n), dtype=np.int64)
        for i, j in enumerate(self.images):
            mat[j, i] = 1
        return mat


@dataclass(frozen=True)
class SignedPermutation:
    """Sends the basis vector ``e_i`` to ``signs[i] * e_{images[i]}``."""

    images: tuple
    signs: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images must be a permutation")
        if len(self.signs) != len(self.images) or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be a +-1 vector of matching length")

    @property
    def size(self) -> int:
        return len(self.images)

    @property
    def permutation(self) -> Permutation:
        return Permutation(self.images)

    @property
    def sign(self) -> int:
        return prod(self.signs)

    def __call__(self, i: int) -> tuple:
        return self.signs[i], self.images[i]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        images = tuple(self.images[j] for j in other.images)
        signs = tuple(other.signs[i] * self.signs[other.images[i]] for i in range(other.size))
        return SignedPermutation(images, signs)

    def inverse(self) -> "SignedPermutation":
        n = self.size
        images, signs = [0] * n, [1] * n
        for i, (j, s) in enumerate(zip(self.images, self.signs)):
            images[j], signs[j] = i, s
        return SignedPermutation(tuple(images), tuple(signs))

    def cycles(self) -> list:
        return self.permutation.cycles()

    def matrix(self) -> np.ndarray:
        n = self.size
        mat = np.zeros((n, n), dtype=np.int64)
        for i, (j, s) in enumerate(zip(self.images, self.signs)):
            mat[j, i] = s
        return mat


@dataclass(frozen=True)
class MatrixElement:
    """Integer matrix acting on root coordinates (columns are images of simple roots)."""

    entries: tuple

    @classmethod
    def from_array(cls, arr) -> "MatrixElement":
        return cls(tuple(tuple(int(x) for x in row) for row in np.asarray(arr)))

    def matrix(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def __mul__(self, other: "MatrixElement") -> "MatrixElement":
        return MatrixElement.from_array(self.matrix() @ other.matrix())

    @property
    def size(self) -> int:
        return len(self.entries)


# --- cycle types and determinant factors ----------------------------------

def cycle_partition(w: Permutation) -> Partition:
    return Partition(tuple(sorted(len(c) for c in w.cycles())))


def signed_cycle_partition(w: SignedPermutation) -> SignedPartition:
    """Signed cycle type; equal lengths keep the order of their least elements."""
    parts = [(len(c), prod(w.signs[i] for i in c)) for c in w.cycles()]
    parts.sort(key=lambda p: p[0])  # stable
    return SignedPartition(tuple(s * L for L, s in parts))


def _cycle_factors(length: int, sign: int = 1) -> tuple:
    plus = ONE + Poly.monomial(length, sign * (-1) ** (length + 1))
    return plus, one_minus_t_pow(2 * length, sign)


def cycle_type_factors(lam) -> tuple:
    """(det(1+tw), det(1-t^2 w)) for any element of the given (signed) cycle type."""
    a, b = ONE, ONE
    for part in lam:
        pa, pb = _cycle_factors(abs(part), 1 if part > 0 else -1)
        a, b = a * pa, b * pb
    return a, b


def charpoly(mat) -> list:
    """Integer coefficients ``[c_0, ..., c_r]`` of det(x - A), via Faddeev-LeVerrier."""
    return [int(c) for c in charpoly_batch(np.asarray(mat)[None])[0]]


def charpoly_batch(mats: np.ndarray) -> np.ndarray:
    """Characteristic polynomials of a stack of integer matrices, shape ``(N, r+1)``."""
    mats = np.asarray(mats, dtype=np.int64)
    N, r, _ = mats.shape
    coeffs = np.zeros((N, r + 1), dtype=np.int64)
    coeffs[:, r] = 1
    eye = np.eye(r, dtype=np.int64)
    M = np.zeros_like(mats)
    for k in range(1, r + 1):
        M = mats @ M + coeffs[:, r - k + 1, None, None] * eye
        tr = np.einsum("nij,nji->n", mats, M)
        coeffs[:, r - k] = -tr // k
    return coeffs


def factors_from_charpoly(cp) -> tuple:
    """(det(1+tw), det(1-t^2 w)) from det(x - w) = sum c_k x^k."""
    r = len(cp) - 1
    plus = [0] * (r + 1)
    minus = [0] * (2 * r + 1)
    for k, c in enumerate(cp):
        plus[r - k] += c * (-1) ** (r - k)
        minus[2 * (r - k)] += c
    return Poly(plus), Poly(minus)


def char_factors(w, reduced: bool = False) -> tuple:
    """(det(1+tw), det(1-t^2 w)) for ``w`` in its natural representation.

    With ``reduced`` the trivial summand of the permutation representation is
    removed, giving the reflection representation of type A.
    """
    if isinstance(w, Permutation):
        a, b = cycle_type_factors(cycle_partition(w))
    elif isinstance(w, SignedPermutation):
        a, b = cycle_type_factors(signed_cycle_partition(w))
    else:
        a, b = factors_from_charpoly(charpoly(w.matrix()))
    if reduced:
        a = a // (ONE + Poly.monomial(1))
        b = b // one_minus_t_pow(2)
    return a, b


# --- enumeration ------------------------------------------------------------

def _check_budget(spec: GroupSpec, budget) -> None:
    cap = BUDGETS[budget] if isinstance(budget, str) else budget
    size = weyl_order(spec)
    if cap is not None and size > cap:
        raise BudgetExceeded(spec.label, size, cap)
    if size > SLOW_WARNING:
        log.warning("enumerating %d elements of W(%s); this takes a while", size, spec.label)


def symmetric_group(n: int) -> list:
    return [Permutation(p) for p in permutations(range(n))]


def hyperoctahedral_group(n: int, even: bool = False) -> list:
    out = []
    for p in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            if not even or prod(signs) == 1:
                out.append(SignedPermutation(p, signs))
    return out


def simple_reflections(cartan) -> list:
    """Integer matrices of the simple reflections acting on root coordinates.

    ``s_i(alpha_j) = alpha_j - A[i][j] alpha_i``; row ``i`` is the only row that changes.
    """
    A = np.asarray(cartan, dtype=np.int64)
    r = len(A)
    gens = []
    for i in range(r):
        S = np.eye(r, dtype=np.int64)
        S[i, :] -= A[i, :]
        gens.append(S)
    return gens


def _void_rows(arr: np.ndarray) -> np.ndarray:
    flat = np.ascontiguousarray(arr.reshape(len(arr), -1))
    return flat.view(np.dtype((np.void, flat.dtype.itemsize * flat.shape[1]))).ravel()


def matrix_layers(cartan, dtype=np.int16):
    """Yield the elements of the Weyl group grouped by Coxeter length, as ``(N, r, r)`` arrays.

    Right-multiplying a length-``l`` element by a simple reflection lands in
    length ``l - 1`` or ``l + 1``, so only the previous layer is needed to
    recognise the new elements.
    """
    gens = [g.astype(dtype) for g in simple_reflections(cartan)]
    r = len(gens)
    prev = np.zeros((0, r, r), dtype=dtype)
    cur = np.eye(r, dtype=dtype)[None]
    while len(cur):
        yield cur
        cand = np.concatenate([cur @ g for g in gens])
        keys = _void_rows(cand)
        _, first = np.unique(keys, return_index=True)
        cand, keys = cand[first], keys[first]
        if len(prev):
            cand = cand[~np.isin(keys, _void_rows(prev))]
        prev, cur = cur, cand


def enumerate_group(spec: GroupSpec, budget="small") -> list:
    """Every element of the Weyl group exactly once, in a deterministic order."""
    _check_budget(spec, budget)
    f, n = spec.family, spec.n
    if f in (Family.U, Family.SU):
        return symmetric_group(n)
    if f in (Family.Sp, Family.SOodd):
        return hyperoctahedral_group(n)
    if f is Family.SOeven:
        return hyperoctahedral_group(n, even=True)
    from .refdata import load_cartan
    out = []
    for layer in matrix_layers(load_cartan(f.value).matrix):
        out.extend(MatrixElement.from_array(m) for m in layer)
    return out


def det_factor_counts(spec: GroupSpec, budget="small") -> dict:
    """Bucket W by the pair (det(1+tw), det(1-t^2 w)) on the reflection representation.

    Classical families are bucketed by (signed) cycle type first; exceptional
    ones by the characteristic polynomial of each layer of matrices.
    """
    _check_budget(spec, budget)
    reduced = spec.family is Family.SU
    types = {}
    if not spec.exceptional:
        for w in enumerate_group(spec, None):
            lam = (signed_cycle_partition(w) if isinstance(w, SignedPermutation)
                   else cycle_partition(w))
            types[lam] = types.get(lam, 0) + 1
        convert = cycle_type_factors
    else:
        from .refdata import load_cartan
        for layer in matrix_layers(load_cartan(spec.family.value).matrix):
            polys, mult = np.unique(charpoly_batch(layer), axis=0, return_counts=True)
            for cp, c in zip(polys, mult):
                key = tuple(int(x) for x in cp)
                types[key] = types.get(key, 0) + int(c)
        convert = factors_from_charpoly
    out = {}
    for key, c in types.items():
        a, b = convert(key)
        if reduced:
            a = a // (ONE + Poly.monomial(1))
            b = b // one_minus_t_pow(2)
        out[a, b] = out.get((a, b), 0) + c
    return out


def classical_order(spec: GroupSpec) -> int:
    n = spec.n
    if spec.family in (Family.U, Family.SU):
        return factorial(n)
    if spec.family is Family.SOeven:
        return 2 ** (n - 1) * factorial(n)
    return 2 ** n * factorial(n)
