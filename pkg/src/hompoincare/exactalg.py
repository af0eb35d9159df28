"""Exact univariate polynomials and rational functions over Q.

Coefficients are held as Python ints where integral and as
:class:`fractions.Fraction` otherwise, so the common all-integer case runs on
plain big-int arithmetic.  Everything here is immutable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence, Union

Coeff = Union[int, Fraction]


class NonPolynomialResult(ArithmeticError):
    """A rational function that should have been a polynomial was not."""


class ZeroDenominator(ZeroDivisionError):
    pass


class _MinusInfinity:
    """Degree of the zero polynomial.

    Compares below every integer but refuses arithmetic, so a zero degree
    can never leak silently into an exponent computation.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MINUS_INFINITY"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("MINUS_INFINITY")

    def _no_arith(self, *_):
        raise TypeError("arithmetic on the degree of the zero polynomial")

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _no_arith
    __neg__ = __int__ = __index__ = _no_arith


MINUS_INFINITY = _MinusInfinity()


def _norm(x) -> Coeff:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _norm(Fraction(x.numerator, x.denominator))
    raise TypeError(f"non-rational coefficient {x!r}")


def _strip(cs: list) -> tuple:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _den(x: Coeff) -> int:
    return 1 if isinstance(x, int) else x.denominator


class Poly:
    """Dense polynomial in ``t``; ``coeffs[i]`` is the coefficient of ``t**i``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([_norm(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def monomial(cls, k: int, c: Coeff = 1) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c: Coeff) -> "Poly":
        return cls([c])

    # -- basic queries -------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Coeff:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def leading(self) -> Coeff:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def valuation(self):
        """Index of the lowest nonzero coefficient."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return MINUS_INFINITY

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- ring operations -----------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            s = out[i] + c
            out[i] = s if isinstance(s, int) else _norm(s)
        return Poly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly._raw(())
            return Poly._raw(tuple(_norm(c * other) for c in self.coeffs))
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(())
        da = lcm(*(_den(c) for c in a))
        db = lcm(*(_den(c) for c in b))
        ia = [int(c * da) for c in a]
        ib = [int(c * db) for c in b]
        out = [0] * (len(ia) + len(ib) - 1)
        for i, x in enumerate(ia):
            if x:
                for j, y in enumerate(ib):
                    out[i + j] += x * y
        d = da * db
        if d == 1:
            return Poly._raw(_strip(out))
        return Poly._raw(_strip([_norm(Fraction(c, d)) for c in out]))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by ``t**k`` (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift")
        if not self.coeffs:
            return self
        return Poly._raw((0,) * k + self.coeffs)

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDenominator("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return ZERO, self
        quot = [0] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if c == 0:
                continue
            if isinstance(c, int) and isinstance(lead, int) and c % lead == 0:
                q = c // lead
            else:
                q = _norm(Fraction(c) / lead)
            quot[k] = q
            for j, bc in enumerate(other.coeffs):
                if bc:
                    rem[k + j] = _norm(rem[k + j] - q * bc)
        return Poly(quot), Poly(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading
        if lead == 1:
            return self
        return Poly(Fraction(c) / lead for c in self.coeffs)

    # -- comparison / display ------------------------------------------
    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return format_plain(self)


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly([x])
    return NotImplemented


ZERO = Poly()
ONE = Poly([1])
T = Poly([0, 1])


def format_plain(p: Poly, var: str = "t") -> str:
    """``c0 + c1 t + c2 t^2 + ...`` with zero terms omitted."""
    if p.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag} {mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial op {op!r}")


# ---------------------------------------------------------------------------
# gcd over Q via a primitive pseudo-remainder sequence over Z
# ---------------------------------------------------------------------------

def _primitive_int(p: Poly) -> list:
    d = lcm(*(_den(c) for c in p.coeffs))
    ints = [int(c * d) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def _int_prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer coefficient lists (``len(a) >= len(b)``)."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j, bc in enumerate(b):
            a[shift + j] -= la * bc
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _int_primitive(a: list) -> list:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            return a
    return [c // g for c in a] if g else a


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    x, y = _primitive_int(a), _primitive_int(b)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _int_primitive(_int_prem(x, y))
        x, y = y, r
    return Poly(x).monic()


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RatFn:
    """Reduced fraction ``num/den`` whose denominator has lowest nonzero coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = _as_poly(num) if not isinstance(num, Poly) else num
        den = ONE if den is None else (_as_poly(den) if not isinstance(den, Poly) else den)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @property
    def degree(self):
        if self.num.is_zero():
            return MINUS_INFINITY
        return self.num.degree - self.den.degree

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        other = _as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g == ONE:
            return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)
        a = self.den // g
        b = other.den // g
        return RatFn(self.num * b + other.num * a, a * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFn(ZERO)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = (self.num // g1) * (other.num // g2)
        den = (self.den // g2) * (other.den // g1)
        return RatFn(*_scale(num, den), _reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return self * RatFn(other.den, other.num)

    def __rtruediv__(self, other):
        return _as_ratfn(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RatFn(ONE) / (self ** (-e))
        return RatFn(self.num ** e, self.den ** e, _reduced=True)

    def __eq__(self, other):
        other = _as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFn({self.num!r}, {self.den!r})"


def _scale(num: Poly, den: Poly):
    low = den.coeffs[den.valuation()]
    if low != 1:
        num = num * _norm(Fraction(1) / Fraction(low))
        den = den * _norm(Fraction(1) / Fraction(low))
    return num, den


def _reduce(num: Poly, den: Poly):
    if num.is_zero():
        return ZERO, ONE
    g = poly_gcd(num, den)
    if g != ONE:
        num = num // g
        den = den // g
    return _scale(num, den)


def _as_ratfn(x):
    if isinstance(x, RatFn):
        return x
    if isinstance(x, (Poly, int, Fraction)):
        return RatFn(x)
    return NotImplemented


def ratfn_arith(a: RatFn, b: RatFn, op: str) -> RatFn:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown rational-function op {op!r}")


def exact_to_poly(a: RatFn) -> Poly:
    """Return ``a`` as a polynomial, or raise :class:`NonPolynomialResult`."""
    q, r = divmod(a.num, a.den)
    if not r.is_zero():
        raise NonPolynomialResult(f"{a!r} is not a polynomial")
    return q


def truncated_expand(a: RatFn, n: int) -> Poly:
    """Power series of ``a`` around ``t = 0`` through degree ``n``."""
    den = a.den.coeffs
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator has zero constant term")
    d0 = Fraction(den[0])
    out: list = []
    for k in range(n + 1):
        acc = Fraction(a.num.coeff(k))
        for j in range(1, min(k, len(den) - 1) + 1):
            if den[j]:
                acc -= den[j] * out[k - j]
        out.append(_norm(acc / d0))
    return Poly(out)


def truncate(p: Poly, n: int) -> Poly:
    return Poly(p.coeffs[: n + 1])


def one_minus_t_pow(k: int, sign: int = 1) -> Poly:
    """``1 - sign * t**k``."""
    return Poly([1]) - Poly.monomial(k, sign)


def product(polys: Sequence) -> Poly:
    out = ONE
    for p in polys:
        out = out * p
    return out
