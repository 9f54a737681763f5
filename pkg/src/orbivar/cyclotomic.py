"""Exact arithmetic in cyclotomic fields.

Elements of Q(zeta_N) are stored in the power basis 1, zeta, ..., zeta^(d-1)
with d = phi(N), reduced modulo the N-th cyclotomic polynomial.  That makes
the representation canonical, so equality and "is this rational?" are plain
coordinate tests.  Coordinates are kept as integer numerators over one common
positive denominator, which is much faster than a vector of Fractions.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import IncompatibleModulusError

__all__ = [
    "RootOfUnity",
    "CyclotomicNumber",
    "cyclotomic_polynomial",
    "embed_root",
    "inverse_one_minus_root",
    "as_rational",
    "NOT_RATIONAL",
]


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num, den):
    """Exact division of integer polynomials (low-to-high), den monic."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(num) - dd)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dd]
        quot[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    if any(num[:dd]):
        raise ArithmeticError("division is not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Return the coefficients of Phi_n, lowest degree first.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n):
    """x^j mod Phi_n for 0 <= j < n, as integer coordinate tuples."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    cur = [0] * d
    cur[0] = 1
    table = [tuple(cur)]
    for _ in range(n - 1):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(d):
                cur[j] -= top * phi[j]
        table.append(tuple(cur))
    return tuple(table)


def _reduce(coeffs, n):
    """Reduce an integer polynomial modulo Phi_n (using x^n = 1)."""
    table = _power_table(n)
    d = len(table[0])
    c = list(coeffs[:d])
    c += [0] * (d - len(c))
    for k in range(d, len(coeffs)):
        t = coeffs[k]
        if t:
            c = [a + t * x for a, x in zip(c, table[k % n])]
    return c


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """The root of unity e[angle] = exp(2*pi*i*angle), angle kept in [0, 1)."""

    angle: Fraction

    def __post_init__(self):
        object.__setattr__(self, "angle", Fraction(self.angle) % 1)

    @property
    def order(self):
        return self.angle.denominator

    def __mul__(self, other):
        return RootOfUnity(self.angle + other.angle)

    def __pow__(self, k):
        return RootOfUnity(self.angle * k)

    def inverse(self):
        return RootOfUnity(-self.angle)

    def is_one(self):
        return self.angle == 0


class CyclotomicNumber:
    """An element of the N-th cyclotomic field, immutable."""

    __slots__ = ("modulus", "_num", "_den")

    def __init__(self, modulus, coeffs):
        d = len(cyclotomic_polynomial(modulus)) - 1
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > d:
            # allow unreduced input; reduce over a common denominator
            den = 1
            for c in coeffs:
                den = den * c.denominator // gcd(den, c.denominator)
            ints = _reduce([int(c * den) for c in coeffs], modulus)
            coeffs = [Fraction(x, den) for x in ints]
        coeffs += [Fraction(0)] * (d - len(coeffs))
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        self._set(modulus, [int(c * den) for c in coeffs], den)

    def _set(self, modulus, num, den):
        g = den
        for x in num:
            if x:
                g = gcd(g, x)
                if g == 1:
                    break
        if g != 1:
            num = [x // g for x in num]
            den //= g
        self.modulus = modulus
        self._num = tuple(num)
        self._den = den

    @classmethod
    def _raw(cls, modulus, num, den=1):
        obj = cls.__new__(cls)
        obj._set(modulus, num, den)
        return obj

    @classmethod
    def from_rational(cls, value, modulus):
        value = Fraction(value)
        d = len(cyclotomic_polynomial(modulus)) - 1
        return cls._raw(modulus, [value.numerator] + [0] * (d - 1), value.denominator)

    @classmethod
    def from_group_ring(cls, counts, modulus, denominator=1):
        """Reduce sum_j counts[j] * zeta^j (j mod modulus) into canonical form."""
        table = _power_table(modulus)
        d = len(table[0])
        acc = [0] * d
        for j, c in enumerate(counts):
            if c:
                row = table[j % modulus]
                for k in range(d):
                    if row[k]:
                        acc[k] += c * row[k]
        return cls._raw(modulus, acc, denominator)

    # -- accessors -----------------------------------------------------------

    @property
    def coeffs(self):
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def degree(self):
        return len(self._num)

    def is_zero(self):
        return not any(self._num)

    def __bool__(self):
        return any(self._num)

    def is_rational(self):
        return not any(self._num[1:])

    def rational_value(self):
        return Fraction(self._num[0], self._den)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.modulus != self.modulus:
                raise IncompatibleModulusError(
                    f"moduli differ: {self.modulus} vs {other.modulus}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._den, other._den
        if a == b:
            num = [x + y for x, y in zip(self._num, other._num)]
            return CyclotomicNumber._raw(self.modulus, num, a)
        num = [x * b + y * a for x, y in zip(self._num, other._num)]
        return CyclotomicNumber._raw(self.modulus, num, a * b)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.modulus, [-x for x in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            num = [x * other.numerator for x in self._num]
            return CyclotomicNumber._raw(self.modulus, num, self._den * other.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = len(self._num)
        ys = other._num
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(self._num):
            if x:
                prod[i:i + d] = [p + x * y for p, y in zip(prod[i:i + d], ys)]
        return CyclotomicNumber._raw(
            self.modulus, _reduce(prod, self.modulus), self._den * other._den
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return CyclotomicNumber.from_rational(1 / self.rational_value(), self.modulus)
        # 1/a = (product of the other Galois conjugates of a) / N(a); all integer work
        N = self.modulus
        conj = None
        for j in range(2, N):
            if gcd(j, N) == 1:
                s = self.galois(j)
                conj = s if conj is None else conj * s
        norm = self * conj
        if not norm.is_rational():
            raise ArithmeticError("norm of a cyclotomic number is not rational")
        return conj * (1 / norm.rational_value())

    def galois(self, j):
        """Image under the automorphism zeta -> zeta^j, gcd(j, N) = 1."""
        N = self.modulus
        if gcd(j, N) != 1:
            raise ValueError(f"{j} is not a unit modulo {N}")
        table = _power_table(N)
        acc = [0] * len(self._num)
        for k, c in enumerate(self._num):
            if c:
                row = table[k * j % N]
                for t, x in enumerate(row):
                    if x:
                        acc[t] += c * x
        return CyclotomicNumber._raw(N, acc, self._den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.from_rational(1, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return (
                self.modulus == other.modulus
                and self._den == other._den
                and self._num == other._num
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_value())
        return hash((self.modulus, self._num, self._den))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"({c})*z{self.modulus}^{k}")
        return " + ".join(terms) if terms else "0"


# -- polynomial helpers over Q; the Euclidean inverse is kept as a test oracle --


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if not a or len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while a and len(a) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        _trim(a)
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a, m):
    """Inverse of a modulo the irreducible m, by the extended Euclidean algorithm."""
    r0, r1 = _trim([Fraction(x) for x in m]), _trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


# -- module-level operations --------------------------------------------------


def embed_root(zeta, modulus):
    """Canonical image of the root of unity ``zeta`` in Q(zeta_modulus)."""
    if not isinstance(zeta, RootOfUnity):
        zeta = RootOfUnity(zeta)
    if modulus % zeta.order:
        raise IncompatibleModulusError(
            f"root of order {zeta.order} does not live in Q(zeta_{modulus})"
        )
    j = int(zeta.angle * modulus)
    return CyclotomicNumber._raw(modulus, list(_power_table(modulus)[j]))


@lru_cache(maxsize=4096)
def inverse_one_minus_root(zeta, modulus):
    """1/(1 - zeta) for a root zeta != 1, certified by one multiplication.

    Uses (1 - x) * sum_j j x^j = -d for x of order d, so the inverse is a
    group-ring element and needs no polynomial division.
    """
    if not isinstance(zeta, RootOfUnity):
        zeta = RootOfUnity(zeta)
    if zeta.is_one():
        raise ZeroDivisionError("1 - zeta vanishes for zeta = 1")
    d = zeta.order
    if modulus % d:
        raise IncompatibleModulusError(
            f"root of order {d} does not live in Q(zeta_{modulus})"
        )
    start = int(zeta.angle * modulus)
    counts = [0] * modulus
    for j in range(1, d):
        counts[start * j % modulus] -= j
    u = CyclotomicNumber.from_group_ring(counts, modulus, d)
    if u * (1 - embed_root(zeta, modulus)) != 1:
        raise ArithmeticError(f"inverse of 1 - zeta failed for {zeta}")
    return u


class _NotRational:
    def __repr__(self):
        return "NOT_RATIONAL"


NOT_RATIONAL = _NotRational()


def as_rational(value):
    """Return ``value`` as a Fraction, or NOT_RATIONAL if it is irrational."""
    if isinstance(value, CyclotomicNumber):
        return value.rational_value() if value.is_rational() else NOT_RATIONAL
    return Fraction(value)
