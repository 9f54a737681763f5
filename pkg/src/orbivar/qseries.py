"""Laurent polynomials with rational exponents, and truncated series.

``FracLaurent1`` and ``FracLaurent2`` are finite, sparse and immutable.
``TruncatedSeries`` is the expansion device used to turn the rational
functions of the sector formula into polynomials: every series is bounded
below (nothing lives under ``lo``) and known exactly up to ``hi``.
Exponents inside a ``TruncatedSeries`` are integers counting steps of 1/step.
"""

from fractions import Fraction
from math import lcm

from .cyclotomic import NOT_RATIONAL, RootOfUnity, as_rational, embed_root
from .errors import AveragingError, TruncationError

__all__ = [
    "FracLaurent1",
    "FracLaurent2",
    "TruncatedSeries",
    "expand_geometric_factor",
    "series_mul",
    "finite_part_check",
]


def _clean(terms):
    return {e: c for e, c in terms.items() if c}


class FracLaurent1:
    """Finite sum of c * y^e with rational e."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc = {}
        for e, c in dict(terms or {}).items():
            e = e if type(e) is Fraction else Fraction(e)
            acc[e] = acc.get(e, 0) + c
        self._terms = _clean(acc)

    @classmethod
    def _trusted(cls, terms):
        # keys already Fractions, no duplicates
        obj = cls.__new__(cls)
        obj._terms = _clean(terms)
        return obj

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, e):
        return self._terms.get(Fraction(e), 0)

    @property
    def denominator_bound(self):
        return lcm(1, *(e.denominator for e in self._terms))

    def __add__(self, other):
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return FracLaurent1._trusted(acc)

    def __neg__(self):
        return FracLaurent1._trusted({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FracLaurent1):
            return FracLaurent1._trusted({e: c * other for e, c in self._terms.items()})
        acc = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return FracLaurent1(acc)

    __rmul__ = __mul__

    def shift(self, d):
        d = Fraction(d)
        return FracLaurent1._trusted({e + d: c for e, c in self._terms.items()})

    def at_one(self):
        """Value at y = 1, i.e. the sum of the coefficients."""
        return sum(self._terms.values(), 0)

    def moment(self, k, center=0):
        return sum((c * (e - center) ** k for e, c in self._terms.items()), 0)

    def __eq__(self, other):
        if isinstance(other, FracLaurent1):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "FracLaurent1(0)"
        body = " + ".join(f"{c}*y^({e})" for e, c in self.items())
        return f"FracLaurent1({body})"


class FracLaurent2:
    """Finite sum of c * t^a * tbar^b with rational (a, b)."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc = {}
        for (a, b), c in dict(terms or {}).items():
            if type(a) is not Fraction or type(b) is not Fraction:
                a, b = Fraction(a), Fraction(b)
            key = (a, b)
            acc[key] = acc.get(key, 0) + c
        self._terms = _clean(acc)

    @classmethod
    def _trusted(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = _clean(terms)
        return obj

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        # sorted by (tbar exponent, t exponent)
        return sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def __len__(self):
        return len(self._terms)

    def __add__(self, other):
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return FracLaurent2._trusted(acc)

    def __neg__(self):
        return FracLaurent2._trusted({k: -c for k, c in self._terms.items()})

    def swap(self):
        return FracLaurent2._trusted({(b, a): c for (a, b), c in self._terms.items()})

    def invert(self):
        """Substitute (t, tbar) -> (1/t, 1/tbar)."""
        return FracLaurent2._trusted({(-a, -b): c for (a, b), c in self._terms.items()})

    def at_one(self):
        return sum(self._terms.values(), 0)

    def specialize_t_one(self):
        """Return the one-variable polynomial E(1, y)."""
        return FracLaurent1._trusted(_sum_by_b(self._terms))

    def __eq__(self, other):
        if isinstance(other, FracLaurent2):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "FracLaurent2(0)"
        body = " + ".join(f"{c}*t^({a})*tb^({b})" for (a, b), c in self.items())
        return f"FracLaurent2({body})"


def _sum_by_b(terms):
    acc = {}
    for (_, b), c in terms.items():
        acc[b] = acc.get(b, 0) + c
    return acc


class TruncatedSeries:
    """Laurent series in y^(1/step), supported in [lo, ...], exact up to hi.

    ``coeffs`` maps integer k to the coefficient of y^(k/step).  The
    coefficient domain is whatever the caller supplies (int, Fraction,
    CyclotomicNumber); it only needs +, * and truthiness.
    """

    __slots__ = ("step", "lo", "hi", "coeffs")

    def __init__(self, step, lo, hi, coeffs=None):
        if lo > hi:
            raise ValueError(f"empty window [{lo}, {hi}]")
        self.step = step
        self.lo = lo
        self.hi = hi
        self.coeffs = {k: c for k, c in (coeffs or {}).items() if c and lo <= k <= hi}

    @classmethod
    def constant(cls, value, step, lo, hi):
        return cls(step, lo, hi, {0: value} if lo <= 0 <= hi else {})

    def window(self):
        return Fraction(self.lo, self.step), Fraction(self.hi, self.step)

    def valuation(self):
        """Lowest exponent (in steps) that can carry a nonzero coefficient."""
        return min(self.coeffs) if self.coeffs else self.hi + 1

    def rescale(self, step):
        if step % self.step:
            raise ValueError(f"cannot rescale step {self.step} to {step}")
        f = step // self.step
        return TruncatedSeries(step, self.lo * f, self.hi * f,
                               {k * f: c for k, c in self.coeffs.items()})

    def scale(self, factor):
        return TruncatedSeries(self.step, self.lo, self.hi,
                               {k: c * factor for k, c in self.coeffs.items()})

    def __add__(self, other):
        step = lcm(self.step, other.step)
        a, b = self.rescale(step), other.rescale(step)
        acc = dict(a.coeffs)
        for k, c in b.coeffs.items():
            acc[k] = acc[k] + c if k in acc else c
        return TruncatedSeries(step, min(a.lo, b.lo), min(a.hi, b.hi), acc)

    def items(self):
        return [(Fraction(k, self.step), c) for k, c in sorted(self.coeffs.items())]

    def __repr__(self):
        lo, hi = self.window()
        return f"TruncatedSeries(window=[{lo}, {hi}], {self.items()})"


def _steps(x, step):
    v = Fraction(x) * step
    if v.denominator != 1:
        raise ValueError(f"{x} is not a multiple of 1/{step}")
    return v.numerator


def expand_geometric_factor(A, B, lam, C, window, modulus=None, step=None):
    """Expand (y^A - lam*y^B) / (1 - lam*y^C) as a series clipped to ``window``.

    Uses (y^A - lam*y^B) * sum_k lam^k y^(kC).  Coefficients are ints when
    lam = 1 and no modulus is requested, otherwise elements of Q(zeta_modulus)
    (modulus defaults to the order of lam).
    """
    A, B, C = Fraction(A), Fraction(B), Fraction(C)
    if C <= 0:
        raise ValueError(f"geometric ratio exponent must be positive, got {C}")
    if not isinstance(lam, RootOfUnity):
        lam = RootOfUnity(lam)
    L, U = Fraction(window[0]), Fraction(window[1])
    if step is None:
        step = lcm(*(x.denominator for x in (A, B, C, L, U)))
    a, b, c = _steps(A, step), _steps(B, step), _steps(C, step)
    lo, hi = _steps(L, step), _steps(U, step)
    if min(a, b) < lo and not (lam.is_one() and a == b):
        raise ValueError("window lower bound cuts off the leading terms")

    if lam.is_one() and modulus is None:
        def power(k):
            return 1
    else:
        N = modulus or lam.order
        cache = {}

        def power(k):
            k %= lam.order
            if k not in cache:
                cache[k] = embed_root(lam ** k, N)
            return cache[k]

    coeffs = {}

    def put(e, val):
        coeffs[e] = coeffs[e] + val if e in coeffs else val

    k = 0
    while a + k * c <= hi:
        put(a + k * c, power(k))
        k += 1
    k = 0
    while b + k * c <= hi:
        put(b + k * c, -power(k + 1))
        k += 1
    return TruncatedSeries(step, lo, hi, coeffs)


def series_mul(a, b, clip=None):
    """Truncated product; the result is exact on its whole window.

    The exact range of a product is bounded by hi_a + val_b and hi_b + val_a,
    where val is the lowest exponent actually present.
    """
    step = lcm(a.step, b.step)
    a, b = a.rescale(step), b.rescale(step)
    lo = a.lo + b.lo
    hi = min(a.hi + b.valuation(), b.hi + a.valuation())
    if clip is not None:
        lo = max(lo, _steps(clip[0], step))
        hi = min(hi, _steps(clip[1], step))
    hi = max(hi, lo)
    acc = {}
    for ka, ca in a.coeffs.items():
        for kb, cb in b.coeffs.items():
            k = ka + kb
            if k > hi:
                continue
            p = ca * cb
            acc[k] = acc[k] + p if k in acc else p
    return TruncatedSeries(step, lo, hi, acc)


def finite_part_check(s, support):
    """Certify that ``s`` is a Laurent polynomial supported in ``support``.

    The window of ``s`` must reach at least one unit past ``support`` on
    both sides.  Every coefficient outside the support must vanish, and
    every coefficient inside must be rational.
    """
    lo, hi = Fraction(support[0]), Fraction(support[1])
    wlo, whi = s.window()
    if wlo > lo - 1 or whi < hi + 1:
        raise ValueError(
            f"series window [{wlo}, {whi}] lacks a guard margin of 1 around [{lo}, {hi}]"
        )
    terms = {}
    for e, c in s.items():
        if e < lo or e > hi:
            raise TruncationError(f"nonzero coefficient {c!r} at y^({e}) outside [{lo}, {hi}]")
        r = as_rational(c)
        if r is NOT_RATIONAL:
            raise AveragingError(f"coefficient of y^({e}) is not rational: {c!r}")
        terms[e] = r
    return FracLaurent1._trusted(terms)
