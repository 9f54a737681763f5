"""Sawtooth function and the cotangent/Dedekind-sum identities.

Every identity here is evaluated twice: once with exact arithmetic in a
cyclotomic field, once with rational sawtooth sums or closed forms.  A
disagreement raises ConsistencyError.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

from .cyclotomic import (
    NOT_RATIONAL,
    CyclotomicNumber,
    as_rational,
    embed_root,
    inverse_one_minus_root,
)
from .errors import ConsistencyError
from .groups import fixed_subgroup

__all__ = [
    "sawtooth",
    "cot_square_sum",
    "generalized_dedekind_sum",
    "dedekind_sum_sides",
    "subgroup_cot_sum",
    "SubgroupCotSum",
]


def sawtooth(x):
    """((x)) = x - floor(x) - 1/2 off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - floor(x) - Fraction(1, 2)


def _rational_or_fail(value, what):
    r = as_rational(value)
    if r is NOT_RATIONAL:
        raise ConsistencyError(f"{what} is not rational: {value!r}")
    return r


def cot_square_sum(r):
    """-sum_{k=1}^{r-1} zeta^k / (1 - zeta^k)^2, checked against (r^2 - 1)/12."""
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    total = CyclotomicNumber.from_rational(0, r)
    for k in range(1, r):
        z = embed_root(Fraction(k, r), r)
        u = inverse_one_minus_root(Fraction(k, r), r)
        total = total - z * u * u
    value = _rational_or_fail(total, f"cotangent square sum for r={r}")
    expected = Fraction(r * r - 1, 12)
    if value != expected:
        raise ConsistencyError(f"r={r}: cyclotomic sum {value} != (r^2-1)/12 = {expected}")
    return value


@lru_cache(maxsize=64)
def _cot_products(r):
    """c_m = (1 + zeta^m)/(1 - zeta^m) and the table of products c_m1 * c_m2."""
    c = [None] + [
        (1 + embed_root(Fraction(m, r), r)) * inverse_one_minus_root(Fraction(m, r), r)
        for m in range(1, r)
    ]
    table = {}
    for m1 in range(1, r):
        for m2 in range(m1, r):
            table[m1, m2] = table[m2, m1] = c[m1] * c[m2]
    return table


def dedekind_sum_sides(a, b, r):
    """Both sides of the generalized Dedekind-sum identity, unchecked.

    Returns (cyclotomic side, sawtooth side) as Fractions; the cyclotomic
    side is certified rational.
    """
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    if not (0 < a < r and 0 < b < r):
        a0, b0 = a, b
        a, b = a % r, b % r
        if a == 0 or b == 0:
            raise ValueError(f"a={a0}, b={b0} vanish modulo r={r}")
        warnings.warn(f"reducing a={a0}, b={b0} modulo r={r}", stacklevel=2)
    table = _cot_products(r)
    acc_num = None
    for k in range(1, r):
        ak, bk = a * k % r, b * k % r
        if ak == 0 or bk == 0:
            continue
        term = table[ak, bk]
        acc_num = term if acc_num is None else acc_num + term
    if acc_num is None:
        lhs = Fraction(0)
    else:
        lhs = _rational_or_fail(acc_num / (4 * r), f"cotangent side for (a,b,r)=({a},{b},{r})")
    rhs = -sum((sawtooth(Fraction(a * k, r)) * sawtooth(Fraction(b * k, r)) for k in range(1, r)),
               Fraction(0))
    return lhs, rhs


def generalized_dedekind_sum(a, b, r):
    """-sum_k ((ak/r))((bk/r)), verified against the cotangent double sum."""
    lhs, rhs = dedekind_sum_sides(a, b, r)
    if lhs != rhs:
        raise ConsistencyError(f"(a,b,r)=({a},{b},{r}): cotangent side {lhs} != sawtooth side {rhs}")
    return rhs


@dataclass(frozen=True)
class SubgroupCotSum:
    value: Fraction
    expected: Fraction
    stabilizer_order: int
    index: int
    vanishing_sum: Fraction

    @property
    def ok(self):
        return self.value == self.expected and self.vanishing_sum == 0


def subgroup_cot_sum(H, i, check=True):
    """-sum over h in H moving x_i of lambda_i(h)/(1 - lambda_i(h))^2.

    The closed form is |H^{i}| (|H/H^{i}|^2 - 1)/12 with H^{i} the
    stabilizer of coordinate i.  Also evaluates sum (1+lambda)/(1-lambda),
    which must vanish.  With ``check`` a mismatch raises ConsistencyError.
    """
    if not 0 <= i < H.n:
        raise ValueError(f"coordinate {i} out of range for n={H.n}")
    N = H.exponent
    total = CyclotomicNumber.from_rational(0, N)
    vanishing = CyclotomicNumber.from_rational(0, N)
    for h in H.elements:
        if h.angles[i] == 0:
            continue
        lam = embed_root(h.angles[i], N)
        u = inverse_one_minus_root(h.angles[i], N)
        total = total - lam * u * u
        vanishing = vanishing + (1 + lam) * u
    value = _rational_or_fail(total, f"subgroup cotangent sum at coordinate {i}")
    van = _rational_or_fail(vanishing, "cotangent vanishing sum")
    stab = len(fixed_subgroup(H, [i]))
    index = len(H) // stab
    expected = Fraction(stab * (index * index - 1), 12)
    result = SubgroupCotSum(value, expected, stab, index, van)
    if check and not result.ok:
        raise ConsistencyError(
            f"coordinate {i}: sum {value} vs closed form {expected}, vanishing sum {van}"
        )
    return result
