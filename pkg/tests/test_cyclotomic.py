import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbivar.cyclotomic import (
    NOT_RATIONAL,
    CyclotomicNumber,
    RootOfUnity,
    _poly_inverse_mod,
    as_rational,
    cyclotomic_polynomial,
    embed_root,
    inverse_one_minus_root,
)
from orbivar.errors import IncompatibleModulusError


def numeric(x):
    """Complex value at zeta = exp(2 pi i / N): an independent floating oracle."""
    z = cmath.exp(2j * cmath.pi / x.modulus)
    return sum(float(c) * z ** k for k, c in enumerate(x.coeffs))


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_small_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("N", range(1, 61))
def test_product_of_cyclotomic_polynomials(N):
    prod = [1]
    for d in range(1, N + 1):
        if N % d == 0:
            prod = poly_mul(prod, cyclotomic_polynomial(d))
    assert prod == [-1] + [0] * (N - 1) + [1]


def test_inverse_of_one_minus_cube_root():
    z = embed_root(Fraction(1, 3), 3)
    inv = (1 - z).inverse()
    assert inv.coeffs == (Fraction(2, 3), Fraction(1, 3))


def test_primitive_fifth_roots_sum_to_minus_one():
    total = sum((embed_root(Fraction(k, 5), 5) for k in range(1, 5)),
                CyclotomicNumber.from_rational(0, 5))
    assert as_rational(total) == -1


def test_embed_incompatible_modulus():
    with pytest.raises(IncompatibleModulusError):
        embed_root(Fraction(1, 4), 6)


def test_mixed_moduli_rejected():
    with pytest.raises(IncompatibleModulusError):
        embed_root(0, 3) + embed_root(0, 5)


def test_as_rational():
    assert as_rational(Fraction(3, 4)) == Fraction(3, 4)
    assert as_rational(embed_root(Fraction(1, 3), 3)) is NOT_RATIONAL
    assert as_rational(CyclotomicNumber.from_rational(Fraction(-2, 7), 12)) == Fraction(-2, 7)


def test_root_of_unity_group_law():
    a, b = RootOfUnity(Fraction(1, 3)), RootOfUnity(Fraction(5, 6))
    assert (a * b).angle == Fraction(1, 6)
    assert (a ** 3).is_one()
    assert a.inverse().angle == Fraction(2, 3)
    assert RootOfUnity(Fraction(7, 4)).order == 4


moduli = st.sampled_from([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 24, 30])
small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def elements(draw, N=None):
    N = N if N is not None else draw(moduli)
    d = len(cyclotomic_polynomial(N)) - 1
    return CyclotomicNumber(N, [draw(small) for _ in range(d)])


@st.composite
def triples(draw):
    N = draw(moduli)
    return tuple(draw(elements(N)) for _ in range(3))


@settings(max_examples=60, deadline=None)
@given(triples())
def test_field_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1


@settings(max_examples=60, deadline=None)
@given(triples())
def test_embedding_is_a_ring_homomorphism(t):
    a, b, _ = t
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-6
    assert abs(numeric(a + b) - numeric(a) - numeric(b)) < 1e-6


@settings(max_examples=40, deadline=None)
@given(elements())
def test_galois_inverse_matches_euclid(a):
    if a.is_zero() or a.is_rational():
        return
    euclid = CyclotomicNumber(a.modulus, _poly_inverse_mod(list(a.coeffs),
                                                           cyclotomic_polynomial(a.modulus)))
    assert a.inverse() == euclid


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 60), st.integers(1, 59))
def test_embed_root_is_multiplicative(N, k):
    a = Fraction(k % N, N)
    b = Fraction((3 * k + 1) % N, N)
    assert embed_root(a, N) * embed_root(b, N) == embed_root(a + b, N)


@pytest.mark.parametrize("N", [2, 3, 5, 12, 30, 60])
def test_inverse_one_minus_root(N):
    for k in range(1, N):
        u = inverse_one_minus_root(Fraction(k, N), N)
        assert u * (1 - embed_root(Fraction(k, N), N)) == 1


def test_inverse_one_minus_one_fails():
    with pytest.raises(ZeroDivisionError):
        inverse_one_minus_root(0, 5)


def test_equality_and_hash_with_rationals():
    x = CyclotomicNumber.from_rational(Fraction(1, 2), 7)
    assert x == Fraction(1, 2)
    assert hash(x) == hash(Fraction(1, 2))
