import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbivar.errors import InvarianceError
from orbivar.groups import enumerate_group
from orbivar.orbifold import (
    chi_y,
    chi_y_closed,
    e_function,
    exponents,
    hodge_table,
    mean,
    mu_inclusion_exclusion,
    mu_pair,
    sector_group_sum,
    sector_series,
    sector_series_direct,
    variance,
    verify_main_theorem,
)
from orbivar.polynomial import (
    WeightSystem,
    brieskorn_pham,
    c_hat,
    exponents_trivial,
    parse_polynomial,
)
from orbivar.qseries import FracLaurent1, FracLaurent2
from orbivar.sweep import bp_polynomial, bp_symmetry_elements

F = Fraction
CUBIC_W = WeightSystem((F(1, 3),) * 3)
CUBIC_F = parse_polynomial("x1^3 + x2^3 + x3^3")
Z3 = enumerate_group(3, [(F(1, 3),) * 3])


def bp_e_function_oracle(exps, G):
    """E-function of a Brieskorn-Pham pair from invariant monomials, no series.

    In sector g the restriction is Brieskorn-Pham in the fixed coordinates.
    A basis form x^k dx_F has exponent q' = sum (k_i + 1)/a_i and is
    invariant when sum (k_i + 1) * angle_i(h) is integral for every h.
    """
    n = len(exps)
    terms = {}
    for g in G:
        fixed = g.fixed_coordinates()
        ng = len(fixed)
        age = g.age()
        sign = (-1) ** (n - ng)
        for ks in itertools.product(*(range(1, exps[i]) for i in fixed)):
            if any(sum(k * h.angles[i] for k, i in zip(ks, fixed)).denominator != 1 for h in G):
                continue
            qp = sum((F(k, exps[i]) for k, i in zip(ks, fixed)), F(0))
            p, q = ng - qp + age, qp + age
            key = (p - F(n, 2), q - F(n, 2))
            terms[key] = terms.get(key, 0) + sign
    return FracLaurent2(terms)


def test_fermat_cubic_trivial_group():
    E = e_function(CUBIC_W, enumerate_group(3), polynomial=CUBIC_F)
    assert mu_pair(E) == 8
    # exponents 1, 4/3 (x3), 5/3 (x3), 2 give four bidegrees
    table = hodge_table(E).as_dict()
    assert table == {(2, 1): 1, (F(5, 3), F(4, 3)): 3, (F(4, 3), F(5, 3)): 3, (1, 2): 1}
    assert sum(table.values()) == 8
    assert variance(E) == F(2, 3)
    assert exponents(E) == exponents_trivial(CUBIC_W)


def test_fermat_cubic_z3():
    E = e_function(CUBIC_W, Z3, polynomial=CUBIC_F)
    h = F(1, 2)
    assert E.poly == FracLaurent2({(h, -h): 1, (-h, h): 1, (-h, -h): -1, (h, h): -1})
    assert hodge_table(E).as_dict() == {(2, 1): 1, (1, 2): 1, (1, 1): 1, (2, 2): 1}
    assert mu_pair(E) == 0
    assert mu_inclusion_exclusion(CUBIC_W, Z3) == 0
    assert variance(E) == 0
    assert chi_y(E) == FracLaurent1()


def test_a1():
    W = WeightSystem((F(1, 2),))
    E = e_function(W, enumerate_group(1), assume_invariant=True)
    assert E.poly == FracLaurent2({(0, 0): 1})
    assert hodge_table(E).entries == ((F(1, 2), F(1, 2), 1),)
    assert mu_pair(E) == 1 and variance(E) == 0
    assert chi_y(E) == FracLaurent1({0: 1})


def test_a1_squared_with_involution():
    W = WeightSystem((F(1, 2), F(1, 2)))
    G = enumerate_group(2, [(F(1, 2), F(1, 2))])
    E = e_function(W, G, assume_invariant=True)
    assert mu_pair(E) == mu_inclusion_exclusion(W, G) == 2
    v = verify_main_theorem(W, G, assume_invariant=True)
    assert v.passed and v.variance == 0


def test_three_five_variance():
    W = WeightSystem((F(1, 3), F(1, 5)))
    E = e_function(W, enumerate_group(2), assume_invariant=True)
    assert variance(E) == F(28, 45)
    assert c_hat(W) * mu_pair(E) / 12 == F(28, 45)


def test_invariance_is_required():
    with pytest.raises(InvarianceError):
        e_function(CUBIC_W, Z3)
    with pytest.raises(InvarianceError):
        e_function(CUBIC_W, enumerate_group(3, [(F(1, 2), F(1, 2), 0)]), polynomial=CUBIC_F)


def test_raw_sectors_exposed():
    E = e_function(CUBIC_W, Z3, polynomial=CUBIC_F)
    assert len(E.sectors) == 3
    twisted = [s for s in E.sectors if s.n_fixed == 0]
    assert [s.age for s in twisted] == [1, 2]
    assert all(s.invariant == FracLaurent1({0: 1}) for s in twisted)


@st.composite
def bp_pairs(draw, max_n=3, max_a=5):
    n = draw(st.integers(1, max_n))
    exps = [draw(st.integers(2, max_a)) for _ in range(n)]
    elems = bp_symmetry_elements(exps)
    gens = draw(st.lists(st.sampled_from(elems), max_size=2))
    return exps, enumerate_group(n, gens)


@settings(max_examples=80, deadline=None)
@given(bp_pairs())
def test_e_function_matches_monomial_oracle(pair):
    exps, G = pair
    E = e_function(brieskorn_pham(exps), G, polynomial=parse_polynomial(bp_polynomial(exps)))
    assert E.poly == bp_e_function_oracle(exps, G)


@settings(max_examples=40, deadline=None)
@given(bp_pairs(max_n=3, max_a=4))
def test_formal_and_direct_routes_agree(pair):
    exps, G = pair
    W = brieskorn_pham(exps)
    for g in G:
        assert sector_series(W, G, g) == sector_series_direct(W, G, g)
    assert chi_y_closed(W, G, "direct") == chi_y_closed(W, G, "formal")


@settings(max_examples=80, deadline=None)
@given(bp_pairs(max_n=4, max_a=5))
def test_corollaries_and_main_identity(pair):
    exps, G = pair
    W = brieskorn_pham(exps)
    v = verify_main_theorem(W, G, polynomial=parse_polynomial(bp_polynomial(exps)))
    assert v.passed, v.checks
    E = v.efunction
    assert E.poly.swap() == E.poly
    assert E.poly.invert() == E.poly
    assert mean(E) == 0
    table = hodge_table(E).as_dict()
    n = len(exps)
    for (p, q), h in table.items():
        assert table[(q, p)] == h
        assert table[(n - p, n - q)] == h
    rebuilt = FracLaurent2({
        (p - F(n, 2), q - F(n, 2)): (-1) ** int(p + q - n) * h for (p, q), h in table.items()
    })
    assert rebuilt == E.poly


@settings(max_examples=40, deadline=None)
@given(bp_pairs(max_n=3, max_a=5))
def test_group_sums_have_integer_coefficients(pair):
    exps, G = pair
    W = brieskorn_pham(exps)
    for g in G:
        total = sector_group_sum(W, G, g)
        assert all(c.denominator == 1 for _, c in total.items())


def test_trivial_group_signs_are_positive():
    for exps in [(2, 3), (3, 4), (2, 2, 5), (3, 3, 3)]:
        E = e_function(brieskorn_pham(exps), enumerate_group(len(exps)), assume_invariant=True)
        for p, q, h in hodge_table(E).entries:
            assert p + q == len(exps)
        assert all(m > 0 for _, m in exponents(E).items())
