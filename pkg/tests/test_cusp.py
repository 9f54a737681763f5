import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbivar.cusp import (
    build_cusp,
    cusp_chi,
    cusp_exponents,
    cusp_mu,
    cusp_symmetry_elements,
    cusp_variance,
    gamma_square_sum,
    verify_cusp,
)
from orbivar.errors import CuspModelError, InvarianceError
from orbivar.groups import enumerate_group
from orbivar.sweep import subgroups_rank2

F = Fraction
ORDER4 = [(F(1, 4), F(3, 4), 0)]


def test_237():
    m = build_cusp((2, 3, 7))
    assert m.gammas == (2, 3, 7) and m.juniors == 0
    assert cusp_mu(m) == 11
    assert cusp_chi(m) == F(-1, 42)
    assert cusp_variance(m) == F(115, 126)
    want = [F(1), F(3, 2), F(4, 3), F(5, 3)] + [1 + F(k, 7) for k in range(1, 7)] + [F(2)]
    assert cusp_exponents(m).to_list() == sorted(want)


def test_444_with_order_four_group():
    m = build_cusp((4, 4, 4), ORDER4)
    assert m.gammas == (4, 4, 4, 4) and m.juniors == 0
    assert cusp_mu(m) == 14
    assert cusp_chi(m) == -1
    assert cusp_variance(m) == 1
    ex = cusp_exponents(m)
    assert ex.total() == 14
    assert dict(ex.items()) == {F(1): 1, F(5, 4): 4, F(3, 2): 4, F(7, 4): 4, F(2): 1}


def test_non_hyperbolic_rejected():
    with pytest.raises(CuspModelError):
        build_cusp((3, 3, 3))
    with pytest.raises(CuspModelError):
        build_cusp((2, 3, 6))


def test_invariance_enforced():
    with pytest.raises(InvarianceError):
        build_cusp((2, 3, 7), [(F(1, 3), F(2, 3), 0)])


def test_junior_elements_take_the_signed_convention():
    # (1/3, 1/3, 1/3) is junior and fixes x1^3 + x2^3 + x3^3 - x1 x2 x3 for alpha = (3, 3, 6)
    m = build_cusp((3, 3, 6), [(F(1, 3),) * 3])
    assert m.juniors == 1
    ex = cusp_exponents(m)
    assert F(1) not in dict(ex.items()) and F(2) not in dict(ex.items())
    assert ex.total() == cusp_mu(m)
    assert verify_cusp(m).passed


@pytest.mark.parametrize("gamma", range(2, 101))
def test_gamma_identity(gamma):
    direct, closed = gamma_square_sum(gamma)
    assert direct == closed


def test_trivial_group_matches_closed_chi():
    for alpha in [(2, 3, 7), (2, 4, 5), (3, 3, 4), (5, 6, 7)]:
        m = build_cusp(alpha)
        chi = 2 + sum(F(1, a) - 1 for a in alpha)
        assert cusp_chi(m) == chi
        assert cusp_exponents(m).moment(2, F(3, 2)) == F(cusp_mu(m), 12) + chi / 6


hyperbolic = st.tuples(*(st.integers(2, 8),) * 3).filter(lambda a: sum(F(1, x) for x in a) < 1)


@settings(max_examples=60, deadline=None)
@given(hyperbolic, st.data())
def test_variance_routes_agree(alpha, data):
    subs = subgroups_rank2(cusp_symmetry_elements(alpha), 24)
    gens, elems = data.draw(st.sampled_from(subs))
    m = build_cusp(alpha, gens)
    assert len(m.group) == len(elems)
    v = verify_cusp(m)
    assert v.passed
    assert v.exponent_count == v.mu


def test_symmetry_elements_brute_force():
    alpha = (2, 4, 6)
    brute = set()
    for ks in itertools.product(*(range(a) for a in alpha)):
        t = tuple(F(k, a) for k, a in zip(ks, alpha))
        if sum(t).denominator == 1:
            brute.add(t)
    assert {g.angles for g in cusp_symmetry_elements(alpha)} == brute
    full = enumerate_group(3, [g.angles for g in cusp_symmetry_elements(alpha)])
    assert len(full) == len(brute)
