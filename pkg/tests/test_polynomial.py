import itertools
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbivar.errors import (
    AmbiguousWeightsError,
    InvalidWeightError,
    NotWeightedHomogeneousError,
    PolynomialSyntaxError,
)
from orbivar.groups import enumerate_group
from orbivar.polynomial import (
    ExponentMultiset,
    WeightSystem,
    brieskorn_pham,
    c_hat,
    check_invariance,
    exponents_trivial,
    infer_weights,
    milnor_number_trivial,
    parse_polynomial,
)

F = Fraction


def bp_exponents_oracle(exps):
    """Brute force: q = sum k_i / a_i over 1 <= k_i <= a_i - 1."""
    qs = [sum(F(k, a) for k, a in zip(ks, exps))
          for ks in itertools.product(*(range(1, a) for a in exps))]
    return ExponentMultiset.from_list(qs)


def milnor_algebra_oracle(text):
    """Exponents from a monomial basis of the Jacobian algebra (Groebner basis)."""
    import sympy

    f = parse_polynomial(text)
    W = infer_weights(f)
    xs = sympy.symbols(f"x1:{f.n + 1}")
    expr = sum(int(c) * sympy.prod([x ** e for x, e in zip(xs, v)]) for c, v in f.monomials)
    gb = sympy.groebner([sympy.diff(expr, x) for x in xs], *xs, order="grevlex")
    leads = [sympy.Poly(g, *xs).monoms(order="grevlex")[0] for g in gb.exprs]
    qs = []
    bound = 30
    for m in itertools.product(range(bound), repeat=f.n):
        if any(all(a >= b for a, b in zip(m, lead)) for lead in leads):
            continue
        qs.append(sum((mi + 1) * w for mi, w in zip(m, W.weights)))
    return ExponentMultiset.from_list(qs)


def test_parse_fermat():
    f = parse_polynomial("x1^3 + x2^3 + x3^3")
    assert f.n == 3 and len(f.monomials) == 3


def test_parse_chain():
    f = parse_polynomial("x1^2*x2 + x2^5")
    assert f.n == 2
    assert sorted(v for _, v in f.monomials) == [(0, 5), (2, 1)]


def test_parse_cusp_keeps_sign():
    f = parse_polynomial("x1^3 + x2^3 + x3^3 - x1*x2*x3")
    assert len(f.monomials) == 4
    assert dict((v, c) for c, v in f.monomials)[(1, 1, 1)] == -1


def test_parse_merges_and_drops():
    f = parse_polynomial("x1^2 + x2^3 + 2*x1^2 - 3*x1^2")
    assert [v for _, v in f.monomials] == [(0, 3)]
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("x1^2 - x1^2")


@pytest.mark.parametrize("text", ["", "x1^", "x1 + + x2", "x1^2 y", "x0^2", "x1 x2", "3/0*x1"])
def test_parse_errors(text):
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial(text)


def test_parse_error_position():
    with pytest.raises(PolynomialSyntaxError) as exc:
        parse_polynomial("x1^2 + ?")
    assert exc.value.position == 7


def test_str_roundtrip():
    for text in ["x1^3 + x2^3 + x3^3 - x1*x2*x3", "x1^2*x2 + x2^5", "-2*x1^4 + x2^2"]:
        f = parse_polynomial(text)
        assert parse_polynomial(str(f)) == f


def test_infer_weights():
    assert infer_weights(parse_polynomial("x1^3+x2^3+x3^3")).weights == (F(1, 3),) * 3
    assert infer_weights(parse_polynomial("x1^2*x2 + x2^5")).weights == (F(2, 5), F(1, 5))


def test_cusp_is_not_weighted_homogeneous():
    with pytest.raises(NotWeightedHomogeneousError):
        infer_weights(parse_polynomial("x1^2 + x2^3 + x3^7 - x1*x2*x3"))


def test_ambiguous_weights():
    with pytest.raises(AmbiguousWeightsError) as exc:
        infer_weights(parse_polynomial("x1*x2"))
    assert exc.value.free_coordinates
    W = infer_weights(parse_polynomial("x1*x2"), [F(1, 2), F(1, 2)])
    assert W.weights == (F(1, 2), F(1, 2))


def test_explicit_weights_checked():
    with pytest.raises(NotWeightedHomogeneousError):
        infer_weights(parse_polynomial("x1^3 + x2^3"), [F(1, 3), F(1, 4)])


def test_weight_range():
    with pytest.raises(InvalidWeightError):
        WeightSystem((F(1, 3), F(1)))
    with pytest.warns(UserWarning):
        WeightSystem((F(2, 3), F(1, 3)))


def test_invariance():
    f = parse_polynomial("x1^3+x2^3+x3^3")
    assert check_invariance(f, enumerate_group(3))
    assert check_invariance(f, enumerate_group(3, [(F(1, 3),) * 3]))
    rep = check_invariance(f, enumerate_group(3, [(F(1, 2), F(1, 2), 0)]))
    assert not rep and rep.monomial in {(3, 0, 0), (0, 3, 0)}


def test_milnor_numbers():
    assert milnor_number_trivial(WeightSystem((F(1, 2), F(1, 2)))) == 1
    assert milnor_number_trivial(WeightSystem((F(1, 3),))) == 2
    assert milnor_number_trivial(WeightSystem((F(1, 3), F(1, 5)))) == 8
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        with pytest.raises(InvalidWeightError):
            milnor_number_trivial(WeightSystem((F(2, 3),)))


def test_exponent_examples():
    assert exponents_trivial(WeightSystem((F(1, 3),))).to_list() == [F(1, 3), F(2, 3)]
    assert exponents_trivial(WeightSystem((F(1, 2), F(1, 3)))).to_list() == [F(5, 6), F(7, 6)]
    ex = exponents_trivial(WeightSystem((F(1, 3), F(1, 5))))
    assert ex == bp_exponents_oracle((3, 5)) and ex.total() == 8


def test_c_hat():
    assert c_hat(WeightSystem((F(1, 2), F(1, 2)))) == 0
    assert c_hat(WeightSystem((F(1, 3), F(1, 5)))) == F(14, 15)
    assert c_hat(WeightSystem((F(1, 3),) * 3)) == 1


@pytest.mark.parametrize("text", [
    "x1^2*x2 + x2^5",
    "x1^3 + x1*x2^4",
    "x1^2*x2 + x2^3*x3 + x3^4",
    "x1^3*x2 + x2^3*x1",
    "x1^4 + x2^3 + x3^2",
])
def test_exponents_match_milnor_algebra(text):
    W = infer_weights(parse_polynomial(text))
    assert exponents_trivial(W) == milnor_algebra_oracle(text)


bp = st.lists(st.integers(2, 7), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(bp)
def test_bp_exponents_match_brute_force(exps):
    assert exponents_trivial(brieskorn_pham(exps)) == bp_exponents_oracle(exps)


@settings(max_examples=60, deadline=None)
@given(bp)
def test_trivial_exponent_identities(exps):
    W = brieskorn_pham(exps)
    ex = exponents_trivial(W)
    n = W.n
    mu = milnor_number_trivial(W)
    assert ex.total() == mu
    assert all(m > 0 for _, m in ex.items())
    assert ex == ExponentMultiset({n - q: m for q, m in ex.items()})
    assert ex.moment(1) == F(n, 2) * mu
    assert ex.moment(2, F(n, 2)) == c_hat(W) * mu / 12
    support = ex.support()
    assert support[-1] - support[0] == c_hat(W)
