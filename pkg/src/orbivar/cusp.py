"""Cusp polynomials x1^a1 + x2^a2 + x3^a3 - x1*x2*x3 with diagonal symmetries.

Cusp polynomials are not weighted homogeneous, so everything here comes
from closed formulas in the gamma-tuple and the junior count j_G.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CuspModelError, InvarianceError
from .groups import DEFAULT_CAP, GroupElement, enumerate_group, fixed_subgroup, junior_count
from .polynomial import ExponentMultiset

__all__ = [
    "CuspModel",
    "CuspVerdict",
    "build_cusp",
    "cusp_polynomial",
    "cusp_symmetry_elements",
    "cusp_mu",
    "cusp_chi",
    "cusp_exponents",
    "cusp_variance",
    "verify_cusp",
    "gamma_square_sum",
]

CENTER = Fraction(3, 2)


@dataclass(frozen=True)
class CuspModel:
    alpha: tuple
    group: object
    gammas: tuple
    juniors: int


def cusp_polynomial(alpha):
    a1, a2, a3 = alpha
    return f"x1^{a1} + x2^{a2} + x3^{a3} - x1*x2*x3"


def _check_alpha(alpha):
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != 3:
        raise CuspModelError(f"alpha must be a triple, got {alpha}")
    if any(a < 2 for a in alpha):
        raise CuspModelError(f"alpha entries must be at least 2, got {alpha}")
    if sum(Fraction(1, a) for a in alpha) >= 1:
        raise CuspModelError(f"alpha {alpha} is not hyperbolic: 1/a1 + 1/a2 + 1/a3 >= 1")
    return alpha


def _check_invariance(alpha, g):
    for i, (a, t) in enumerate(zip(alpha, g.angles)):
        if (a * t).denominator != 1:
            raise InvarianceError(f"{g} does not fix x{i + 1}^{a}")
    if sum(g.angles).denominator != 1:
        raise InvarianceError(f"{g} does not fix x1*x2*x3")


def cusp_symmetry_elements(alpha):
    """All diagonal symmetries of the cusp polynomial: a_i * t_i and sum t_i integral."""
    alpha = _check_alpha(alpha)
    out = []
    for ks in itertools.product(*(range(a) for a in alpha[:2])):
        t1, t2 = Fraction(ks[0], alpha[0]), Fraction(ks[1], alpha[1])
        t3 = -(t1 + t2) % 1
        if (alpha[2] * t3).denominator == 1:
            out.append(GroupElement((t1, t2, t3)))
    return sorted(out)


def build_cusp(alpha, generators=(), cap=DEFAULT_CAP):
    alpha = _check_alpha(alpha)
    G = enumerate_group(3, generators, cap=cap)
    for g in G.elements:
        _check_invariance(alpha, g)
    gammas = []
    for i, a in enumerate(alpha):
        K = len(fixed_subgroup(G, [i]))
        index = len(G) // K
        if a % index:
            raise CuspModelError(
                f"alpha_{i + 1}/|G/K_{i + 1}| = {a}/{index} is not an integer"
            )
        if a // index > 1:
            gammas.extend([a // index] * K)
    return CuspModel(alpha, G, tuple(gammas), junior_count(G))


def cusp_mu(m):
    return 2 - 2 * m.juniors + sum(g - 1 for g in m.gammas)


def cusp_chi(m):
    return 2 - 2 * m.juniors + sum((Fraction(1, g) - 1 for g in m.gammas), Fraction(0))


def cusp_exponents(m):
    """Signed exponent multiset; 1 and 2 carry multiplicity 1 - j_G."""
    entries = {Fraction(1): 1 - m.juniors, Fraction(2): 1 - m.juniors}
    for g in m.gammas:
        for k in range(1, g):
            q = 1 + Fraction(k, g)
            entries[q] = entries.get(q, 0) + 1
    return ExponentMultiset(entries)


def gamma_square_sum(gamma):
    """sum_{k=1}^{g-1} (k/g - 1/2)^2 and its closed form (g-1)(g-2)/(12 g)."""
    direct = sum((
        (Fraction(k, gamma) - Fraction(1, 2)) ** 2 for k in range(1, gamma)
    ), Fraction(0))
    return direct, Fraction((gamma - 1) * (gamma - 2), 12 * gamma)


@dataclass(frozen=True)
class CuspVerdict:
    model: CuspModel
    mu: int
    chi: Fraction
    variance_direct: Fraction
    variance_formula: Fraction
    exponent_count: int

    @property
    def checks(self):
        return {
            "variance_routes": self.variance_direct == self.variance_formula,
            "exponent_count": self.exponent_count == self.mu,
        }

    @property
    def passed(self):
        return all(self.checks.values())


def verify_cusp(m):
    E = cusp_exponents(m)
    mu = cusp_mu(m)
    chi = cusp_chi(m)
    return CuspVerdict(
        model=m,
        mu=mu,
        chi=chi,
        variance_direct=E.moment(2, CENTER),
        variance_formula=Fraction(mu, 12) + chi / 6,
        exponent_count=E.total(),
    )


def cusp_variance(m):
    """Variance about 3/2, computed directly and by mu/12 + chi/6; both must agree."""
    v = verify_cusp(m)
    if v.variance_direct != v.variance_formula:
        raise CuspModelError(
            f"variance routes disagree for alpha={m.alpha}: "
            f"{v.variance_direct} vs {v.variance_formula}"
        )
    return v.variance_direct
