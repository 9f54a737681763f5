"""E-functions, Hodge numbers and exponent statistics of pairs (f, G).

The E-function is assembled sector by sector.  For g in G with fixed
coordinates F (|F| = n_g), the G-invariant part of the restricted
polynomial's Poincare polynomial is

    (-1)^n_g / |G| * sum_{h in G} prod_{i in F}
        (y^(1/2) - lambda_i(h) y^(w_i - 1/2)) / (1 - lambda_i(h) y^(w_i))

in y = tbar/t.  A term y^(q' - n_g/2) of it lands at the bidegree
q = q' + age(g), p = n_g - q' + age(g), with sign (-1)^(n - n_g).
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .cyclotomic import CyclotomicNumber, RootOfUnity
from .errors import AveragingError, ConsistencyError, InvarianceError, SignViolationError
from .groups import subsets
from .polynomial import (
    ExponentMultiset,
    c_hat,
    check_invariance,
    exponents_trivial,
    infer_weights,
    weight_step,
)
from .qseries import (
    FracLaurent1,
    FracLaurent2,
    TruncatedSeries,
    expand_geometric_factor,
    finite_part_check,
    series_mul,
)

__all__ = [
    "Sector",
    "EFunction",
    "HodgeTable",
    "MainTheoremVerdict",
    "sector_series",
    "sector_group_sum",
    "sector_series_direct",
    "e_function",
    "hodge_table",
    "exponents",
    "mu_pair",
    "mu_inclusion_exclusion",
    "mean",
    "variance",
    "chi_y",
    "chi_y_closed",
    "verify_main_theorem",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Sector:
    element: object
    n_fixed: int
    age: int
    sign: int  # (-1)^(n - n_g)
    invariant: FracLaurent1  # sum of y^(q' - n_g/2) over invariant exponents q'


@dataclass(frozen=True)
class EFunction:
    n: int
    poly: FracLaurent2  # keys (p - n/2, q - n/2)
    weights: object = None
    group: object = None
    sectors: tuple = ()

    def at_one(self):
        return self.poly.at_one()

    def items(self):
        return self.poly.items()


@dataclass(frozen=True)
class HodgeTable:
    n: int
    entries: tuple  # ((p, q, h), ...) sorted by (q, p)

    def as_dict(self):
        return {(p, q): h for p, q, h in self.entries}


# -- sector series ------------------------------------------------------------


def _support(weights):
    m = len(weights)
    s = sum(weights, Fraction(0))
    return s - Fraction(m, 2), Fraction(m, 2) - s


def _certify_average(total, G, m, where):
    """Turn the certified sum over h into the invariant Poincare polynomial."""
    order = len(G)
    out = {}
    for e, c in total.items():
        if c.denominator != 1:
            raise AveragingError(f"{where}: sum over the group at y^({e}) is {c}, not an integer")
        avg = c / order
        if avg.denominator != 1:
            raise AveragingError(
                f"{where}: group average at y^({e}) is {avg}, not an integer "
                "(is f really G-invariant?)"
            )
        avg = (-1) ** m * int(avg)
        if avg < 0:
            raise AveragingError(f"{where}: negative invariant dimension {avg} at y^({e})")
        out[e] = avg
    return FracLaurent1(out)


def sector_series(W, G, g, step=None):
    """G-invariant Poincare polynomial of f^g, in y^(q' - n_g/2).

    The product over fixed coordinates is expanded once with the
    characters lambda_i kept formal; the group sum of each character is then
    evaluated in Q(zeta_N), N the exponent of G, and certified rational.
    """
    m = g.fix_dimension()
    return _certify_average(sector_group_sum(W, G, g, step), G, m, f"sector {g}")


def sector_group_sum(W, G, g, step=None):
    """Certified sum over h in G of the sector product, before dividing by |G|."""
    coords = g.fixed_coordinates()
    weights = [W.weights[i] for i in coords]
    D = step or weight_step(W.weights)
    N = G.exponent
    lo_s, hi_s = _support(weights)
    target_hi = int((hi_s + 1) * D)
    vals = [int((w - HALF) * D) for w in weights]
    half = D // 2

    product = {(0, ()): 1}
    floor_so_far = 0
    for idx, w in enumerate(weights):
        wd = int(w * D)
        limit = target_hi - sum(vals[idx + 1:])
        reach = limit - floor_so_far
        terms = []
        k = 0
        while half + k * wd <= reach:
            terms.append((half + k * wd, k % N, 1))
            k += 1
        k = 0
        while wd - half + k * wd <= reach:
            terms.append((wd - half + k * wd, (k + 1) % N, -1))
            k += 1
        nxt = {}
        for (e, ks), c in product.items():
            for fe, fk, fc in terms:
                ee = e + fe
                if ee > limit:
                    continue
                key = (ee, ks + (fk,))
                nxt[key] = nxt.get(key, 0) + c * fc
        product = {key: c for key, c in nxt.items() if c}
        floor_so_far += vals[idx]

    rotations = [tuple(int(h.angles[i] * N) for i in coords) for h in G.elements]
    char_sums = {}
    per_exponent = {}
    for (e, ks), c in product.items():
        if ks not in char_sums:
            counts = [0] * N
            for rot in rotations:
                counts[sum(a * b for a, b in zip(ks, rot)) % N] += 1
            char_sums[ks] = counts
        acc = per_exponent.setdefault(e, [0] * N)
        for j, cnt in enumerate(char_sums[ks]):
            if cnt:
                acc[j] += c * cnt
    coeffs = {e: CyclotomicNumber.from_group_ring(acc, N) for e, acc in per_exponent.items()}
    total = TruncatedSeries(D, int((lo_s - 1) * D), target_hi, coeffs)
    return finite_part_check(total, (lo_s, hi_s))


def sector_series_direct(W, G, g, step=None):
    """Same as ``sector_series`` but expanding each h separately.

    Slower; kept as an independent route for cross-checking.
    """
    coords = g.fixed_coordinates()
    weights = [W.weights[i] for i in coords]
    m = len(weights)
    D = step or weight_step(W.weights)
    N = G.exponent
    lo_s, hi_s = _support(weights)
    vals = [w - HALF for w in weights]
    total = None
    tuples = Counter(tuple(h.angles[i] for i in coords) for h in G.elements)
    for angles, count in sorted(tuples.items()):
        series = TruncatedSeries.constant(
            CyclotomicNumber.from_rational(1, N), D, int((lo_s - 1) * D), int((hi_s + 1) * D)
        )
        for i, w in enumerate(weights):
            upper = hi_s + 1 - (sum(vals, Fraction(0)) - vals[i])
            factor = expand_geometric_factor(
                HALF, w - HALF, RootOfUnity(angles[i]), w, (vals[i] - 1, upper),
                modulus=N, step=D,
            )
            series = factor if i == 0 else series_mul(series, factor)
        series = series.scale(count)
        total = series if total is None else total + series
    certified = finite_part_check(total, (lo_s, hi_s))
    return _certify_average(certified, G, m, f"sector {g}")


# -- the E-function ------------------------------------------------------------


def _check_hypotheses(W, G, polynomial, assume_invariant):
    if W.n != G.n:
        raise ValueError(f"{W.n} weights but the group acts on C^{G.n}")
    if polynomial is not None:
        infer_weights(polynomial, W)
        report = check_invariance(polynomial, G)
        if not report:
            raise InvarianceError(
                f"polynomial is not invariant: element {report.element} "
                f"moves monomial {report.monomial}"
            )
    elif not assume_invariant:
        raise InvarianceError(
            "no polynomial given, so invariance cannot be checked; "
            "pass assume_invariant=True to proceed from weights alone"
        )


def e_function(W, G, polynomial=None, assume_invariant=False, method="formal"):
    """E-function of the pair (f, G) from the sector formula.

    ``method`` selects how each sector average is expanded: "formal" (one
    expansion with symbolic characters) or "direct" (one per group element).
    """
    _check_hypotheses(W, G, polynomial, assume_invariant)
    n = W.n
    D = weight_step(W.weights)
    compute = {"formal": sector_series, "direct": sector_series_direct}[method]
    terms = {}
    sectors = []
    for g in G.elements:
        ng = g.fix_dimension()
        a = g.age()
        inv = compute(W, G, g, step=D)
        sign = (-1) ** (n - ng)
        sectors.append(Sector(g, ng, int(a), sign, inv))
        # q - n/2 = shift + e and p - n/2 = shift - e, e = q' - n_g/2
        shift = a - Fraction(n - ng, 2)
        for e, c in inv.items():
            key = (shift - e, shift + e)
            terms[key] = terms.get(key, 0) + sign * c
    return EFunction(n, FracLaurent2(terms), W, G, tuple(sectors))


def hodge_table(E):
    half_n = Fraction(E.n, 2)
    entries = []
    for (a, b), c in E.poly.items():
        p, q = a + half_n, b + half_n
        parity = p + q - E.n
        if parity.denominator != 1:
            raise SignViolationError(f"p + q = {p + q} is not an integer at ({p}, {q})")
        h = (-1) ** int(parity) * c
        if h <= 0:
            raise SignViolationError(
                f"coefficient {c} at ({p}, {q}) has the wrong sign for a Hodge number"
            )
        entries.append((p, q, int(h)))
    entries.sort(key=lambda e: (e[1], e[0]))
    return HodgeTable(E.n, tuple(entries))


def exponents(E):
    """Signed multiset of exponents q, multiplicity sum_p (-1)^(p+q-n) h^{p,q}."""
    half_n = Fraction(E.n, 2)
    acc = {}
    for (a, b), c in E.poly.items():
        acc[b + half_n] = acc.get(b + half_n, 0) + c
    return ExponentMultiset(acc)


def mu_pair(E):
    return E.at_one()


def mean(E):
    return sum((c * b for (a, b), c in E.poly.items()), Fraction(0))


def variance(E):
    return sum((c * b * b for (a, b), c in E.poly.items()), Fraction(0))


def mu_inclusion_exclusion(W, G, check_against=None):
    """Milnor number of the pair from fixed-subgroup orders alone.

    If ``check_against`` (an EFunction) is given, its value at (1, 1) must
    agree, otherwise ConsistencyError is raised.
    """
    n = W.n
    full = (1 << n) - 1
    factors = [1 - 1 / w for w in W.weights]
    total = Fraction(0)
    for I in subsets(full):
        inner = 0
        for J in subsets(full & ~I):
            inner += (-1) ** bin(J).count("1") * G.fixed_count(I | J) ** 2
        if inner:
            total += prod((factors[i] for i in range(n) if I >> i & 1), start=Fraction(1)) * inner
    mu = (-1) ** n * total / len(G)
    if check_against is not None and mu != mu_pair(check_against):
        raise ConsistencyError(
            f"Milnor number routes disagree: E(1,1) = {mu_pair(check_against)}, "
            f"inclusion-exclusion = {mu}"
        )
    return mu


def chi_y_closed(W, G, method="direct"):
    """chi_y-genus straight from the closed sector formula in y."""
    n = W.n
    D = weight_step(W.weights)
    compute = {"formal": sector_series, "direct": sector_series_direct}[method]
    acc = FracLaurent1()
    for g in G.elements:
        ng = g.fix_dimension()
        shift = g.age() - Fraction(n - ng, 2)
        inv = compute(W, G, g, step=D)
        acc = acc + inv.shift(shift) * ((-1) ** (n - ng))
    return acc


def chi_y(E, cross_check=True, method="direct"):
    """E(1, y); when the pair data is attached, also via the closed formula."""
    chi = E.poly.specialize_t_one()
    if cross_check and E.weights is not None and E.group is not None:
        other = chi_y_closed(E.weights, E.group, method=method)
        if other != chi:
            raise ConsistencyError(f"chi_y routes disagree: {chi} vs {other}")
    return chi


@dataclass
class MainTheoremVerdict:
    mu: int
    mu_inclusion_exclusion: Fraction
    c_hat: Fraction
    mean: Fraction
    variance: Fraction
    predicted_variance: Fraction
    checks: dict = field(default_factory=dict)
    efunction: EFunction = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())


def verify_main_theorem(W, G, polynomial=None, assume_invariant=False,
                        cross_check_sectors=False):
    """Evaluate Var = c_hat * mu / 12 and the symmetry corollaries exactly."""
    E = e_function(W, G, polynomial=polynomial, assume_invariant=assume_invariant)
    checks = {}
    diagnostics = {}
    mu = mu_pair(E)
    try:
        mu_ie = mu_inclusion_exclusion(W, G, check_against=E)
        checks["mu_routes"] = True
    except ConsistencyError as exc:
        mu_ie = mu_inclusion_exclusion(W, G)
        checks["mu_routes"] = False
        diagnostics["mu_routes"] = str(exc)
    ch = c_hat(W)
    var = variance(E)
    avg = mean(E)
    predicted = ch * mu / 12
    checks["main_theorem"] = var == predicted
    checks["swap_symmetry"] = E.poly.swap() == E.poly
    checks["serre_duality"] = E.poly.invert() == E.poly
    checks["zero_mean"] = avg == 0
    try:
        hodge_table(E)
        checks["hodge_signs"] = True
    except SignViolationError as exc:
        checks["hodge_signs"] = False
        diagnostics["hodge_signs"] = str(exc)
    if cross_check_sectors:
        try:
            chi_y(E, cross_check=True)
            checks["chi_routes"] = True
        except ConsistencyError as exc:
            checks["chi_routes"] = False
            diagnostics["chi_routes"] = str(exc)
    if G.is_trivial():
        trivial = exponents_trivial(W)
        checks["trivial_exponents"] = exponents(E) == trivial
        checks["hertling_dimca"] = trivial.moment(2, Fraction(W.n, 2)) == ch * trivial.total() / 12
    return MainTheoremVerdict(
        mu=int(mu), mu_inclusion_exclusion=mu_ie, c_hat=ch, mean=avg, variance=var,
        predicted_variance=predicted, checks=checks, efunction=E, diagnostics=diagnostics,
    )
