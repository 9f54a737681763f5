"""Case generators and the verification sweep over Brieskorn-Pham pairs."""

import itertools
import random
from fractions import Fraction

from .groups import GroupElement, enumerate_group
from .orbifold import verify_main_theorem
from .polynomial import brieskorn_pham, parse_polynomial

__all__ = [
    "bp_polynomial",
    "bp_symmetry_elements",
    "cyclic_subgroups",
    "subgroups_rank2",
    "sweep_cases",
    "run_sweep",
]


def bp_polynomial(exponents):
    return " + ".join(f"x{i + 1}^{a}" for i, a in enumerate(exponents))


def bp_symmetry_elements(exponents):
    """Diagonal SL symmetries of x1^a1 + ... + xn^an: angles k_i/a_i summing to an integer."""
    out = []
    for ks in itertools.product(*(range(a) for a in exponents)):
        angles = tuple(Fraction(k, a) for k, a in zip(ks, exponents))
        if sum(angles).denominator == 1:
            out.append(GroupElement(angles))
    return out


def _cyclic(g):
    elems = {GroupElement((0,) * g.n)}
    x = g
    while not x.is_identity():
        elems.add(x)
        x = x * g
    return frozenset(elems)


def cyclic_subgroups(elements, max_order=None):
    """Distinct cyclic subgroups <g>, each as (generator, element set), sorted.

    The generator reported is the smallest element generating the subgroup.
    """
    found = {}
    for g in sorted(elements):
        if max_order is not None and g.order > max_order:
            continue
        sub = _cyclic(g)
        if len(sub) != g.order:
            raise AssertionError("cyclic closure size differs from element order")
        found.setdefault(sub, g)
    return sorted(((g, sub) for sub, g in found.items()), key=lambda t: (len(t[1]), t[0]))


def _join(a, b):
    elems = set(a)
    frontier = list(a)
    gens = [g for g in b]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def subgroups_rank2(elements, max_order=None):
    """All subgroups generated by at most two elements, as (generators, element set).

    Complete for groups of rank <= 2.
    """
    cyc = cyclic_subgroups(elements, max_order)
    found = {}
    for g, sub in cyc:
        found.setdefault(sub, (g,))
    for (g1, s1), (g2, s2) in itertools.combinations(cyc, 2):
        if max_order is not None and len(s1) * len(s2) > max_order * len(s1 & s2):
            continue
        joined = _join(s1, s2)
        if max_order is not None and len(joined) > max_order:
            continue
        found.setdefault(joined, (g1, g2))
    return sorted(
        ((gens, sub) for sub, gens in found.items()),
        key=lambda t: (len(t[1]), sorted(t[1])),
    )


def sweep_cases(n_range, exponent_bound, group_order_bound, exhaustive=True,
                count=None, seed=0):
    """Yield (exponents, generators) pairs.

    Exhaustive mode walks every exponent vector in [2, bound]^n and every
    cyclic SL subgroup of the symmetry group of order <= group_order_bound.
    Otherwise ``count`` random cases are drawn from a seeded generator.
    """
    if exhaustive:
        for n in n_range:
            for exps in itertools.product(range(2, exponent_bound + 1), repeat=n):
                for g, _ in cyclic_subgroups(bp_symmetry_elements(exps), group_order_bound):
                    gens = [] if g.is_identity() else [list(g.angles)]
                    yield list(exps), gens
        return
    rng = random.Random(seed)
    n_range = list(n_range)
    produced = 0
    while produced < count:
        n = rng.choice(n_range)
        exps = [rng.randint(2, exponent_bound) for _ in range(n)]
        elems = bp_symmetry_elements(exps)
        gens = [rng.choice(elems) for _ in range(rng.randint(0, 2))]
        gens = [g for g in gens if not g.is_identity()]
        if len(enumerate_group(n, gens)) > group_order_bound:
            continue
        produced += 1
        yield exps, [list(g.angles) for g in gens]


def case_config(exps, gens):
    """The analyze-job configuration that replays a sweep case."""
    return {
        "kind": "weighted_homogeneous",
        "polynomial": bp_polynomial(exps),
        "group": {"generators": [[str(Fraction(a)) for a in gen] for gen in gens]},
        "options": {"assume_invariant": False},
    }


def run_sweep(cases, group_cap=10000, stop_on_failure=False):
    """Run verify_main_theorem on every case; return (summary, failures)."""
    total = passed = 0
    by_check = {}
    failures = []
    for exps, gens in cases:
        total += 1
        f = parse_polynomial(bp_polynomial(exps))
        G = enumerate_group(len(exps), gens, cap=group_cap)
        verdict = verify_main_theorem(brieskorn_pham(exps), G, polynomial=f)
        for name, ok in verdict.checks.items():
            by_check.setdefault(name, [0, 0])[0 if ok else 1] += 1
        if verdict.passed:
            passed += 1
        else:
            failures.append({
                "config": case_config(exps, gens),
                "failed_checks": sorted(k for k, v in verdict.checks.items() if not v),
            })
            if stop_on_failure:
                break
    summary = {
        "cases": total,
        "passed": passed,
        "failed": total - passed,
        "checks": {k: {"pass": v[0], "fail": v[1]} for k, v in sorted(by_check.items())},
    }
    return summary, failures
