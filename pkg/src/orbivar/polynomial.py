"""Weighted homogeneous polynomials and their trivial-group invariants.

Polynomials are written in a small ASCII grammar::

    poly   := [+|-] term {(+|-) term}
    term   := factor {* factor}
    factor := integer | integer/integer | x<k>[^integer]

Variables are x1, x2, ...; the number of variables is the largest index used.
"""

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .errors import (
    AmbiguousWeightsError,
    InvalidWeightError,
    NotWeightedHomogeneousError,
    PolynomialSyntaxError,
)
from .qseries import TruncatedSeries, expand_geometric_factor, finite_part_check, series_mul

__all__ = [
    "PolynomialExpr",
    "WeightSystem",
    "ExponentMultiset",
    "InvarianceReport",
    "parse_polynomial",
    "infer_weights",
    "check_invariance",
    "milnor_number_trivial",
    "exponents_trivial",
    "poincare_series_trivial",
    "c_hat",
    "brieskorn_pham",
    "weight_step",
]


@dataclass(frozen=True)
class PolynomialExpr:
    n: int
    monomials: tuple  # ((coefficient, exponent_vector), ...) sorted by exponent

    def __str__(self):
        parts = []
        for c, exps in self.monomials:
            vars_ = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e
            )
            mag = abs(c)
            if not vars_:
                body = str(mag)
            elif mag == 1:
                body = vars_
            else:
                body = f"{mag}*{vars_}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolynomialSyntaxError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastgroup)
        if m.group("num") is not None:
            num = m.group("num")
            if "/" in num:
                p, q = num.split("/")
                if int(q) == 0:
                    raise PolynomialSyntaxError("zero denominator", start)
            tokens.append(("num", Fraction(num), start))
        elif m.group("var") is not None:
            idx = int(m.group("idx"))
            if idx < 1:
                raise PolynomialSyntaxError("variable indices start at x1", start)
            tokens.append(("var", idx, start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    return tokens


def parse_polynomial(text):
    """Parse ``text`` into a normalized PolynomialExpr.

    Repeated monomials are merged; monomials whose coefficients cancel are
    dropped, and an empty result is an error.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialSyntaxError("empty polynomial", 0)
    i = 0
    terms = []  # (coeff, {var: exp})

    def peek():
        return tokens[i] if i < len(tokens) else None

    sign = 1
    expect_term = True
    while True:
        tok = peek()
        if tok is None:
            if expect_term:
                raise PolynomialSyntaxError("expected a term", len(text))
            break
        if expect_term:
            if tok[0] == "op" and tok[1] in "+-":
                if tok[1] == "-":
                    sign = -sign
                i += 1
                tok = peek()
                if tok is None or (tok[0] == "op"):
                    pos = tok[2] if tok else len(text)
                    raise PolynomialSyntaxError("expected a term", pos)
            coeff = Fraction(sign)
            exps = {}
            while True:
                tok = peek()
                if tok is None or tok[0] == "op" and tok[1] != "*" and tok[1] != "^":
                    raise PolynomialSyntaxError("expected a factor", tok[2] if tok else len(text))
                if tok[0] == "num":
                    coeff *= tok[1]
                    i += 1
                elif tok[0] == "var":
                    var = tok[1]
                    i += 1
                    e = 1
                    nxt = peek()
                    if nxt is not None and nxt[0] == "op" and nxt[1] == "^":
                        i += 1
                        ex = peek()
                        if ex is None or ex[0] != "num" or ex[1].denominator != 1:
                            pos = ex[2] if ex else len(text)
                            raise PolynomialSyntaxError("exponent must be a non-negative integer", pos)
                        e = int(ex[1])
                        i += 1
                    exps[var] = exps.get(var, 0) + e
                else:
                    raise PolynomialSyntaxError(f"unexpected {tok[1]!r}", tok[2])
                nxt = peek()
                if nxt is not None and nxt[0] == "op" and nxt[1] == "*":
                    i += 1
                    continue
                break
            terms.append((coeff, exps))
            sign = 1
            expect_term = False
        else:
            if tok[0] == "op" and tok[1] in "+-":
                expect_term = True
                continue
            raise PolynomialSyntaxError(f"expected '+' or '-', got {tok[1]!r}", tok[2])

    n = max((v for _, exps in terms for v in exps), default=0)
    merged = {}
    for coeff, exps in terms:
        vec = tuple(exps.get(k + 1, 0) for k in range(n))
        merged[vec] = merged.get(vec, 0) + coeff
    monos = tuple(sorted(((c, v) for v, c in merged.items() if c), key=lambda m: m[1], reverse=True))
    if not monos:
        raise PolynomialSyntaxError("polynomial is identically zero", 0)
    return PolynomialExpr(n, monos)


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        for i, w in enumerate(ws):
            if not 0 < w < 1:
                raise InvalidWeightError(f"weight w_{i + 1} = {w} is not in (0, 1)")
        big = [i + 1 for i, w in enumerate(ws) if w > Fraction(1, 2)]
        if big:
            warnings.warn(
                f"weights above 1/2 at coordinates {big}; formulas are evaluated anyway",
                stacklevel=2,
            )

    @property
    def n(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]


def brieskorn_pham(exponents):
    """Weights (1/a_1, ..., 1/a_n) of x1^a1 + ... + xn^an."""
    return WeightSystem(tuple(Fraction(1, a) for a in exponents))


def infer_weights(f, weights=None):
    """Solve sum_i m_i w_i = 1 over the monomials of ``f``.

    With explicit ``weights`` the system is only checked for consistency.
    """
    rows = [exps for _, exps in f.monomials]
    if weights is not None:
        W = weights if isinstance(weights, WeightSystem) else WeightSystem(weights)
        if W.n != f.n:
            raise NotWeightedHomogeneousError(f"{W.n} weights given for {f.n} variables")
        for exps in rows:
            deg = sum(m * w for m, w in zip(exps, W.weights))
            if deg != 1:
                raise NotWeightedHomogeneousError(
                    f"monomial {exps} has weighted degree {deg} under the given weights"
                )
        return W

    import sympy

    A = sympy.Matrix(rows)
    b = sympy.Matrix([1] * len(rows))
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError:
        raise NotWeightedHomogeneousError(
            "no weights make every monomial have degree 1"
        ) from None
    if params.shape[0]:
        free = [i + 1 for i in range(f.n) if sol[i].free_symbols]
        raise AmbiguousWeightsError(
            f"weights are underdetermined; free coordinates {free}; supply weights explicitly",
            free,
        )
    ws = tuple(Fraction(int(x.p), int(x.q)) for x in sol)
    return WeightSystem(ws)


@dataclass(frozen=True)
class InvarianceReport:
    ok: bool
    element: object = None
    monomial: tuple = None

    def __bool__(self):
        return self.ok


def check_invariance(f, G):
    """Check that every monomial of ``f`` is fixed by every element of ``G``."""
    if f.n > G.n:
        raise ValueError(f"polynomial uses {f.n} variables but the group acts on {G.n}")
    for g in G.elements:
        for _, exps in f.monomials:
            if sum(a * m for a, m in zip(g.angles, exps)).denominator != 1:
                return InvarianceReport(False, g, exps)
    return InvarianceReport(True)


def milnor_number_trivial(W):
    mu = (-1) ** W.n * prod((1 - 1 / w for w in W.weights), start=Fraction(1))
    if mu.denominator != 1 or mu <= 0:
        raise InvalidWeightError(
            f"weights {W.weights} give Milnor number {mu}; not an isolated singularity"
        )
    return int(mu)


def c_hat(W):
    return W.n - 2 * sum(W.weights, Fraction(0))


def weight_step(weights):
    """Common exponent step: lcm(2, denominators of the weights)."""
    from math import lcm

    return lcm(2, *(Fraction(w).denominator for w in weights))


def poincare_series_trivial(weights, step=None):
    """sum_i y^(q_i - m/2) for the weights of one restricted polynomial.

    Expands the product of (y^(1/2) - y^(w-1/2)) / (1 - y^w) and certifies
    that it is a Laurent polynomial; the global sign (-1)^m is applied.
    """
    weights = [Fraction(w) for w in weights]
    m = len(weights)
    step = step or weight_step(weights)
    s = sum(weights, Fraction(0))
    lo, hi = s - Fraction(m, 2), Fraction(m, 2) - s
    if m == 0:
        series = TruncatedSeries.constant(1, step, -step, step)
        return finite_part_check(series, (0, 0))
    vals = [w - Fraction(1, 2) for w in weights]
    series = None
    for i, w in enumerate(weights):
        upper = hi + 1 - (sum(vals, Fraction(0)) - vals[i])
        factor = expand_geometric_factor(
            Fraction(1, 2), w - Fraction(1, 2), 0, w, (vals[i] - 1, upper), step=step
        )
        series = factor if series is None else series_mul(series, factor)
    series = series.scale((-1) ** m)
    return finite_part_check(series, (lo, hi))


class ExponentMultiset:
    """Rational exponents with (signed) integer multiplicities."""

    def __init__(self, entries=None):
        acc = {}
        for q, k in dict(entries or {}).items():
            q = Fraction(q)
            acc[q] = acc.get(q, 0) + k
        self.entries = {q: k for q, k in sorted(acc.items()) if k}

    @classmethod
    def from_list(cls, qs):
        acc = {}
        for q in qs:
            acc[Fraction(q)] = acc.get(Fraction(q), 0) + 1
        return cls(acc)

    def items(self):
        return list(self.entries.items())

    def total(self):
        return sum(self.entries.values())

    def moment(self, k, center=0):
        center = Fraction(center)
        return sum((m * (q - center) ** k for q, m in self.entries.items()), Fraction(0))

    def support(self):
        return list(self.entries)

    def to_list(self):
        """Expanded sorted list; only valid when all multiplicities are positive."""
        if any(m < 0 for m in self.entries.values()):
            raise ValueError("multiset has negative multiplicities")
        return [q for q, m in self.entries.items() for _ in range(m)]

    def __eq__(self, other):
        if isinstance(other, ExponentMultiset):
            return self.entries == other.entries
        return NotImplemented

    def __repr__(self):
        return f"ExponentMultiset({ {str(q): m for q, m in self.entries.items()} })"


def exponents_trivial(W):
    """Exponents of f with the trivial group, via the product expansion."""
    half = Fraction(W.n, 2)
    series = poincare_series_trivial(W.weights)
    return ExponentMultiset({e + half: int(c) for e, c in series.items()})
