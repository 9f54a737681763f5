"""Finite abelian diagonal subgroups of SL_n.

An element g = (1/r)(a_1, ..., a_n) is stored through its rotation angles
a_i/r in [0, 1).  Groups are materialized as sorted element lists; coordinate
subsets are bitmasks (bit i set means coordinate i, 0-based).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import ConsistencyError, GroupTooLargeError, NotSpecialLinearError

__all__ = [
    "GroupElement",
    "DiagonalGroup",
    "enumerate_group",
    "age",
    "fix_dimension",
    "junior_count",
    "fixed_subgroup",
    "sector_counts",
    "mask_of",
    "subsets",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 10000


@dataclass(frozen=True, order=True)
class GroupElement:
    angles: tuple

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(Fraction(a) % 1 for a in self.angles))

    @classmethod
    def from_rotation(cls, r, numerators):
        """Build (1/r)(a_1, ..., a_n)."""
        return cls(tuple(Fraction(a, r) for a in numerators))

    @property
    def n(self):
        return len(self.angles)

    @property
    def order(self):
        return lcm(1, *(a.denominator for a in self.angles))

    def age(self):
        return sum(self.angles, Fraction(0))

    def is_special_linear(self):
        return self.age().denominator == 1

    def fixed_mask(self):
        m = 0
        for i, a in enumerate(self.angles):
            if a == 0:
                m |= 1 << i
        return m

    def fixed_coordinates(self):
        return [i for i, a in enumerate(self.angles) if a == 0]

    def fix_dimension(self):
        return sum(1 for a in self.angles if a == 0)

    def is_identity(self):
        return not any(self.angles)

    def __mul__(self, other):
        return GroupElement(tuple(a + b for a, b in zip(self.angles, other.angles)))

    def inverse(self):
        return GroupElement(tuple(-a for a in self.angles))

    def __pow__(self, k):
        return GroupElement(tuple(a * k for a in self.angles))

    def __str__(self):
        r = self.order
        return f"1/{r}(" + ",".join(str(int(a * r)) for a in self.angles) + ")"


def age(g):
    return g.age()


def fix_dimension(g):
    return g.fix_dimension()


def mask_of(coords):
    m = 0
    for i in coords:
        m |= 1 << i
    return m


def subsets(mask):
    """All submasks of ``mask``, including 0 and mask itself."""
    sub = mask
    out = []
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return out[::-1]


def _popcount(m):
    return bin(m).count("1")


@dataclass(frozen=True)
class DiagonalGroup:
    n: int
    elements: tuple
    generators: tuple = ()
    _fix_counts: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self._fix_counts is None:
            # |G^K| for every mask K
            full = (1 << self.n) - 1
            counts = dict.fromkeys(range(full + 1), 0)
            for g in self.elements:
                for k in subsets(g.fixed_mask()):
                    counts[k] += 1
            object.__setattr__(self, "_fix_counts", counts)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in set(self.elements)

    @property
    def exponent(self):
        """lcm of element orders; every lambda_i(h) is an exponent-th root of unity."""
        return lcm(1, *(g.order for g in self.elements))

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    def fixed_count(self, mask):
        """|G^K|: number of elements fixing every coordinate in ``mask``."""
        return self._fix_counts[mask]

    def is_trivial(self):
        return len(self.elements) == 1


def _closure(n, gens, cap):
    identity = GroupElement((0,) * n)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise GroupTooLargeError(f"group closure exceeds cap {cap}")
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def enumerate_group(n, generators=(), cap=DEFAULT_CAP):
    """Close ``generators`` (angle vectors) under componentwise addition mod 1."""
    gens = []
    for gen in generators:
        g = gen if isinstance(gen, GroupElement) else GroupElement(tuple(gen))
        if g.n != n:
            raise ValueError(f"generator {gen} has {g.n} entries, expected {n}")
        if not g.is_special_linear():
            raise NotSpecialLinearError(
                f"generator {g} has age {g.age()}, not an integer (not in SL_{n})"
            )
        gens.append(g)
    return DiagonalGroup(n, _closure(n, gens, cap), tuple(gens))


def group_from_elements(n, elements):
    """Wrap an already closed element collection."""
    return DiagonalGroup(n, tuple(sorted(set(elements))))


def junior_count(G):
    return sum(1 for g in G.elements if g.age() == 1 and g.fix_dimension() == 0)


def fixed_subgroup(G, coords):
    """G^I, the elements fixing every coordinate in ``coords``."""
    mask = coords if isinstance(coords, int) else mask_of(coords)
    elems = tuple(g for g in G.elements if g.fixed_mask() & mask == mask)
    return DiagonalGroup(G.n, elems)


def sector_counts(G, I, J):
    """Return (|G_J|, |G_{I,J}|), computed directly and by inclusion-exclusion.

    G_J is the set of elements fixing exactly the coordinates in J;
    G_{I,J} fixes the coordinates in I and moves every coordinate in J \\ I.
    """
    I = I if isinstance(I, int) else mask_of(I)
    J = J if isinstance(J, int) else mask_of(J)
    if I & ~J:
        raise ValueError("I must be a subset of J")
    full = G.full_mask
    direct_J = sum(1 for g in G.elements if g.fixed_mask() == J)
    direct_IJ = sum(
        1 for g in G.elements
        if g.fixed_mask() & I == I and g.fixed_mask() & (J & ~I) == 0
    )
    ie_J = sum(
        (-1) ** (_popcount(K) - _popcount(J)) * G.fixed_count(K)
        for K in subsets(full) if K & J == J
    )
    ie_IJ = sum(
        (-1) ** (_popcount(K) - _popcount(I)) * G.fixed_count(K)
        for K in subsets(J) if K & I == I
    )
    if direct_J != ie_J or direct_IJ != ie_IJ:
        raise ConsistencyError(
            f"sector counts disagree: |G_J| {direct_J} vs {ie_J}, "
            f"|G_IJ| {direct_IJ} vs {ie_IJ}"
        )
    return direct_J, direct_IJ
