"""Finite abelian groups with mixed moduli.

Element domain of a group with moduli (m₁,…,m_k) is ∏ ℤ_{mᵢ}; elements are
coordinate tuples reduced mod the moduli.  Subgroups are generated by
breadth-first closure (all instances here are tiny) and identified by their
invariant factors via Smith normal form.
"""

from fractions import Fraction
from math import lcm

from . import exactmat as em

ENUMERATION_CAP = 2 ** 20


class AbelianGroup:
    def __init__(self, moduli):
        self.moduli = tuple(int(m) for m in moduli)
        if any(m <= 0 for m in self.moduli):
            raise ValueError("moduli must be positive")
        self.order = 1
        for m in self.moduli:
            self.order *= m

    def reduce(self, coords):
        return tuple(int(c) % m for c, m in zip(coords, self.moduli))

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def zero(self):
        return (0,) * len(self.moduli)

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.moduli == other.moduli

    def __repr__(self):
        return f"AbelianGroup{self.moduli}"


class Subgroup:
    def __init__(self, parent, gens, elements):
        self.parent = parent
        self.gens = [parent.reduce(g) for g in gens]
        self.elements = elements  # frozenset of reduced tuples
        self.order = len(elements)

    def __contains__(self, el):
        return self.parent.reduce(el) in self.elements

    def invariant_factors(self):
        return subgroup_invariant_factors(self.parent.moduli, self.gens)


def span(G, gens, cap=ENUMERATION_CAP):
    """Smallest subgroup of G containing gens, fully enumerated."""
    gens = [G.reduce(g) for g in gens]
    seen = {G.zero()}
    frontier = [G.zero()]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = G.add(cur, g)
            if nxt not in seen:
                if len(seen) >= cap:
                    raise ValueError("subgroup too large")
                seen.add(nxt)
                frontier.append(nxt)
    return Subgroup(G, gens, frozenset(seen))


def subgroup_invariant_factors(moduli, gens):
    """Invariant factors d₁|d₂|… of the subgroup of ∏ℤ_mᵢ generated by gens.

    The subgroup is L/D where L = ⟨gens, diag(m)⟩ ⊂ ℤᵏ and D = diag(m)ℤᵏ,
    so its structure is read off the SNF of D's coordinate matrix against L.
    """
    k = len(moduli)
    if k == 0 or not gens:
        return []
    rows = [list(g) for g in gens] + [[moduli[i] if j == i else 0
                                       for j in range(k)] for i in range(k)]
    lbasis = em.hnf_basis(rows)
    m = em.solve_left(lbasis, [[moduli[i] if j == i else 0 for j in range(k)]
                               for i in range(k)])
    diag = em.snf_diagonal(em.to_int(m))
    return sorted(abs(d) for d in diag if abs(d) > 1)


def invariant_factors(H):
    return H.invariant_factors()


def char_group_structure(rows):
    """Invariant factors of the subgroup of (ℚ/ℤ)^m generated by rational
    rows (each coordinate taken mod 1)."""
    rows = [[Fraction(x) for x in row] for row in rows]
    if not rows:
        return []
    m = len(rows[0])
    den = 1
    for row in rows:
        for x in row:
            den = lcm(den, x.denominator)
    int_rows = [[int(x * den) % den for x in row] for row in rows]
    if den == 1:
        return []
    return subgroup_invariant_factors([den] * m, int_rows)
