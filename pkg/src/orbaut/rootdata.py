"""Catalog of ADE root lattices.

Cartan matrices, fundamental weights, discriminant groups with their
standard glue labels, diagram-automorphism actions on the discriminant
group, and Weyl-group facts.

Simple-root numbering: Aₙ is the chain 1…n.  Dₙ is the chain 1…(n−2) with
the two fork nodes n−1 and n attached to n−2 (so λ₁ is the vector class,
λ_{n−1} and λₙ the half-integer classes).  E₆ is the chain 1…5 with node 6
on node 3; E₇ the chain 1…6 with node 7 on node 4; E₈ the chain 1…7 with
node 8 on node 5.

Glue labels: Aₙ uses [i] = class of λᵢ = i·[1] in ℤ_{n+1}; Dₙ uses
[0]=0, [1]=λ_{n−1}, [2]=λ₁ (vector class), [3]=λₙ; E₆ uses ℤ₃ = ⟨[1]=λ₁⟩;
E₇ uses ℤ₂ = ⟨[1]=λ₁⟩; E₈ is unimodular.
"""

from fractions import Fraction
from math import factorial

from . import exactmat as em


class RootType:
    __slots__ = ("family", "n")

    def __init__(self, family, n):
        if family == "A":
            ok = n >= 1
        elif family == "D":
            ok = n >= 4
        elif family == "E":
            ok = n in (6, 7, 8)
        else:
            ok = False
        if not ok:
            raise ValueError(f"invalid root type {family}{n}")
        self.family = family
        self.n = n

    def __eq__(self, other):
        return (isinstance(other, RootType)
                and (self.family, self.n) == (other.family, other.n))

    def __hash__(self):
        return hash((self.family, self.n))

    def __repr__(self):
        return f"{self.family}{self.n}"

    @property
    def rank(self):
        return self.n


def parse_type(s):
    return RootType(s[0], int(s[1:]))


def _edges(t):
    f, n = t.family, t.n
    if f == "A":
        return [(i, i + 1) for i in range(1, n)]
    if f == "D":
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    branch = {6: 3, 7: 4, 8: 5}[n]
    return [(i, i + 1) for i in range(1, n - 1)] + [(branch, n)]


def cartan_matrix(t):
    n = t.n
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _edges(t):
        c[i - 1][j - 1] = c[j - 1][i - 1] = -1
    return c


_CATALOG = {}


class RootSystemData:
    def __init__(self, t):
        self.type = t
        self.cartan = cartan_matrix(t)
        self.inv_cartan = em.inverse(self.cartan)
        # λᵢ = Σⱼ (C⁻¹)ᵢⱼ αⱼ; (λᵢ|λⱼ) = (C⁻¹)ᵢⱼ for simply-laced types
        self.fundamental_weights = [row[:] for row in self.inv_cartan]
        self.weyl_order = _weyl_order(t)
        self.disc_moduli = disc_moduli(t)

    def weight(self, i):
        """λᵢ in root coordinates (1-based index)."""
        return self.fundamental_weights[i - 1]


def catalog(t):
    if t not in _CATALOG:
        _CATALOG[t] = RootSystemData(t)
    return _CATALOG[t]


def _weyl_order(t):
    f, n = t.family, t.n
    if f == "A":
        return factorial(n + 1)
    if f == "D":
        return 2 ** (n - 1) * factorial(n)
    return {6: 51840, 7: 2903040, 8: 696729600}[n]


def disc_moduli(t):
    """Moduli of the discriminant group in label coordinates."""
    f, n = t.family, t.n
    if f == "A":
        return (n + 1,)
    if f == "D":
        return (2, 2) if n % 2 == 0 else (4,)
    return {6: (3,), 7: (2,), 8: ()}[n]


def labels(t):
    """All glue labels of the discriminant group."""
    f, n = t.family, t.n
    if f == "A":
        return list(range(n + 1))
    if f == "D":
        return [0, 1, 2, 3]
    return {6: [0, 1, 2], 7: [0, 1], 8: [0]}[n]


def label_to_coords(t, label):
    """Label → element of the discriminant group in `disc_moduli` coordinates.
    For D_even the three nonzero labels map as [1]=(1,0), [3]=(0,1),
    [2]=[1]+[3]=(1,1)."""
    f, n = t.family, t.n
    if f == "D" and n % 2 == 0:
        return {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}[label]
    if f == "E" and n == 8:
        return ()
    return (label % disc_moduli(t)[0],)

def coords_to_label(t, coords):
    f, n = t.family, t.n
    if f == "D" and n % 2 == 0:
        return {(0, 0): 0, (1, 0): 1, (1, 1): 2, (0, 1): 3}[tuple(coords)]
    if f == "E" and n == 8:
        return 0
    return coords[0] % disc_moduli(t)[0]


def label_add(t, a, b):
    ca, cb = label_to_coords(t, a), label_to_coords(t, b)
    mods = disc_moduli(t)
    return coords_to_label(t, tuple((x + y) % m for x, y, m in zip(ca, cb, mods)))


def label_neg(t, a):
    mods = disc_moduli(t)
    ca = label_to_coords(t, a)
    return coords_to_label(t, tuple((-x) % m for x, m in zip(ca, mods)))


def label_vector(t, label):
    """A coset representative of the label in root coordinates (rational)."""
    d = catalog(t)
    f, n = t.family, t.n
    zero = [Fraction(0)] * n
    if label == 0:
        return zero
    if f == "A":
        return d.weight(label)
    if f == "D":
        return d.weight({1: n - 1, 2: 1, 3: n}[label])
    if f == "E" and n == 6:
        return d.weight(1) if label == 1 else [2 * x for x in d.weight(1)]
    if f == "E" and n == 7:
        return d.weight(1)
    raise ValueError("no nonzero labels for E8")


def min_coset_norm(t, label):
    """Minimal norm over the coset label + Q in Q*.  Closed forms (verified
    against direct shifted short-vector enumeration in the test suite):
    Aₙ [i] → i(n+1−i)/(n+1); Dₙ [2] → 1, [1]/[3] → n/4; E₆ → 4/3;
    E₇ → 3/2."""
    f, n = t.family, t.n
    if label == 0:
        return Fraction(0)
    if f == "A":
        i = label % (n + 1)
        return Fraction(i * (n + 1 - i), n + 1)
    if f == "D":
        return Fraction(1) if label == 2 else Fraction(n, 4)
    if n == 6:
        return Fraction(4, 3)
    if n == 7:
        return Fraction(3, 2)
    raise ValueError("no nonzero labels for E8")


_ROOTS = {}


def all_roots(t):
    """All roots in root coordinates, by reflection closure of the simple
    roots (integer arithmetic on the Cartan matrix only)."""
    if t in _ROOTS:
        return _ROOTS[t]
    c = cartan_matrix(t)
    n = t.n
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        x = frontier.pop()
        for j in range(n):
            pairing = sum(x[k] * c[k][j] for k in range(n))
            y = tuple(x[k] - (pairing if k == j else 0) for k in range(n))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    # closure under negation (−αᵢ are roots; reflections already give them)
    seen |= {tuple(-v for v in x) for x in seen}
    _ROOTS[t] = sorted(seen)
    return _ROOTS[t]


def root_count(t):
    return len(all_roots(t))


def minus_one_in_weyl(t):
    """True iff −1 lies in the Weyl group: A₁, D_even, E₇, E₈."""
    f, n = t.family, t.n
    return ((f == "A" and n == 1) or (f == "D" and n % 2 == 0)
            or (f == "E" and n in (7, 8)))


def diagram_discriminant_action(t):
    """Generators of the diagram-automorphism action on the discriminant
    group, as permutation dicts on the label set."""
    f, n = t.family, t.n
    ls = labels(t)
    ident = {l: l for l in ls}

    def neg():
        return {l: label_neg(t, l) for l in ls}

    if f == "A":
        return [] if n == 1 else [neg()]
    if f == "D":
        if n == 4:
            # triality + diagram flip: full Sym₃ on the three nonzero classes
            return [{0: 0, 1: 2, 2: 1, 3: 3}, {0: 0, 1: 1, 2: 3, 3: 2}]
        return [{0: 0, 1: 3, 2: 2, 3: 1}]
    if n == 6:
        return [neg()]
    return []
