"""Exact integral-lattice engine.

A lattice is stored as a row basis over an ambient rational space carrying a
fixed symmetric bilinear form.  Root lattices use their Cartan matrix as the
ambient form directly (abstract root coordinates), so every quantity in the
package is Gram-intrinsic and exact.  Supports duals, discriminant groups,
sublattice quotients with lift maps, intersections, and norm-2 short-vector
enumeration with root-system decomposition.
"""

from fractions import Fraction
from math import isqrt

from . import exactmat as em


class Lattice:
    """Row-basis lattice over an ambient space with bilinear form `ambient_gram`."""

    def __init__(self, basis, ambient_gram=None):
        if not basis:
            raise ValueError("empty basis")
        n = len(basis[0])
        self.basis = [[Fraction(x) for x in row] for row in basis]
        if ambient_gram is None:
            ambient_gram = em.identity(n)
        self.ambient_gram = ambient_gram
        bg = em.mat_mul(self.basis, ambient_gram)
        self.gram = em.mat_mul(bg, em.transpose(self.basis))
        self.rank = len(basis)

    def det(self):
        return em.det(self.gram)

    def pair(self, x, y):
        """Bilinear form of two basis-coordinate vectors."""
        return sum(xi * g for xi, g in zip(x, em.mat_vec(self.gram, y)))

    def norm(self, x):
        return self.pair(x, x)

    def vector(self, coords):
        """Ambient-space vector of a basis-coordinate vector."""
        return em.vec_mat(coords, self.basis)

    def is_integral(self):
        return em.is_integral(self.gram)

    def is_even(self):
        return (self.is_integral()
                and all(self.gram[i][i] % 2 == 0 for i in range(self.rank)))


def scaled(L, c):
    """The lattice c·L in the same ambient space."""
    return Lattice(em.scale(L.basis, Fraction(c)), L.ambient_gram)


def dual_lattice(L):
    """L* = {v : (v|L) ⊂ ℤ}, full-rank case, same ambient space."""
    dual_basis = em.mat_mul(em.inverse(L.gram), L.basis)
    return Lattice(dual_basis, L.ambient_gram)


class QuotientGroup:
    """B/A for lattices A ⊆ B of equal rank, with a coset-representative lift.

    `moduli` are the nontrivial invariant factors; `lifts` holds one
    basis-coordinate-free ambient vector per generator.
    """

    def __init__(self, B, A):
        m = em.solve_left(B.basis, A.basis)
        if not em.is_integral(m):
            raise ValueError("not a sublattice")
        d, _, v = em.snf(em.to_int(m))
        diag = [d[i][i] for i in range(len(d))]
        if any(x == 0 for x in diag):
            raise ValueError("not a sublattice")  # rank drop
        self.B = B
        self.A = A
        vinv = em.to_int(em.inverse(v))
        # rows of vinv·B.basis descend to generators of order diag[i]
        self._all_moduli = diag
        self._v = v
        self._gen_rows = em.mat_mul(vinv, B.basis)
        self.moduli = [x for x in diag if x > 1]
        self.order = 1
        for x in self.moduli:
            self.order *= x
        self.lifts = [row for x, row in zip(diag, self._gen_rows) if x > 1]

    def coords(self, vec):
        """Class of an ambient vector of B as coordinates against `moduli`."""
        y = em.solve_left(self.B.basis, [vec])[0]
        if not all(Fraction(t).denominator == 1 for t in y):
            raise ValueError("vector not in the numerator lattice")
        z = em.vec_mat([int(t) for t in y], self._v)
        return tuple(int(zi) % m for zi, m in zip(z, self._all_moduli) if m > 1)

    def lift(self, coords):
        """An ambient coset representative of the given class."""
        vec = [Fraction(0)] * len(self.B.basis[0])
        for c, row in zip(coords, self.lifts):
            vec = [a + c * b for a, b in zip(vec, row)]
        return vec

    def elements(self):
        """All classes (coordinate tuples); order must be modest."""
        out = [()]
        for m in self.moduli:
            out = [t + (i,) for t in out for i in range(m)]
        return out


def quotient(B, A):
    return QuotientGroup(B, A)


def discriminant_group(L):
    if not L.is_integral():
        raise ValueError("not integral")
    return QuotientGroup(dual_lattice(L), L)


def intersect(A, B):
    """A ∩ B for full-rank lattices in a shared ambient space: (A* + B*)*."""
    da, db = dual_lattice(A), dual_lattice(B)
    rows = da.basis + db.basis
    den = 1
    for row in rows:
        for x in row:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
    scaled_rows = [[int(x * den) for x in row] for row in rows]
    h = em.hnf_basis(scaled_rows)
    sum_basis = [[Fraction(x, den) for x in row] for row in h]
    return dual_lattice(Lattice(sum_basis, A.ambient_gram))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _cholesky(gram):
    """q, c with Q(x) = Σᵢ qᵢ·(xᵢ + Σ_{j>i} c[i][j]·xⱼ)², all exact."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    q = [Fraction(0)] * n
    c = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        q[i] = a[i][i]
        for j in range(i + 1, n):
            c[i][j] = a[i][j] / q[i]
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= a[k][i] * a[i][l] / q[i]
                a[l][k] = a[k][l]
    return q, c


def _int_range(center, bound2):
    """All integers m with (m + center)² ≤ bound2, exact; bound2 ≥ 0."""
    # over-approximate the radius by an integer, then test exactly
    r = isqrt(bound2.numerator // bound2.denominator) + 1
    base = -center
    lo = int(base) - r - 1
    hi = int(base) + r + 1
    return [m for m in range(lo, hi + 1) if (m + center) ** 2 <= bound2]


def short_vectors(L, norm_bound, reduce_basis=True):
    """All nonzero x (basis coordinates) with norm(x) ≤ norm_bound, exact
    Fincke–Pohst enumeration.  Closed under negation."""
    gram = L.gram
    n = L.rank
    tr = None
    if reduce_basis:
        gram, tr = _size_reduce(gram)
    q, c = _cholesky(gram)
    # integer-scaled centers: c[i][j] = cn[i][j] / cd[i] keeps the hot inner
    # product in plain int arithmetic
    cd = [1] * n
    for i in range(n):
        for j in range(i + 1, n):
            d = c[i][j].denominator
            cd[i] = cd[i] * d // _gcd(cd[i], d)
    cn = [[int(c[i][j] * cd[i]) for j in range(n)] for i in range(n)]
    bound = Fraction(norm_bound)
    out = []
    x = [0] * n

    def descend(i, rem):
        if i < 0:
            if any(x):
                out.append(x[:])
            return
        row = cn[i]
        num = 0
        for j in range(i + 1, n):
            num += row[j] * x[j]
        center = Fraction(num, cd[i])
        for m in _int_range(center, rem / q[i]):
            x[i] = m
            descend(i - 1, rem - q[i] * (m + center) ** 2)
        x[i] = 0

    descend(n - 1, bound)
    if tr is not None:
        out = [em.vec_mat(v, tr) for v in out]
    return out


def _size_reduce(gram):
    """Greedy pairwise reduction of a Gram matrix; returns (gram', t) with
    gram' = t·gram·tᵀ, t unimodular.  Cheap stand-in for LLL, enough to keep
    the enumeration tree small on the bases built here."""
    n = len(gram)
    g = [[Fraction(x) for x in row] for row in gram]
    t = em.identity(n)
    changed = True
    passes = 0
    while changed and passes < 50:
        changed = False
        passes += 1
        for i in range(n):
            for j in range(n):
                if i == j or g[j][j] == 0:
                    continue
                mu = g[i][j] / g[j][j]
                m = int(mu + Fraction(1, 2)) if mu >= 0 else -int(-mu + Fraction(1, 2))
                if m != 0 and g[i][i] - 2 * m * g[i][j] + m * m * g[j][j] < g[i][i]:
                    for k in range(n):
                        g[i][k] -= m * g[j][k]
                        t[i][k] -= m * t[j][k]
                    for k in range(n):
                        g[k][i] -= m * g[k][j]
                    changed = True
    return g, t


def roots(L):
    """All norm-2 vectors, in basis coordinates."""
    if not L.is_even():
        raise ValueError("lattice is not even")
    return [v for v in short_vectors(L, 2) if L.norm(v) == 2]


ADE_BY_RANK_COUNT = {}
for _n in range(1, 25):
    ADE_BY_RANK_COUNT[(_n, _n * (_n + 1))] = ("A", _n)
for _n in range(4, 25):
    ADE_BY_RANK_COUNT[(_n, 2 * _n * (_n - 1))] = ("D", _n)
ADE_BY_RANK_COUNT[(6, 72)] = ("E", 6)
ADE_BY_RANK_COUNT[(7, 126)] = ("E", 7)
ADE_BY_RANK_COUNT[(8, 240)] = ("E", 8)


class RootDecomposition:
    def __init__(self, components, total_roots):
        self.components = components  # list of (type tag, root list, count)
        self.total_roots = total_roots

    @property
    def types(self):
        return [t for t, _, _ in self.components]


def root_decomposition(L):
    """Split the norm-2 vectors into orthogonally-indecomposable components
    and identify each ADE type by (rank, root count)."""
    rts = roots(L)
    gram_cache = {}

    def pair(i, j):
        key = (i, j) if i <= j else (j, i)
        if key not in gram_cache:
            gram_cache[key] = L.pair(rts[key[0]], rts[key[1]])
        return gram_cache[key]

    unassigned = set(range(len(rts)))
    components = []
    while unassigned:
        seed = unassigned.pop()
        comp = [seed]
        frontier = [seed]
        while frontier:
            cur = frontier.pop()
            linked = [k for k in unassigned if pair(cur, k) != 0]
            for k in linked:
                unassigned.discard(k)
            comp.extend(linked)
            frontier.extend(linked)
        comp_vecs = [rts[k] for k in comp]
        den = 1
        sub = em.hnf_basis([[int(x) for x in v] for v in comp_vecs])
        rank = len(sub)
        tag = ADE_BY_RANK_COUNT.get((rank, len(comp_vecs)))
        if tag is None:
            raise ValueError("unrecognized component")
        components.append((tag, comp_vecs, len(comp_vecs)))
    components.sort(key=lambda c: (c[0], -c[2]))
    return RootDecomposition(components, len(rts))


def shortest_coset_norm(L, offset):
    """Minimal norm over the coset offset + L (ambient-coordinate offset)."""
    frac = em.solve_left(L.basis, [offset])[0]
    if all(Fraction(t).denominator == 1 for t in frac):
        return Fraction(0)
    n = L.rank
    q, c = _cholesky(L.gram)
    # x = 0 gives an initial bound; enumerate coset vectors of norm ≤ bound
    bound = sum((fi * gi for fi, gi in zip(frac, em.mat_vec(L.gram, frac))),
                Fraction(0))
    norms = []
    x = [Fraction(f) for f in frac]  # running coordinates xᵢ = mᵢ + fracᵢ

    def descend(i, rem):
        if i < 0:
            norms.append(bound - rem)
            return
        center = frac[i] + sum(c[i][j] * x[j] for j in range(i + 1, n))
        for m in _int_range(center, rem / q[i]):
            x[i] = m + frac[i]
            descend(i - 1, rem - q[i] * (m + center) ** 2)
        x[i] = Fraction(frac[i])

    descend(n - 1, bound)
    return min(norms)
