"""Niemeier lattices from root systems and glue codes.

Each rank-24 even unimodular lattice (except the rootless one) is determined
by its ADE root sublattice Q = ⊕Qᵢ together with a glue code: a self-dual
isotropic subgroup of the discriminant group ∏ Qᵢ*/Qᵢ, recorded as label
tuples in the Conway–Sloane glue-label convention of `rootdata`.  The shipped
glue data is not trusted: `build` re-derives the lattice and validates
evenness, unimodularity, and the root-system decomposition, which pins
correctness by the uniqueness of each Niemeier lattice given its roots.
"""

import os
from fractions import Fraction
from math import isqrt

from . import exactmat as em
from . import lattice as lat
from . import rootdata as rd
from . import codeaut as ca
from . import abelian as ab

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def data_dir():
    return os.environ.get("ORBAUT_DATA", DATA_DIR)


ROOT_COUNTS = {"A": lambda n: n * (n + 1),
               "D": lambda n: 2 * n * (n - 1),
               "E": lambda n: {6: 72, 7: 126, 8: 240}[n]}


class GlueRecord:
    def __init__(self, name, components, generators, basis=None, basis_den=1):
        self.name = name
        self.components = components      # list of RootType (empty for Leech)
        self.generators = generators      # list of label tuples
        self.basis = basis                # explicit basis rows (Leech only)
        self.basis_den = basis_den


def parse_glue_file(path):
    """Parse the glue data file.  Grammar (one record per block):

        lattice <name>
        components <T1> <T2> ...        # ADE type names, e.g. A5 A5 D4
        gen <l1> <l2> ...               # one glue label per component
        end

    or, for an explicit-basis record:

        lattice <name>
        basis 1/<d>                     # ambient inner product x·y/d
        row <24 integers>               # 24 integer basis rows
        end

    Lines starting with '#' and blank lines are ignored."""
    records = {}
    name = components = gens = basis = None
    den = 1
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tok = line.split()
            try:
                if tok[0] == "lattice":
                    name = tok[1]
                    components, gens, basis, den = None, [], None, 1
                elif tok[0] == "components":
                    components = [rd.parse_type(s) for s in tok[1:]]
                elif tok[0] == "gen":
                    labels = tuple(int(x) for x in tok[1:])
                    if components is None or len(labels) != len(components):
                        raise ValueError("gen before components or wrong arity")
                    for t, l in zip(components, labels):
                        if l not in rd.labels(t):
                            raise ValueError(f"label {l} invalid for {t}")
                    gens.append(labels)
                elif tok[0] == "basis":
                    den = int(tok[1].split("/")[1]) if "/" in tok[1] else int(tok[1])
                    basis = []
                elif tok[0] == "row":
                    basis.append([int(x) for x in tok[1:]])
                elif tok[0] == "end":
                    records[name] = GlueRecord(name, components or [], gens,
                                               basis, den)
                    name = None
                else:
                    raise ValueError(f"unknown directive {tok[0]!r}")
            except (IndexError, ValueError) as e:
                raise ValueError(f"{path}:{lineno}: {e}") from e
    return records


def load_glue_data(directory=None):
    return parse_glue_file(os.path.join(directory or data_dir(), "glue.txt"))


class NiemeierLattice:
    def __init__(self, name, components, N, Q, glue_code, offsets):
        self.name = name
        self.components = components
        self.N = N
        self.Q = Q
        self.glue_code = glue_code        # frozenset of label tuples
        self.offsets = offsets            # start index of each component
        self._n0 = None
        self._quotient = None

    @property
    def rank(self):
        return self.N.rank

    def component_slice(self, i):
        start = self.offsets[i]
        return start, start + self.components[i].rank

    def label_of(self, vec):
        """Glue label tuple of an ambient vector of N."""
        out = []
        pos = 0
        for t in self.components:
            r = t.rank
            part = vec[pos:pos + r]
            for l in rd.labels(t):
                diff = [x - y for x, y in zip(part, rd.label_vector(t, l))]
                if all(Fraction(d).denominator == 1 for d in diff):
                    out.append(l)
                    break
            else:
                raise ValueError("vector not in Q*")
            pos += r
        return tuple(out)

    def glue_lift(self, labels):
        """An ambient representative of a glue label tuple."""
        vec = []
        for t, l in zip(self.components, labels):
            vec.extend(rd.label_vector(t, l))
        return vec


def glue_span(components, generators):
    """Closure of glue label tuples under componentwise label addition."""
    zero = tuple(0 for _ in components)
    seen = {zero}
    frontier = [zero]
    while frontier:
        cur = frontier.pop()
        for g in generators:
            nxt = tuple(rd.label_add(t, a, b)
                        for t, a, b in zip(components, cur, g))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def build(record):
    """Construct and validate the Niemeier lattice of a glue record."""
    if record.basis is not None:
        dim = len(record.basis[0])
        gram_amb = em.scale(em.identity(dim), Fraction(1, record.basis_den))
        N = lat.Lattice(record.basis, gram_amb)
        _validate(record.name, N, [], None)
        return NiemeierLattice(record.name, [], N, None, frozenset(), [])
    components = record.components
    dim = sum(t.rank for t in components)
    if dim != 24:
        raise ValueError("root system mismatch: rank ≠ 24")
    offsets = []
    pos = 0
    gram_blocks = em.zeros(dim, dim)
    for t in components:
        offsets.append(pos)
        c = rd.cartan_matrix(t)
        for i in range(t.rank):
            for j in range(t.rank):
                gram_blocks[pos + i][pos + j] = c[i][j]
        pos += t.rank
    Q = lat.Lattice(em.identity(dim), gram_blocks)
    code = glue_span(components, record.generators)
    stub = NiemeierLattice(record.name, components, None, Q, code, offsets)
    rows = [row[:] for row in Q.basis]
    for g in record.generators:
        rows.append(stub.glue_lift(g))
    den = 1
    for row in rows:
        for x in row:
            den = den * Fraction(x).denominator \
                // _gcd(den, Fraction(x).denominator)
    h = em.hnf_basis([[int(x * den) for x in row] for row in rows])
    if len(h) != dim:
        raise ValueError("root system mismatch: glue drops rank")
    N = lat.Lattice([[Fraction(x, den) for x in row] for row in h], gram_blocks)
    _validate(record.name, N, components, code)
    return NiemeierLattice(record.name, components, N, Q, code, offsets)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _validate(name, N, components, code):
    """Validation of a built lattice.

    Evenness of all basis norms plus Gram integrality gives evenness of the
    whole lattice (cross terms contribute 2(x|y)).  For glued records the
    root system is pinned without a rank-24 enumeration: every norm-2 vector
    of N ⊂ Q* has componentwise parts in discriminant cosets, and its glue
    class has minimal norm ≤ 2; since every nonzero glue class is checked to
    have minimal coset norm ≥ 4, all roots of N lie in Q itself, whose root
    count per component is derived by reflection closure of the Cartan
    matrix.  The rootless record is checked by direct norm-2 enumeration."""
    if N.rank != 24:
        raise ValueError(f"{name}: root system mismatch: rank {N.rank}")
    if not N.is_integral():
        raise ValueError(f"{name}: determinant ≠ 1: non-integral Gram")
    if not N.is_even():
        raise ValueError(f"{name}: odd vector in basis")
    if N.det() != 1:
        raise ValueError(f"{name}: determinant ≠ 1: det {N.det()}")
    if not components:
        if lat.roots(N):
            raise ValueError(f"{name}: root system mismatch: unexpected roots")
        return
    for cls in code:
        if all(l == 0 for l in cls):
            continue
        m = sum(rd.min_coset_norm(t, l) for t, l in zip(components, cls))
        if m.denominator != 1 or m % 2 != 0:
            raise ValueError(f"{name}: odd vector in glue class {cls}")
        if m < 4:
            raise ValueError(f"{name}: root system mismatch: "
                             f"norm-2 vectors in glue class {cls}")
    expected_roots = sum(ROOT_COUNTS[t.family](t.n) for t in components)
    derived_roots = sum(rd.root_count(t) for t in components)
    if derived_roots != expected_roots:
        raise ValueError(f"{name}: root system mismatch: "
                         f"{derived_roots} roots, expected {expected_roots}")


_ALL = None


def all_lattices(directory=None):
    """name → NiemeierLattice for every record in the glue data."""
    global _ALL
    if _ALL is None or directory is not None:
        records = load_glue_data(directory)
        built = {name: build(rec) for name, rec in records.items()}
        if directory is None:
            _ALL = built
        return built
    return _ALL


def minus_one_outside_weyl(N):
    """True iff the −1 isometry is not in the Weyl group of the roots,
    i.e. some component fails the A₁/D_even/E₇/E₈ membership rule."""
    if not N.components:
        return False  # rootless: W(Q) trivial but the orbifold is special
    return not all(rd.minus_one_in_weyl(t) for t in N.components)


def g2_ambient(N):
    slots = []
    for t in N.components:
        slots.append((f"{t.family}{t.n}", rd.labels(t),
                      rd.diagram_discriminant_action(t)))
    return ca.AmbientAction(slots)


def g2_group(N, budget=ca.DEFAULT_BUDGET):
    """Permutation action of Aut(N)/W(N) on the components: the stabilizer
    of the glue code in (∏ diagram actions) ⋊ (equal-type slot permutations),
    projected to its permutation part."""
    res = ca.stabilizer(g2_ambient(N), N.glue_code, budget)
    a1, a2 = ca.split_aut1_aut2(res)
    return {"order": a2["order"], "perm_gens": a2["perm_gens"],
            "stabilizer_order": res.order, "kernel_order": a1["order"],
            "nodes": res.nodes}


def index_2qstar(N):
    """|(N ∩ 2Q*)/2N|.

    An x = Σcᵢbᵢ ∈ N lies in 2Q* iff (x|qⱼ) is even for every basis vector
    qⱼ of Q, a linear condition on c over F₂; the index is the kernel size
    2^(24 − rank) of the pairing matrix (bᵢ|qⱼ) mod 2."""
    gram = N.Q.gram
    pair = em.mat_mul(em.mat_mul(N.N.basis, gram), em.transpose(N.Q.basis))
    rows = []
    for row in pair:
        bits = []
        for x in row:
            fx = Fraction(x)
            if fx.denominator != 1:
                raise ValueError("N not contained in Q*")
            bits.append(fx.numerator % 2)
        rows.append(bits)
    rank = 0
    ncols = len(rows[0])
    col = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                rows[r] = [(a + b) % 2 for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return 2 ** (len(N.N.basis) - rank)


def n0_lattice(N):
    return lat.intersect(N.N, lat.scaled(N.Q, Fraction(1, 2)))


def n0_quotient(N):
    """(N ∩ Q/2)/Q as a list of glue label tuples (including 0)."""
    n0 = n0_lattice(N)
    q = lat.quotient(n0, N.Q)
    seen = set()
    for coords in q.elements():
        seen.add(N.label_of(q.lift(coords)))
    assert len(seen) == q.order
    return sorted(seen)
