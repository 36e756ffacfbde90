"""Affine Lie-algebra side of the orbifold analysis.

For each indecomposable ADE root lattice component R (R ≇ A₁) the fixed-point
subVOA is a tensor product of simple affine VOAs; this module records the
ideal types and levels, the abelian groups of simple-current modules per
ideal, the full correspondence table between lattice-side module labels and
affine dominant weights (shipped as a data file), exact affine conformal
weights, and coweight pairings used for inner-automorphism characters.

The correspondence table is not trusted as shipped: every row passes a
conformal-weight firewall at load time (untwisted rows must reproduce half
the minimal coset norm, twisted rows must equal rank/16 modulo 1/2, all
weights must be dominant of admissible level, and simple-current pairs must
differ by the δ-element).
"""

import os
from fractions import Fraction

from . import exactmat as em
from . import rootdata as rd


def cartan_matrix(family, n):
    """Cartan matrix C with C[i][j] = ⟨α_{j+1}, α_{i+1}^∨⟩ (0-based storage).

    A/D/E as in `rootdata`; Bₙ has short last node (row n has the −2),
    Cₙ has long last node (column n has the −2)."""
    if family in ("A", "D", "E"):
        return rd.cartan_matrix(rd.RootType(family, n))
    if family not in ("B", "C") or n < 2:
        raise ValueError(f"invalid affine type {family}{n}")
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        c[i][i + 1] = c[i + 1][i] = -1
    if family == "B":
        c[n - 1][n - 2] = -2
    else:
        c[n - 2][n - 1] = -2
    return c


def root_lengths(family, n):
    """dᵢ = (αᵢ|αᵢ)/2, normalized so long roots have norm 2."""
    if family in ("A", "D", "E"):
        return [Fraction(1)] * n
    if family == "B":
        return [Fraction(1)] * (n - 1) + [Fraction(1, 2)]
    return [Fraction(1, 2)] * (n - 1) + [Fraction(1)]


_DUAL_COXETER = {"A": lambda n: n + 1, "B": lambda n: 2 * n - 1,
                 "C": lambda n: n + 1, "D": lambda n: 2 * n - 2,
                 "E": lambda n: {6: 12, 7: 18, 8: 30}[n]}


class AffineIdeal:
    """A simple ideal type with level: the pair (Xₙ, k)."""

    def __init__(self, family, n, level):
        cartan_matrix(family, n)  # validates the type
        if level < 1:
            raise ValueError("positive integral level required")
        self.family = family
        self.n = n
        self.level = level
        self._pairing = None
        self._inv_cartan = None
        self._highest_root = None

    def __eq__(self, other):
        return (isinstance(other, AffineIdeal) and
                (self.family, self.n, self.level)
                == (other.family, other.n, other.level))

    def __hash__(self):
        return hash((self.family, self.n, self.level))

    def __repr__(self):
        return f"{self.family}{self.n},{self.level}"

    @property
    def rank(self):
        return self.n

    @property
    def dual_coxeter(self):
        return _DUAL_COXETER[self.family](self.n)

    @property
    def pairing_matrix(self):
        """(Λᵢ|Λⱼ) = D·S⁻¹·D with S the symmetrized Cartan, D = diag(dᵢ)."""
        if self._pairing is None:
            c = cartan_matrix(self.family, self.n)
            d = root_lengths(self.family, self.n)
            s = [[d[i] * c[i][j] for j in range(self.n)] for i in range(self.n)]
            sinv = em.inverse(s)
            self._pairing = [[d[i] * sinv[i][j] * d[j] for j in range(self.n)]
                             for i in range(self.n)]
        return self._pairing

    @property
    def inv_cartan(self):
        if self._inv_cartan is None:
            self._inv_cartan = em.inverse(cartan_matrix(self.family, self.n))
        return self._inv_cartan

    @property
    def highest_root(self):
        """Highest root in simple-root coordinates, by reflection closure."""
        if self._highest_root is None:
            c = cartan_matrix(self.family, self.n)
            n = self.n
            simple = [tuple(1 if j == i else 0 for j in range(n))
                      for i in range(n)]
            seen = set(simple)
            frontier = list(simple)
            while frontier:
                x = frontier.pop()
                for j in range(n):
                    pairing = sum(c[j][k] * x[k] for k in range(n))
                    y = tuple(x[k] - (pairing if k == j else 0)
                              for k in range(n))
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
            self._highest_root = max(seen, key=lambda x: sum(x))
        return self._highest_root


def lie_data(t):
    """Ideal types and levels of the weight-one Lie algebra for component
    type t.  D₂ and D₃ are normalized to A₁² and A₃."""
    f, n = t.family, t.n
    if f == "A":
        if n == 1:
            raise ValueError("excluded by condition (II)")
        if n == 2:
            return [AffineIdeal("A", 1, 4)]
        if n == 3:
            return [AffineIdeal("A", 1, 2), AffineIdeal("A", 1, 2)]
        if n == 5:
            return [AffineIdeal("A", 3, 2)]
        if n % 2 == 0:
            return [AffineIdeal("B", n // 2, 2)]
        return [AffineIdeal("D", (n + 1) // 2, 2)]
    if f == "D":
        m = n // 2
        if n % 2 == 1:
            return [AffineIdeal("B", m, 1), AffineIdeal("B", m, 1)]
        if n == 4:
            return [AffineIdeal("A", 1, 1)] * 4
        if n == 6:
            return [AffineIdeal("A", 3, 1), AffineIdeal("A", 3, 1)]
        return [AffineIdeal("D", m, 1), AffineIdeal("D", m, 1)]
    if n == 6:
        return [AffineIdeal("C", 4, 1)]
    if n == 7:
        return [AffineIdeal("A", 7, 1)]
    return [AffineIdeal("D", 8, 1)]


def weight_level(ideal, coeffs):
    """(Λ|β) for the highest root β: the level of the weight."""
    d = root_lengths(ideal.family, ideal.n)
    beta = ideal.highest_root
    return sum(Fraction(a) * di * bi for a, di, bi in zip(coeffs, d, beta))


def conformal_weight(ideal, coeffs):
    """h = (Λ|Λ+2ρ) / (2(k + h∨)), exact."""
    if len(coeffs) != ideal.n or any(a < 0 for a in coeffs):
        raise ValueError("not a dominant weight")
    if weight_level(ideal, coeffs) > ideal.level:
        raise ValueError("weight exceeds the level")
    p = ideal.pairing_matrix
    n = ideal.n
    num = Fraction(0)
    for i in range(n):
        for j in range(n):
            num += coeffs[i] * (coeffs[j] + 2) * p[i][j]
    return num / (2 * (ideal.level + ideal.dual_coxeter))


def coweight_pairing(ideal, i, coeffs):
    """⟨Λᵢ^∨, Λ⟩ = Σⱼ Λⱼ·(C⁻¹)ᵢⱼ (i is 1-based)."""
    row = ideal.inv_cartan[i - 1]
    return sum(Fraction(a) * row[j] for j, a in enumerate(coeffs))


def admissible_weights(ideal):
    """All dominant weights of level ≤ k, as coefficient tuples."""
    n, k = ideal.n, ideal.level
    out = []

    def rec(prefix, budget):
        i = len(prefix)
        if i == n:
            out.append(tuple(prefix))
            return
        a = 0
        while True:
            trial = prefix + [a] + [0] * (n - i - 1)
            if weight_level(ideal, trial) > k:
                break
            rec(prefix + [a], budget)
            a += 1

    rec([], k)
    return out


class SimpleCurrentGroup:
    """Abelian group of simple-current modules of one ideal, with the map
    element → dominant weight (kΛⱼ-form) and its inverse."""

    def __init__(self, ideal):
        f, n, k = ideal.family, ideal.n, ideal.level
        self.ideal = ideal
        zero = (0,) * n

        def kw(j):
            return tuple(k if m == j else 0 for m in range(1, n + 1))

        if f == "A":
            self.moduli = (n + 1,)
            self._weights = {(j,): (zero if j == 0 else kw(j))
                             for j in range(n + 1)}
        elif f == "B":
            self.moduli = (2,)
            self._weights = {(0,): zero, (1,): kw(1)}
        elif f == "C":
            self.moduli = (2,)
            self._weights = {(0,): zero, (1,): kw(n)}
        elif f == "D" and n % 2 == 0:
            self.moduli = (2, 2)
            self._weights = {(0, 0): zero, (1, 0): kw(n - 1),
                             (0, 1): kw(n), (1, 1): kw(1)}
        elif f == "D":
            self.moduli = (4,)
            self._weights = {(0,): zero, (1,): kw(n - 1), (2,): kw(1),
                             (3,): kw(n)}
        elif (f, n) == ("E", 6):
            self.moduli = (3,)
            self._weights = {(0,): zero, (1,): kw(1), (2,): kw(5)}
        elif (f, n) == ("E", 7):
            self.moduli = (2,)
            self._weights = {(0,): zero, (1,): kw(1)}
        else:
            raise ValueError(f"no simple currents catalogued for {ideal}")
        self._elements = {w: e for e, w in self._weights.items()}

    def elements(self):
        return sorted(self._weights)

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    @property
    def zero(self):
        return tuple(0 for _ in self.moduli)

    def weight_of(self, elem):
        return self._weights[elem]

    def element_of_weight(self, w):
        """Group element of a simple-current weight, or None."""
        return self._elements.get(tuple(w))


def simple_current_group(ideal):
    return SimpleCurrentGroup(ideal)


class DictionaryRow:
    """One row of a component's correspondence table.

    kind "pair": an untwisted ± pair over glue label `label`; `plus` and
    `minus` are weight tuples (one coefficient tuple per ideal slot).
    kind "single": an unpaired untwisted module (label identified with its
    negative); `plus` holds the weights.  kind "twisted": one twisted-type
    module; `label` is None."""

    def __init__(self, kind, label, plus, minus=None):
        self.kind = kind
        self.label = label
        self.plus = plus
        self.minus = minus


class ComponentDictionary:
    def __init__(self, t, ideals, rows):
        self.type = t
        self.ideals = ideals
        self.rows = rows
        self.groups = [SimpleCurrentGroup(i) for i in ideals]
        self._pairs = {r.label: r for r in rows if r.kind == "pair"}
        zero_minus = self._pairs[0].minus
        self.delta = tuple(g.element_of_weight(w)
                           for g, w in zip(self.groups, zero_minus))

    def pair_elements(self, label):
        """({s⁺ per-slot elements}, {s⁻ …}) of the ± pair at `label`."""
        row = self._pairs[label]
        plus = tuple(g.element_of_weight(w)
                     for g, w in zip(self.groups, row.plus))
        minus = tuple(g.element_of_weight(w)
                      for g, w in zip(self.groups, row.minus))
        return plus, minus

    def pair_labels(self):
        return sorted(self._pairs)

    def untwisted_rows(self):
        return [r for r in self.rows if r.kind != "twisted"]

    def twisted_rows(self):
        return [r for r in self.rows if r.kind == "twisted"]


def _parse_weight(text, n):
    """`0` or `+`-joined terms `c*i` meaning c·Λᵢ."""
    coeffs = [0] * n
    text = text.strip()
    if text == "0":
        return tuple(coeffs)
    for term in text.split("+"):
        c, i = term.strip().split("*")
        idx = int(i)
        if not 1 <= idx <= n:
            raise ValueError(f"weight index {idx} out of range")
        coeffs[idx - 1] += int(c)
    return tuple(coeffs)


def _parse_weights(text, ideals):
    slots = text.split("|")
    if len(slots) != len(ideals):
        raise ValueError("wrong number of ideal slots")
    return tuple(_parse_weight(s, ideal.n) for s, ideal in zip(slots, ideals))


def parse_dictionary_file(path):
    """Parse the correspondence data file.  Grammar (one block per
    component type):

        component <type>
        ideals <F><n>:<level> ...
        u+ <label> : <weights>          # the (μ)⁺ member of a ± pair
        u- <label> : <weights>          # the matching (μ)⁻ member
        u <label> : <weights>           # unpaired untwisted row (ν ~ −ν)
        t : <weights>                   # one twisted-type module
        end

    <weights> is one slot per ideal separated by `|`; each slot is `0` or
    `+`-joined terms `c*i` denoting c·Λᵢ.  Lines starting with `#` and blank
    lines are ignored."""
    tables = {}
    t = ideals = rows = None
    half_pairs = None
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                if line.startswith("component "):
                    t = rd.parse_type(line.split()[1])
                    ideals, rows, half_pairs = None, [], {}
                elif line.startswith("ideals "):
                    ideals = []
                    for tok in line.split()[1:]:
                        name, lvl = tok.split(":")
                        ideals.append(AffineIdeal(name[0], int(name[1:]),
                                                  int(lvl)))
                elif line == "end":
                    if half_pairs:
                        raise ValueError(f"unmatched u+ rows {half_pairs}")
                    tables[t] = ComponentDictionary(t, ideals, rows)
                    t = None
                else:
                    head, _, body = line.partition(":")
                    tok = head.split()
                    w = _parse_weights(body, ideals)
                    if tok[0] == "u+":
                        half_pairs[int(tok[1])] = w
                    elif tok[0] == "u-":
                        label = int(tok[1])
                        rows.append(DictionaryRow("pair", label,
                                                  half_pairs.pop(label), w))
                    elif tok[0] == "u":
                        rows.append(DictionaryRow("single", int(tok[1]), w))
                    elif tok[0] == "t":
                        rows.append(DictionaryRow("twisted", None, w))
                    else:
                        raise ValueError(f"unknown row kind {tok[0]!r}")
            except (IndexError, ValueError, KeyError) as e:
                raise ValueError(f"{path}:{lineno}: {e}") from e
    return tables


def total_weight(ideals, weights):
    return sum(conformal_weight(i, w) for i, w in zip(ideals, weights))


def verify_dictionary(d):
    """The load-time firewall for one component table; raises on failure."""
    t = d.type
    if d.ideals != lie_data(t):
        raise ValueError(f"{t}: ideal list mismatch")
    # completeness: rows biject with the affine side's irreducibles
    total = 1
    for ideal in d.ideals:
        total *= len(admissible_weights(ideal))
    modules = sum(2 if r.kind == "pair" else 1 for r in d.rows)
    if modules != total:
        raise ValueError(f"{t}: {modules} modules for {total} irreducibles")
    seen = set()
    for row in d.rows:
        for w in ([row.plus, row.minus] if row.kind == "pair" else [row.plus]):
            if w in seen:
                raise ValueError(f"{t}: duplicate weight tuple {w}")
            seen.add(w)
            for ideal, slot in zip(d.ideals, w):
                if weight_level(ideal, slot) > ideal.level:
                    raise ValueError(f"{t}: weight {slot} over level")
    # conformal weights: untwisted rows match half the minimal coset norm
    # ((0)⁻ is the norm-2 odd part, h = 1); twisted rows are rank/16 mod 1/2
    for row in d.rows:
        if row.kind == "twisted":
            h = total_weight(d.ideals, row.plus)
            if (h - Fraction(t.n, 16)) % Fraction(1, 2) != 0:
                raise ValueError(f"{t}: twisted row h={h} ≢ rank/16")
            continue
        want = rd.min_coset_norm(t, row.label) / 2
        entries = [(row.plus, want)]
        if row.kind == "pair":
            entries.append((row.minus, Fraction(1) if row.label == 0 else want))
        for w, expect in entries:
            h = total_weight(d.ideals, w)
            if h != expect:
                raise ValueError(f"{t}: row {row.label} h={h} ≠ {expect}")
    # ± rows are exactly the simple currents, pairs differ by δ, and the
    # label → S/⟨δ⟩ assignment is a group homomorphism
    for row in d.rows:
        elems = [g.element_of_weight(w)
                 for g, w in zip(d.groups, row.plus)]
        if row.kind == "pair":
            plus, minus = d.pair_elements(row.label)
            if None in plus or None in minus:
                raise ValueError(f"{t}: pair row {row.label} not simple-current")
            if tuple(g.add(p, dl) for g, p, dl in
                     zip(d.groups, plus, d.delta)) != minus:
                raise ValueError(f"{t}: pair row {row.label} not a δ-shift")
        elif row.kind == "single" and None not in elems:
            raise ValueError(f"{t}: row {row.label} is a simple current "
                             "but not a ± pair")
    labels = d.pair_labels()
    for la in labels:
        for lb in labels:
            lc = rd.label_add(t, la, lb)
            if lc not in d._pairs:
                raise ValueError(f"{t}: ± labels not closed under addition")
            got = set()
            for a in d.pair_elements(la):
                for b in d.pair_elements(lb):
                    got.add(tuple(g.add(x, y)
                                  for g, x, y in zip(d.groups, a, b)))
            if got != set(d.pair_elements(lc)):
                raise ValueError(f"{t}: fusion additivity fails "
                                 f"at {la}+{lb}")


_DICT_CACHE = {}


def load_dictionary(directory=None):
    """type → ComponentDictionary for every component in the data file,
    firewall-verified."""
    from . import niemeier as nm
    directory = directory or nm.data_dir()
    key = directory
    if key not in _DICT_CACHE:
        path = os.path.join(directory, "dictionary.txt")
        tables = parse_dictionary_file(path)
        for d in tables.values():
            verify_dictionary(d)
        _DICT_CACHE[key] = tables
    return _DICT_CACHE[key]


def dictionary(t, directory=None):
    tables = load_dictionary(directory)
    if t not in tables:
        raise ValueError(f"no correspondence table for {t}")
    return tables[t]
