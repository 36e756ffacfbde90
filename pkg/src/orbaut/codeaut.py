"""Backtracking stabilizer engine for codes in labeled slot products.

The ambient group of a product of labeled slots is (∏ local groups) ⋊
(permutations of equal-kind slots); an element (π, (γᵢ)) sends a tuple m to
the tuple whose π(i)-th entry is γᵢ(mᵢ).  Given a code (set of tuples), the
engine computes its full setwise stabilizer by depth-first slot assignment
with multiset-projection pruning, organized as an orbit–stabilizer chain on
slots so that the number of explored elements stays proportional to the
number of generators, not the group order.
"""

from collections import Counter
from itertools import product


class BudgetExceeded(Exception):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class AmbientAction:
    """slots: list of (kind, labels, local_group) where local_group is a list
    of dicts label→label forming a group containing the identity."""

    def __init__(self, slots):
        self.slots = []
        for kind, labels, local in slots:
            labels = list(labels)
            local = [dict(g) for g in local]
            ident = {l: l for l in labels}
            if ident not in local:
                local = [ident] + local
            self.slots.append((kind, labels, _close_group(local, labels)))
        self.n = len(self.slots)

    def kinds(self):
        return [k for k, _, _ in self.slots]


def _close_group(gens, labels):
    """Closure of a set of label bijections under composition."""
    ident = tuple(sorted({l: l for l in labels}.items()))

    def key(g):
        return tuple(sorted(g.items()))

    seen = {key(g): dict(g) for g in gens}
    frontier = list(seen.values())
    while frontier:
        a = frontier.pop()
        for b in list(seen.values()):
            c = {l: a[b[l]] for l in labels}
            k = key(c)
            if k not in seen:
                seen[k] = c
                frontier.append(c)
    return list(seen.values())


class AmbientSymmetry:
    """perm: tuple with perm[i] = image slot of slot i; locals: tuple of
    per-source-slot label maps."""

    __slots__ = ("perm", "locals")

    def __init__(self, perm, locals_):
        self.perm = tuple(perm)
        self.locals = tuple(dict(g) for g in locals_)

    def apply(self, word):
        out = [None] * len(word)
        for i, v in enumerate(word):
            out[self.perm[i]] = self.locals[i][v]
        return tuple(out)

    def apply_code(self, code):
        return {self.apply(w) for w in code}

    def is_identity(self):
        return (all(p == i for i, p in enumerate(self.perm))
                and all(g[l] == l for g in self.locals for l in g))

    def point_perm(self, amb):
        """The induced permutation of the point set ⋃ᵢ {i}×labelsᵢ, as a dict."""
        out = {}
        for i, (_, labels, _) in enumerate(amb.slots):
            for l in labels:
                out[(i, l)] = (self.perm[i], self.locals[i][l])
        return out

    def slot_perm(self):
        return self.perm

    def __repr__(self):
        return f"AmbientSymmetry(perm={self.perm})"


class StabilizerResult:
    def __init__(self, amb, generators, order, aut1_elements, nodes):
        self.amb = amb
        self.generators = generators
        self.order = order
        self.aut1_elements = aut1_elements
        self.nodes = nodes


def _slot_profile(code, i):
    return Counter(w[i] for w in code)


def _static_order(amb, code):
    """Assign rarest-profile slots first: fewer compatible targets, more
    pruning power early."""
    profiles = [tuple(sorted(_slot_profile(code, i).values())) for i in range(amb.n)]
    freq = Counter(profiles)
    return sorted(range(amb.n), key=lambda i: (freq[profiles[i]], profiles[i], i))


def _compat_table(amb, code):
    """feas[(i, j)] = list of γ ∈ local(i) with γ(profile_i) == profile_j."""
    profiles = [_slot_profile(code, i) for i in range(amb.n)]
    feas = {}
    for i, (ki, labels_i, local_i) in enumerate(amb.slots):
        for j, (kj, labels_j, _) in enumerate(amb.slots):
            if ki != kj:
                continue
            good = [g for g in local_i
                    if Counter(g[v] for v in profiles[i].elements()) == profiles[j]]
            if good:
                feas[(i, j)] = good
    return feas


def _label_classes(amb):
    """class_of[i][label]: canonical id of the label's orbit under the local
    group, shared across slots of one kind (slots of equal kind are built
    with equal label sets and local groups).  Ambient elements map a letter
    to a letter of the same class, so the multiset of (kind, class) over the
    slots of a word is invariant under every ambient symmetry."""
    by_kind = {}
    out = []
    for kind, labels, local in amb.slots:
        key = (kind, tuple(sorted(labels)),
               tuple(sorted(tuple(sorted(g.items())) for g in local)))
        if key not in by_kind:
            classes = {}
            for l in labels:
                orbit = min(g[l] for g in local)
                classes[l] = orbit
            by_kind[key] = classes
        out.append((kind, by_kind[key]))
    return out


def _word_invariant(amb, classes, word):
    return tuple(sorted((kind, cls[v])
                        for (kind, cls), v in zip(classes, word)))


def _dfs(amb, src_code, tgt_code, order, forced, budget, collect_all):
    """Yield AmbientSymmetry elements mapping src_code onto tgt_code.

    `order` is the slot assignment order; `forced[k]`, if not None, pins the
    target slot of order[k].  With collect_all false, stop after the first
    element.  Returns (elements, nodes_used)."""
    n = amb.n
    src = list(src_code)
    tgt = list(tgt_code)
    if len(src) != len(tgt):
        return [], 0
    feas = _compat_table_pair(amb, src, tgt)
    classes = _label_classes(amb)
    skeys = [(_word_invariant(amb, classes, w),) for w in src]
    tkeys = [(_word_invariant(amb, classes, w),) for w in tgt]
    if Counter(skeys) != Counter(tkeys):
        return [], 0
    found = []
    nodes = [0]
    assignment = [None] * n   # order position -> (target slot, γ)
    used_targets = set()

    def descend(k, scnt, tcnt):
        if nodes[0] > budget:
            raise BudgetExceeded("node budget exceeded", partial=found[:])
        if k == len(order):
            perm = [None] * n
            locals_ = [None] * n
            for pos, i in enumerate(order):
                j, g = assignment[pos]
                perm[i] = j
                locals_[i] = g
            found.append(AmbientSymmetry(perm, locals_))
            return not collect_all
        i = order[k]
        targets = [forced[k]] if forced[k] is not None else \
            [j for j in range(n) if j not in used_targets]
        for j in targets:
            if j in used_targets or (i, j) not in feas:
                continue
            for g in feas[(i, j)]:
                nodes[0] += 1
                new_skeys = {}
                new_scnt = Counter()
                for w_idx, w in enumerate(src):
                    key = skeys[w_idx] + (g[w[i]],)
                    new_skeys[w_idx] = key
                    new_scnt[key] += 1
                new_tcnt = Counter()
                new_tkeys = {}
                for w_idx, w in enumerate(tgt):
                    key = tkeys[w_idx] + (w[j],)
                    new_tkeys[w_idx] = key
                    new_tcnt[key] += 1
                if new_scnt != new_tcnt:
                    continue
                old_sk = [skeys[x] for x in range(len(src))]
                old_tk = [tkeys[x] for x in range(len(tgt))]
                for x in range(len(src)):
                    skeys[x] = new_skeys[x]
                for x in range(len(tgt)):
                    tkeys[x] = new_tkeys[x]
                assignment[k] = (j, g)
                used_targets.add(j)
                stop = descend(k + 1, new_scnt, new_tcnt)
                used_targets.discard(j)
                assignment[k] = None
                for x in range(len(src)):
                    skeys[x] = old_sk[x]
                for x in range(len(tgt)):
                    tkeys[x] = old_tk[x]
                if stop:
                    return True
        return False

    descend(0, Counter({(): len(src)}), Counter({(): len(tgt)}))
    return found, nodes[0]


def _compat_table_pair(amb, src, tgt):
    sprof = [_slot_profile(src, i) for i in range(amb.n)]
    tprof = [_slot_profile(tgt, j) for j in range(amb.n)]
    feas = {}
    for i, (ki, _, local_i) in enumerate(amb.slots):
        for j, (kj, _, _) in enumerate(amb.slots):
            if ki != kj:
                continue
            good = [g for g in local_i
                    if Counter(g[v] for v in sprof[i].elements()) == tprof[j]]
            if good:
                feas[(i, j)] = good
    return feas


DEFAULT_BUDGET = 10 ** 9


def stabilizer(amb, code, budget=DEFAULT_BUDGET):
    """Full setwise stabilizer of `code` in the ambient group."""
    code = set(code)
    if not code:
        raise ValueError("empty code")
    order_slots = _static_order(amb, code)
    nodes_total = 0

    # Aut₁ part: trivial slot permutation, all local combinations
    forced_id = [order_slots[k] for k in range(amb.n)]
    aut1, nodes = _dfs(amb, code, code, order_slots, forced_id, budget, True)
    nodes_total += nodes

    # orbit–stabilizer chain on slots
    group_order = len(aut1)
    generators = []
    for k in range(amb.n):
        i = order_slots[k]
        orbit = 1
        forced = [order_slots[l] if l < k else None for l in range(amb.n)]
        for j in range(amb.n):
            if j == i or j in order_slots[:k]:
                continue
            forced_k = forced[:]
            forced_k[k] = j
            elems, nodes = _dfs(amb, code, code, order_slots, forced_k,
                                budget - nodes_total, False)
            nodes_total += nodes
            if elems:
                orbit += 1
                generators.append(elems[0])
        group_order *= orbit
    # a small generating set for Aut₁ (drop products already generated)
    aut1_gens = _reduce_gens(amb, aut1)
    generators = aut1_gens + generators
    # soundness recheck outside the search
    for g in generators:
        if g.apply_code(code) != code:
            raise AssertionError("generator fails to stabilize the code")
    # independent order verification on the point action
    points_order = permutation_group_order(
        [g.point_perm(amb) for g in generators])
    if points_order != group_order:
        raise AssertionError(
            f"order mismatch: chain {group_order}, sift {points_order}")
    return StabilizerResult(amb, generators, group_order, aut1, nodes_total)


def _reduce_gens(amb, elements):
    gens = []
    cur = 1
    for e in elements:
        if e.is_identity():
            continue
        trial = gens + [e]
        o = permutation_group_order([g.point_perm(amb) for g in trial])
        if o > cur:
            gens.append(e)
            cur = o
        if cur == len(elements):
            break
    return gens


def split_aut1_aut2(res):
    """(Aut₁ data, Aut₂ data): the local kernel and the slot-permutation image."""
    aut1_order = len(res.aut1_elements)
    perm_gens = [g.slot_perm() for g in res.generators]
    n = res.amb.n
    aut2_order = permutation_group_order(
        [{i: p[i] for i in range(n)} for p in perm_gens])
    assert aut1_order * aut2_order == res.order
    return ({"order": aut1_order, "elements": res.aut1_elements},
            {"order": aut2_order,
             "perm_gens": sorted(set(p for p in perm_gens
                                     if any(p[i] != i for i in range(n))))})


def equivalence(amb, code1, code2, budget=DEFAULT_BUDGET):
    """An ambient element mapping code1 onto code2, or None."""
    code1, code2 = set(code1), set(code2)
    order_slots = _static_order(amb, code1)
    forced = [None] * amb.n
    elems, _ = _dfs(amb, code1, code2, order_slots, forced, budget, False)
    if not elems:
        return None
    g = elems[0]
    assert g.apply_code(code1) == code2
    return g


def permutation_group_order(gen_dicts):
    """Order of the group generated by permutations given as dicts, via a
    Schreier–Sims stabilizer chain (verify-and-repair until stable)."""
    points = set()
    for g in gen_dicts:
        points.update(g.keys())
    points = sorted(points)
    gens = [g for g in gen_dicts if any(g[p] != p for p in g)]
    if not gens:
        return 1
    ident = {p: p for p in points}
    gens = [{**ident, **g} for g in gens]

    def compose(a, b):
        return {p: a[b[p]] for p in points}

    def invert(a):
        return {v: k for k, v in a.items()}

    base = []          # base points b₀, b₁, …
    strong = []        # strong generators

    def level_of(g):
        """Largest k with g fixing b₀..b_{k−1}."""
        for k, b in enumerate(base):
            if g[b] != b:
                return k
        return len(base)

    def ensure_base_for(g):
        if level_of(g) == len(base) and any(g[p] != p for p in points):
            for p in points:
                if g[p] != p:
                    base.append(p)
                    return

    for g in gens:
        ensure_base_for(g)
        strong.append(g)

    def sift(g, transversals, start):
        for j in range(start, len(base)):
            img = g[base[j]]
            if img not in transversals[j]:
                return g
            g = compose(invert(transversals[j][img]), g)
        return g

    while True:
        transversals = []
        for k, b in enumerate(base):
            acting = [g for g in strong if level_of(g) >= k]
            tr = {b: ident}
            frontier = [b]
            while frontier:
                p = frontier.pop()
                for g in acting:
                    q = g[p]
                    if q not in tr:
                        tr[q] = compose(g, tr[p])
                        frontier.append(q)
            transversals.append(tr)
        residue = None
        for k, b in enumerate(base):
            acting = [g for g in strong if level_of(g) >= k]
            tr = transversals[k]
            for p, t in tr.items():
                for g in acting:
                    sg = sift(compose(invert(tr[g[p]]), compose(g, t)),
                              transversals, k + 1)
                    if any(sg[q] != q for q in points):
                        residue = sg
                        break
                if residue:
                    break
            if residue:
                break
        if residue is None:
            order = 1
            for tr in transversals:
                order *= len(tr)
            return order
        ensure_base_for(residue)
        strong.append(residue)
