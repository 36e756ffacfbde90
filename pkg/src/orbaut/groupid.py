"""Permutation-group name recognition against a small catalog.

Names are matched by order plus a structural witness computed from
permutation generators (orbit sizes, transitivity degree) or from abelian
invariant factors; a name is reported as exact only when such a witness
confirms it.  Anything unrecognized falls back to "group of order n" so the
raw order is never hidden behind a guessed name.
"""

from math import factorial


class GroupName:
    def __init__(self, name, confidence, order):
        self.name = name
        self.confidence = confidence    # "exact" | "order-only"
        self.order = order

    def __repr__(self):
        return f"GroupName({self.name!r}, {self.confidence}, {self.order})"

    def __eq__(self, other):
        return (isinstance(other, GroupName) and self.name == other.name
                and self.confidence == other.confidence
                and self.order == other.order)


def _normalize_gens(perm_gens):
    """Generators as point → image dicts over a common point set."""
    points = set()
    for g in perm_gens:
        points.update(g.keys())
    ident = {p: p for p in points}
    return [{**ident, **g} for g in perm_gens], sorted(points)


def orbits(perm_gens):
    """Orbit partition of the permuted point set, as sorted tuples."""
    gens, points = _normalize_gens(perm_gens)
    seen = set()
    out = []
    for p in points:
        if p in seen:
            continue
        orb = {p}
        frontier = [p]
        while frontier:
            q = frontier.pop()
            for g in gens:
                r = g[q]
                if r not in orb:
                    orb.add(r)
                    frontier.append(r)
        seen |= orb
        out.append(tuple(sorted(orb)))
    return out


def transitivity_degree(perm_gens, cap=5):
    """Largest k ≤ cap with the generated group k-transitive on its single
    orbit (0 if the action is not transitive), by direct orbit computation
    on k-tuples."""
    gens, points = _normalize_gens(perm_gens)
    orbs = orbits(perm_gens)
    if len(orbs) != 1:
        return 0
    n = len(points)
    k = 0
    while k < cap and k < n:
        k += 1
        start = tuple(points[:k])
        orb = {start}
        frontier = [start]
        target = 1
        for i in range(k):
            target *= n - i
        while frontier and len(orb) < target:
            t = frontier.pop()
            for g in gens:
                img = tuple(g[p] for p in t)
                if img not in orb:
                    orb.add(img)
                    frontier.append(img)
        if len(orb) < target:
            return k - 1
    return k


def abelian_name(invariant_factors):
    if not invariant_factors:
        return "1"
    parts = []
    prev = None
    count = 0
    for d in invariant_factors:
        if d == prev:
            count += 1
        else:
            if prev is not None:
                parts.append(f"Z{prev}" + (f"^{count}" if count > 1 else ""))
            prev, count = d, 1
    parts.append(f"Z{prev}" + (f"^{count}" if count > 1 else ""))
    return "x".join(parts)


def recognize(order, perm_gens=None, invariant_factors=None):
    """Best catalog name for a group of the given order.

    perm_gens: optional permutation generators (point → image dicts) of a
    faithful action; invariant_factors: optional abelian invariants.  The
    structural witnesses used are: abelian invariants (canonical), orbit
    sizes of the action, and transitivity degree on a single orbit."""
    if order == 1:
        return GroupName("1", "exact", 1)
    if invariant_factors is not None:
        facts = list(invariant_factors)
        prod = 1
        for d in facts:
            prod *= d
        if prod == order:
            return GroupName(abelian_name(facts), "exact", order)
    if perm_gens:
        orbs = orbits(perm_gens)
        moved = [o for o in orbs if len(o) > 1]
        sizes = sorted(len(o) for o in moved)
        # sporadic / affine entries first: order + high transitivity
        if order == 95040 and sizes == [12]:
            if transitivity_degree(perm_gens, cap=5) >= 5:
                return GroupName("M12", "exact", order)
        if order == 322560 and sizes == [16]:
            if transitivity_degree(perm_gens, cap=3) >= 3:
                return GroupName("Z2^4:L4(2)", "exact", order)
        if order == 1344 and sizes == [8]:
            if transitivity_degree(perm_gens, cap=3) >= 3:
                return GroupName("Z2^3:L3(2)", "exact", order)
        if order == 168 and sizes == [7]:
            if transitivity_degree(perm_gens, cap=2) >= 2:
                return GroupName("L3(2)", "exact", order)
        if order == 20160 and sizes == [15]:
            if transitivity_degree(perm_gens, cap=2) >= 2:
                return GroupName("L4(2)", "exact", order)
        if order == 96 and sizes == [4, 4]:
            return GroupName("Z2^4:Sym3", "exact", order)
        # direct products of full symmetric groups on the moved orbits
        prod = 1
        for s in sizes:
            prod *= factorial(s)
        if sizes and prod == order:
            return GroupName("x".join(f"Sym{s}" for s in sizes),
                             "exact", order)
        if len(sizes) == 1:
            n = sizes[0]
            if order == factorial(n) // 2 and n >= 4:
                return GroupName(f"Alt{n}", "exact", order)
            if order == 120 and n == 6:
                # the transitive order-120 subgroups of Sym6 are the two
                # conjugacy classes of Sym5 (point and cosets actions)
                return GroupName("Sym5", "exact", order)
    return GroupName(f"group of order {order}", "order-only", order)
