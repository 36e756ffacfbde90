"""Per-module oracle tests: each checks a module's results against an
independent computation (brute force, closed formulas, or classical
constants)."""

from fractions import Fraction
from itertools import permutations, product
from math import factorial

import pytest

from orbaut import abelian as ab
from orbaut import affine as af
from orbaut import codeaut as ca
from orbaut import exactmat as em
from orbaut import groupid as gid
from orbaut import lattice as lat
from orbaut import niemeier as nm
from orbaut import orbifold as ob
from orbaut import rootdata as rd


# ---------------------------------------------------------------- exactmat

def test_det_inverse_roundtrip():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(2)]]
    assert em.det(a) == 3
    assert em.mat_mul(a, em.inverse(a)) == em.identity(2)


def test_hnf_preserves_row_span():
    rows = [[2, 0], [0, 2], [1, 1]]
    h = em.hnf_basis(rows)
    # index-2 sublattice of Z²: determinant of the HNF basis is ±2
    assert len(h) == 2 and abs(em.det(h)) == 2


def test_snf_diagonal_of_cartan():
    # discriminant invariants: det(Cartan(An)) = n+1, cyclic
    for n in (2, 3, 4):
        d = em.snf_diagonal(rd.cartan_matrix(rd.parse_type(f"A{n}")))
        nontrivial = [x for x in d if x != 1]
        assert nontrivial == [n + 1]


# ----------------------------------------------------------------- abelian

def test_span_order_bruteforce():
    G = ab.AbelianGroup((4, 4))
    H = ab.span(G, [(1, 2)])
    brute = {(0, 0)}
    while True:
        new = {((a + 1) % 4, (b + 2) % 4) for a, b in brute} - brute
        if not new:
            break
        brute |= new
    assert set(map(tuple, H.elements)) == brute
    assert H.order == len(brute)


def test_char_group_structure_known():
    # rows of characters with values in Q/Z: ⟨1/4⟩ ⊕ ⟨1/2⟩ ≅ Z4 × Z2
    rows = [[Fraction(1, 4), 0], [0, Fraction(1, 2)]]
    assert ab.char_group_structure(rows) == [2, 4]


def test_subgroup_invariant_factors():
    assert ab.subgroup_invariant_factors((8,), [(2,)]) == [4]
    assert ab.subgroup_invariant_factors((2, 2, 2), [(1, 1, 0),
                                                     (0, 1, 1)]) == [2, 2]


# ---------------------------------------------------------------- rootdata

def test_label_group_matches_discriminant_order():
    expected = {"A5": 6, "D4": 4, "D5": 4, "D6": 4, "E6": 3, "E7": 2}
    for s, want in expected.items():
        assert len(rd.labels(rd.parse_type(s))) == want


def test_label_arithmetic_closure():
    t = rd.parse_type("D5")
    for a in rd.labels(t):
        assert rd.label_add(t, a, rd.label_neg(t, a)) == 0
    # D_odd glue group is cyclic of order 4 generated by a spinor class
    gen = 1
    seen, cur = set(), 0
    for _ in range(4):
        seen.add(cur)
        cur = rd.label_add(t, cur, gen)
    assert len(seen) == 4


def test_min_coset_norm_values():
    # classical discriminant minima: An class k has min norm k(n+1−k)/(n+1)
    t = rd.parse_type("A3")
    assert rd.min_coset_norm(t, 1) == Fraction(3, 4)
    assert rd.min_coset_norm(t, 2) == 1
    d = rd.parse_type("D6")
    assert rd.min_coset_norm(d, 2) == 1          # vector class
    assert rd.min_coset_norm(d, 1) == Fraction(6, 4)  # spinor class


def test_root_counts():
    for s, want in (("A4", 20), ("D5", 40), ("E6", 72), ("E7", 126)):
        assert rd.root_count(rd.parse_type(s)) == want


def test_minus_one_in_weyl_rule():
    assert rd.minus_one_in_weyl(rd.parse_type("A1"))
    assert rd.minus_one_in_weyl(rd.parse_type("D4"))
    assert rd.minus_one_in_weyl(rd.parse_type("E7"))
    assert not rd.minus_one_in_weyl(rd.parse_type("A2"))
    assert not rd.minus_one_in_weyl(rd.parse_type("D5"))
    assert not rd.minus_one_in_weyl(rd.parse_type("E6"))


# ----------------------------------------------------------------- lattice

def test_short_vectors_a2():
    t = rd.parse_type("A2")
    L = lat.Lattice(em.identity(2), rd.cartan_matrix(t))
    assert len(lat.roots(L)) == 6
    assert len(lat.short_vectors(L, 6)) == 12  # 6 roots + 6 of norm 6


def test_quotient_and_dual():
    t = rd.parse_type("A3")
    L = lat.Lattice(em.identity(3), rd.cartan_matrix(t))
    disc = lat.discriminant_group(L)
    assert disc.order == 4


# ---------------------------------------------------------------- niemeier

def test_all_records_build(capsys):
    lattices = nm.all_lattices()
    assert len(lattices) == 24
    assert not nm.all_lattices()["Leech"].components


def test_glue_code_order_squares_to_discriminant():
    def disc(t):
        if t.family == "A":
            return t.n + 1
        return 4 if t.family == "D" else {6: 3, 7: 2, 8: 1}[t.n]

    for N in nm.all_lattices().values():
        if not N.components:
            continue
        total = 1
        for t in N.components:
            total *= disc(t)
        assert len(N.glue_code) ** 2 == total, N.name


def test_mutated_glue_rejected():
    rec = nm.load_glue_data()["A17E7"]
    bad = nm.GlueRecord(rec.name, rec.components, [(1, 1)])
    with pytest.raises(ValueError):
        nm.build(bad)


# ------------------------------------------------------------------ affine

def test_fixed_point_subalgebras():
    assert repr(af.lie_data(rd.parse_type("A2"))[0]) == "A1,4"
    assert [repr(i) for i in af.lie_data(rd.parse_type("A5"))] == ["A3,2"]
    assert [repr(i) for i in af.lie_data(rd.parse_type("D4"))] \
        == ["A1,1"] * 4
    assert repr(af.lie_data(rd.parse_type("A24"))[0]) == "B12,2"


def test_simple_current_group_orders():
    for s, want in (("A1,1", 2), ("A3,2", 4), ("D5,2", 4), ("D8,2", 4),
                    ("B4,1", 2), ("C4,1", 2), ("A7,1", 8)):
        fam, rest = s[0], s[1:]
        n, level = rest.split(",")
        ideal = af.AffineIdeal(fam, int(n), int(level))
        assert len(af.simple_current_group(ideal).elements()) == want


def test_conformal_weight_samples():
    # affine weight h(Λ) = (Λ, Λ+2ρ)/(2(k+h∨)); A1 level 1, Λ1 → 1/4
    a11 = af.AffineIdeal("A", 1, 1)
    assert af.conformal_weight(a11, (1,)) == Fraction(1, 4)
    a12 = af.AffineIdeal("A", 1, 2)
    assert af.conformal_weight(a12, (2,)) == Fraction(1, 2)


def test_dictionary_firewall_rejects_corruption():
    import copy
    d = af.load_dictionary()[rd.parse_type("A24")]
    idx, row = next((i, r) for i, r in enumerate(d.rows)
                    if any(any(w) for w in r.plus))
    bad = copy.copy(d)
    bad.rows = list(d.rows)
    corrupt = copy.copy(row)
    corrupt.plus = tuple(tuple(0 for _ in w) for w in row.plus)
    bad.rows[idx] = corrupt
    with pytest.raises(ValueError):
        af.verify_dictionary(bad)


# ----------------------------------------------------------------- codeaut

def _brute_stabilizer(amb, code):
    count = 0
    locs = [s[2] for s in amb.slots]
    kinds = amb.kinds()
    for perm in permutations(range(amb.n)):
        if any(kinds[i] != kinds[perm[i]] for i in range(amb.n)):
            continue
        for combo in product(*locs):
            g = ca.AmbientSymmetry(perm, combo)
            if g.apply_code(code) == code:
                count += 1
    return count


def test_stabilizer_vs_bruteforce():
    neg = {0: 0, 1: 2, 2: 1}
    amb = ca.AmbientAction([("t", [0, 1, 2], [neg])] * 3)
    code = {(0, 0, 0), (1, 1, 1), (2, 2, 2), (1, 2, 0), (2, 0, 1),
            (0, 1, 2), (2, 1, 0), (1, 0, 2), (0, 2, 1)}
    res = ca.stabilizer(amb, code)
    assert res.order == _brute_stabilizer(amb, code)


def test_split_counts_kernel_and_image():
    amb = ca.AmbientAction([("b", [0, 1], [])] * 4)
    # even-weight code of length 4: Aut₂ = Sym4, Aut₁ trivial
    code = {w for w in product((0, 1), repeat=4) if sum(w) % 2 == 0}
    res = ca.stabilizer(amb, code)
    a1, a2 = ca.split_aut1_aut2(res)
    assert a1["order"] == 1 and a2["order"] == 24


def test_equivalence_finds_permutation():
    amb = ca.AmbientAction([("b", [0, 1], [])] * 3)
    c1 = {(0, 0, 0), (1, 1, 0)}
    c2 = {(0, 0, 0), (0, 1, 1)}
    g = ca.equivalence(amb, c1, c2)
    assert g is not None and g.apply_code(c1) == c2
    c3 = {(0, 0, 0), (1, 1, 1)}
    assert ca.equivalence(amb, c1, c3) is None


def test_permutation_group_order():
    cycle = {0: 1, 1: 2, 2: 3, 3: 4, 4: 0}
    swap = {0: 1, 1: 0, 2: 2, 3: 3, 4: 4}
    assert ca.permutation_group_order([cycle, swap]) == factorial(5)


# ----------------------------------------------------------------- groupid

def test_recognize_catalog():
    sym3 = [{0: 1, 1: 0, 2: 2}, {0: 1, 1: 2, 2: 0}]
    assert gid.recognize(6, perm_gens=sym3).name == "Sym3"
    alt4 = [{0: 1, 1: 0, 2: 3, 3: 2}, {0: 0, 1: 2, 2: 3, 3: 1}]
    assert gid.recognize(12, perm_gens=alt4).name == "Alt4"
    got = gid.recognize(32, invariant_factors=[2, 4, 4])
    assert got.name == "Z2xZ4^2" and got.confidence == "exact"
    fallback = gid.recognize(60)
    assert fallback.confidence == "order-only"


def test_recognize_direct_product():
    gens = [{0: 1, 1: 0, 2: 2, 3: 3, 4: 4, 5: 5},
            {0: 0, 1: 1, 2: 3, 3: 2, 4: 4, 5: 5},
            {0: 0, 1: 1, 2: 3, 3: 4, 4: 5, 5: 2}]
    assert gid.recognize(48, perm_gens=gens).name == "Sym2xSym4"


# ---------------------------------------------------------------- orbifold

def test_conditions_and_dispatch_sets():
    lattices = nm.all_lattices()
    for name in ob.THE_14:
        c = ob.conditions(lattices[name])
        assert c.extra_automorphism == (name in ob.EXTRA_AUTOMORPHISM)
    with pytest.raises(ValueError, match="lattice VOA or moonshine"):
        ob.require_one_of_14(lattices["D24"])
    with pytest.raises(ValueError, match="moonshine"):
        ob.require_one_of_14(lattices["Leech"])


def test_fu_witness_rejects_nonglue():
    N = nm.all_lattices()["A17E7"]
    with pytest.raises(ValueError):
        ob.fu_witness(N, (1, 1))


def test_witness_zero_is_identity():
    N = nm.all_lattices()["A17E7"]
    w = ob.fu_witness(N, (0, 0))
    assert w.is_identity()


def test_weight_inventory_untwisted_contains_vacuum():
    v1 = ob.v1_structure(nm.all_lattices()["A24"])
    inv = ob.weight_inventory(v1)
    zero = tuple((0,) * s.ideal.n for s in v1.slots)
    assert zero in inv.untwisted
    for w in inv.twisted:
        assert af.total_weight([s.ideal for s in v1.slots], w).denominator \
            == 1


def test_table_row_against_golden():
    N = nm.all_lattices()["A8^3"]
    row = ob.table1_row(N)
    golden = ob.load_golden_table()["A8^3"]
    assert row.mismatches(golden) == []


# --------------------------------------------------------------------- cli

def test_cli_list(capsys):
    from orbaut import cli
    assert cli.main(["list"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 24
    assert sum("orbifold" in line for line in out) == 14


def test_cli_compute_rejects_special_orbifolds(capsys):
    from orbaut import cli
    assert cli.main(["compute", "Leech"]) == 2
    assert "moonshine" in capsys.readouterr().err
    assert cli.main(["compute", "D4^6"]) == 2
    assert "lattice VOA or moonshine" in capsys.readouterr().err


def test_cli_compute_deterministic(capsys):
    from orbaut import cli
    assert cli.main(["--json", "compute", "A24", "--validate"]) == 0
    first = capsys.readouterr().out
    assert cli.main(["--json", "compute", "A24", "--validate"]) == 0
    assert capsys.readouterr().out == first
    assert '"validation": []' in first
