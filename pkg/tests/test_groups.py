import itertools

import pytest

from e2top.errors import GroupTooLarge, InvalidInput
from e2top.groups import (
    abelian_subgroups,
    center,
    centralizer,
    check_group_axioms,
    commutator,
    commutator_subgroup,
    conjugacy_classes,
    cycle_string,
    generate_subgroup,
    group_from_generators,
    is_abelian,
    is_subgroup,
    is_transitively_commutative,
    maximal_abelian_subgroups,
    parse_cycles,
    read_group_file,
)

from conftest import named
from oracles import (
    abelian_subgroups_bf,
    center_bf,
    commutator_subgroup_bf,
    naive_closure,
    perm_mul,
    tc_bf,
)
from zoo import zoo

Q8_GENS = ["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]
SMALL = [G for G in zoo(16)]


def test_parse_cycles_and_back():
    assert parse_cycles("(1 2 3)", 4) == (1, 2, 0, 3)
    assert parse_cycles("(1 2)(3 4)", 4) == (1, 0, 3, 2)
    assert parse_cycles("()", 3) == (0, 1, 2)
    assert cycle_string((1, 0, 3, 2)) == "(1,2)(3,4)"
    assert cycle_string((0, 1, 2)) == "()"


@pytest.mark.parametrize("bad", ["(1 2", "(1 5)", "(1 1)", "(a b)", "(1 2)(2 3)", "(0 1)"])
def test_parse_cycles_rejects(bad):
    with pytest.raises(InvalidInput):
        parse_cycles(bad, 4)


def test_s3_from_generators_matches_naive_closure():
    G = group_from_generators(["(1 2)", "(1 2 3)"], 3)
    assert G.order == 6
    a, b = parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)
    assert set(G.permutations) == naive_closure([a, b], perm_mul, (0, 1, 2))


def test_trivial_group():
    G = group_from_generators([], 1)
    assert G.order == 1 and G.table == [[0]]


def test_table_is_composition_of_permutations():
    for name in ("S3", "D4", "A4", "S4"):
        G = named(name)
        P = G.permutations
        for a in range(G.order):
            for b in range(G.order):
                assert P[G.table[a][b]] == perm_mul(P[a], P[b])


def test_right_action_convention():
    G = named("S3")
    a, b = G.index_of("(1,2)"), G.index_of("(1,3)")
    # apply (1 2) first, then (1 3): 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
    assert G.labels[G.mul(a, b)] == "(1,2,3)"


def test_identity_first_and_bfs_order():
    G = named("S4")
    assert G.labels[0] == "()"
    assert G.labels[1:3] == ["(1,2)", "(1,2,3,4)"]


def test_deterministic_ordering():
    gens = ["(1 2 3 4)", "(1 3)"]
    G1 = group_from_generators(gens, 4)
    G2 = group_from_generators(gens, 4)
    assert G1.table == G2.table and G1.labels == G2.labels


def test_order_cap():
    with pytest.raises(GroupTooLarge):
        group_from_generators(["(1 2)", "(1 2 3 4 5 6 7)"], 7)
    assert group_from_generators(["(1 2)", "(1 2 3 4 5 6)"], 6, cap=720).order == 720


def test_q8_generators():
    G = group_from_generators(Q8_GENS, 8)
    assert G.order == 8
    assert len(center(G)) == 2
    assert sum(1 for g in range(8) if G.element_order(g) == 2) == 1


def test_misprinted_q8_generators_give_order_32():
    # with (5 6)(7 8) in place of the 4-cycle the closure is not Q8
    G = group_from_generators(["(1 2 3 4)(5 6)(7 8)", "(1 5 3 7)(2 8 4 6)"], 8)
    assert G.order == 32


def test_group_file(tmp_path):
    p = tmp_path / "q8.txt"
    p.write_text("degree 8\n" + "\n".join(Q8_GENS) + "\n")
    G = read_group_file(p)
    assert G.order == 8 and not is_abelian(G)
    p.write_text("deg 8\n(1 2)\n")
    with pytest.raises(InvalidInput):
        read_group_file(p)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_axioms(G):
    check_group_axioms(G)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_center_and_derived_subgroup_against_brute_force(G):
    assert set(center(G).members) == center_bf(G)
    assert set(commutator_subgroup(G).members) == commutator_subgroup_bf(G)
    assert (len(commutator_subgroup(G)) == 1) == is_abelian(G)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_abelian_subgroups_against_subset_scan(G):
    got = [frozenset(A.members) for A in abelian_subgroups(G)]
    assert got == abelian_subgroups_bf(G)


@pytest.mark.parametrize("G", zoo(24), ids=lambda G: G.name)
def test_tc_against_triple_scan(G):
    assert is_transitively_commutative(G) == tc_bf(G)


def test_commutator_examples():
    S3 = named("S3")
    c = commutator(S3, S3.index_of("(1,2)"), S3.index_of("(1,3)"))
    assert S3.labels[c] == "(1,3,2)"
    Q8 = named("Q8")
    assert Q8.labels[commutator(Q8, Q8.index_of("i"), Q8.index_of("j"))] == "-1"
    C6 = named("C6")
    assert all(commutator(C6, g, h) == 0 for g in range(6) for h in range(6))


def test_commutator_vanishes_iff_commuting():
    for G in (named("S4"), named("Q16")):
        for g, h in itertools.product(range(G.order), repeat=2):
            assert (commutator(G, g, h) == 0) == (G.mul(g, h) == G.mul(h, g))


@pytest.mark.parametrize("name, order", [("C6", 1), ("S3", 3), ("Q8", 2), ("S4", 12), ("A4", 4)])
def test_commutator_subgroup_orders(name, order):
    assert len(commutator_subgroup(named(name))) == order


def test_q8_commutator_subgroup_is_plus_minus_one():
    G = named("Q8")
    assert {G.labels[x] for x in commutator_subgroup(G)} == {"1", "-1"}


@pytest.mark.parametrize("name, order", [("S3", 1), ("D4", 2), ("C2xC4", 8), ("Q8", 2), ("S4", 1)])
def test_center_orders(name, order):
    assert len(center(named(name))) == order


@pytest.mark.parametrize("name, count", [("C4", 3), ("S3", 5), ("Q8", 5), ("D4", 9), ("S4", 21)])
def test_abelian_subgroup_counts(name, count):
    # Q8: trivial, <-1>, <i>, <j>, <k>; D4: trivial, five of order 2, three of order 4
    assert len(abelian_subgroups(named(name))) == count


def test_abelian_subgroups_sorted_and_include_whole_abelian_group():
    G = named("C2xC4")
    subs = abelian_subgroups(G)
    assert subs[0].members == (0,)
    assert subs[-1].order == 8
    keys = [(A.order, A.members) for A in subs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "Q16", "S4", "D6"])
def test_conjugation_closure(name):
    G = named(name)
    D = set(commutator_subgroup(G).members)
    subs = {A.members for A in abelian_subgroups(G)}
    for g in range(G.order):
        gi = G.inverse[g]
        conj = lambda x: G.table[G.table[gi][x]][g]  # noqa: E731
        assert {conj(x) for x in D} == D
        for A in subs:
            assert tuple(sorted(conj(x) for x in A)) in subs


@pytest.mark.parametrize("G", zoo(24), ids=lambda G: G.name)
def test_class_equation(G):
    Z = set(center(G).members)
    classes = conjugacy_classes(G)
    noncentral = sum(len(c) for c in classes if len(c) > 1)
    assert len(Z) + noncentral == G.order
    assert all(G.order % len(c) == 0 for c in classes)


def test_maximal_abelian_cover_group():
    for name in ("S4", "Q16", "A4"):
        G = named(name)
        M = maximal_abelian_subgroups(G)
        assert set().union(*(set(A.members) for A in M)) == set(range(G.order))
        for A in M:
            assert not any(set(A.members) < set(B.members) for B in abelian_subgroups(G))


def test_subgroup_helpers():
    G = named("S4")
    H = generate_subgroup(G, [G.index_of("(1,2,3)")])
    assert H.order == 3 and is_subgroup(G, H.members)
    assert not is_subgroup(G, [0, 1, 2])
    g = G.index_of("(1,2)")
    assert set(centralizer(G, g).members) == {x for x in range(24) if G.commutes(x, g)}


@pytest.mark.parametrize("name, tc", [("C6", True), ("S3", True), ("Q8", True), ("D4", True),
                                      ("A4", True), ("S4", False), ("ES+32", False)])
def test_tc_examples(name, tc):
    assert is_transitively_commutative(named(name)) == tc
