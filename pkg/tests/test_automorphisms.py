"""Automorphism engine: refinement, search, oracle agreement, OmSR verdicts."""

import random

import pytest

from omsr.automorphisms import (PermutationGroup, aut_order_bounded, automorphisms,
                                brute_force_automorphisms, is_omsr, orbit_count,
                                refine, stabilizer)
from omsr.constructions import cyclic_connection_table, nonabelian_connection_table
from omsr.digraphs import ConnectionTable, Digraph, build_mcayley, right_translation
from omsr.errors import BlockMismatch, TooLarge
from omsr.groups import catalog_group, normalize_generating_pair
from omsr.perms import compose, inverse, orbit_partition


def directed_cycle(n):
    return Digraph(n, [[(i + 1) % n] for i in range(n)])


def random_table(G, m, rng, max_cell=2):
    entries = {}
    for i in range(m):
        for j in range(m):
            k = rng.randrange(max_cell + 1)
            entries[(i, j)] = rng.sample(range(G.order), min(k, G.order))
    return ConnectionTable.from_dict(m, entries)


def test_refine_vertex_transitive_single_class():
    colors = refine(directed_cycle(6))
    assert len(set(colors)) == 1


def test_refine_distinct_in_valencies_discrete():
    # Path-like digraph: 0->1, 0->2, 1->2; all in/out profiles differ.
    d = Digraph(3, [[1, 2], [2], []])
    colors = refine(d)
    assert len(set(colors)) == 3


def test_refine_regular_digraph_stays_uniform():
    # On an in/out-regular digraph every vertex has the same degree profile,
    # so plain refinement cannot split anything; the search individualizes
    # to break ties instead.
    G, pair = catalog_group("cyclic", [7])
    d = build_mcayley(G, cyclic_connection_table(G, pair.a, 2))
    assert len(set(refine(d))) == 1


def test_individualized_refinement_separates_blocks_z7_m2():
    G, pair = catalog_group("cyclic", [7])
    d = build_mcayley(G, cyclic_connection_table(G, pair.a, 2))
    start = [1] + [0] * (d.n - 1)
    colors = refine(d, start)
    blocks0 = {colors[v] for v in range(7)}
    blocks1 = {colors[v] for v in range(7, 14)}
    assert blocks0.isdisjoint(blocks1)


def test_refine_classes_are_orbit_unions():
    rng = random.Random(41)
    G, _ = catalog_group("cyclic", [4])
    for _ in range(25):
        d = build_mcayley(G, random_table(G, 2, rng))
        colors = refine(d)
        for orbit in orbit_partition(brute_force_automorphisms(d).generators, d.n):
            assert len({colors[v] for v in orbit}) == 1


def test_automorphisms_directed_cycle():
    A = automorphisms(directed_cycle(5))
    assert A.order == 5
    assert A.element_set() == {tuple((i + k) % 5 for i in range(5)) for k in range(5)}


def test_automorphisms_cyclic_recipe():
    for n in (3, 5):
        G, pair = catalog_group("cyclic", [n])
        d = build_mcayley(G, cyclic_connection_table(G, pair.a, 2))
        assert automorphisms(d).order == n


def test_vertex_cap():
    with pytest.raises(TooLarge):
        automorphisms(directed_cycle(20), cap=10)


def test_brute_force_examples():
    assert brute_force_automorphisms(Digraph(1, [[]])).order == 1
    assert brute_force_automorphisms(directed_cycle(4)).order == 4
    with pytest.raises(TooLarge):
        brute_force_automorphisms(directed_cycle(9))


def test_brute_force_trivial_witness_m7():
    from omsr.groups import Group
    from omsr.sweep import find_witness
    Z1 = Group(mult=((0,),), inv=(0,), label="Z1")
    table, gamma, _ = find_witness(Z1, 7)
    assert table is not None
    assert brute_force_automorphisms(gamma).order == 1


def test_engine_matches_brute_force_random():
    rng = random.Random(97)
    for name, params in [("cyclic", [2]), ("cyclic", [3]), ("cyclic", [4]),
                         ("elementary_abelian_2", [2])]:
        G, _ = catalog_group(name, params)
        m_max = 2 if G.order >= 3 else 3
        for _ in range(15):
            m = rng.randint(1, m_max)
            if G.order * m > 8:
                continue
            d = build_mcayley(G, random_table(G, m, rng))
            assert automorphisms(d).element_set() == \
                brute_force_automorphisms(d).element_set()


def test_relabel_conjugation_invariance():
    rng = random.Random(13)
    G, _ = catalog_group("cyclic", [3])
    for _ in range(10):
        d = build_mcayley(G, random_table(G, 2, rng))
        pi = list(range(d.n))
        rng.shuffle(pi)
        pi = tuple(pi)
        relabeled = Digraph(d.n, [sorted(pi[w] for w in d.out_adj[inverse(pi)[v]])
                                  for v in range(d.n)])
        A = automorphisms(d).element_set()
        B = automorphisms(relabeled).element_set()
        assert B == {compose(compose(inverse(pi), a), pi) for a in A}


def test_aut_order_bounded():
    d = directed_cycle(6)
    assert aut_order_bounded(d, 6) == 6
    assert aut_order_bounded(d, 10) == 6
    assert aut_order_bounded(d, 3) is None


def test_stabilizer_examples():
    G, pair = catalog_group("cyclic", [5])
    d = build_mcayley(G, cyclic_connection_table(G, pair.a, 2))
    A = automorphisms(d)
    for v in range(d.n):
        assert stabilizer(A, v).order == 1
    rot = automorphisms(directed_cycle(7))
    assert stabilizer(rot, 0).order == 1


def test_orbit_count_regular_action():
    G, pair = catalog_group("cyclic", [5])
    d = build_mcayley(G, cyclic_connection_table(G, pair.a, 3))
    assert orbit_count(automorphisms(d)) == 3


def test_aut_divisible_by_group_order():
    rng = random.Random(59)
    G, _ = catalog_group("elementary_abelian_2", [1])
    for _ in range(30):
        d = build_mcayley(G, random_table(G, rng.choice([2, 3]), rng))
        assert automorphisms(d).order % G.order == 0


def test_is_omsr_positive_cyclic():
    G, pair = catalog_group("cyclic", [5])
    d = build_mcayley(G, cyclic_connection_table(G, pair.a, 2))
    report = is_omsr(d, G, 2)
    assert report.omsr and report.aut_order == 5
    assert report.oriented and report.regular2 and report.connected
    assert report.translations_embed
    assert report.stabilizer_order == 1


def test_is_omsr_positive_nonabelian():
    G, pair = catalog_group("symmetric", [3])
    a, b = normalize_generating_pair(G, pair.a, pair.b)
    d = build_mcayley(G, nonabelian_connection_table(G, a, b, 2))
    report = is_omsr(d, G, 2)
    assert report.omsr and report.aut_order == 6


def test_is_omsr_negative():
    # A table whose digraph keeps extra symmetry: empty table, m=2 over Z2.
    G, _ = catalog_group("cyclic", [2])
    d = build_mcayley(G, ConnectionTable.from_dict(2, {(0, 1): [0], (1, 0): [0]}))
    report = is_omsr(d, G, 2)
    assert not report.omsr
    assert report.aut_order % G.order == 0


def test_is_omsr_block_mismatch():
    G, pair = catalog_group("cyclic", [5])
    d = build_mcayley(G, cyclic_connection_table(G, pair.a, 2))
    with pytest.raises(BlockMismatch):
        is_omsr(d, G, 3)


def test_translations_in_aut_for_recipes():
    G, pair = catalog_group("cyclic", [7])
    d = build_mcayley(G, cyclic_connection_table(G, pair.a, 2))
    elems = automorphisms(d).element_set()
    for g in G.elements():
        assert right_translation(G, 2, g) in elems


def test_permutation_group_json_round_trip():
    A = automorphisms(directed_cycle(5))
    B = PermutationGroup.from_json(A.to_json())
    assert B.degree == A.degree and B.order == A.order
    assert B.element_set() == A.element_set()
