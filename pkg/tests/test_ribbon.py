import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ribbonpoly.census import connected_graphs, random_graph
from ribbonpoly.ribbon import (
    BadCycleLength,
    DisconnectedGraph,
    DuplicateDart,
    SelfPairedDart,
    UnpairedDart,
    automorphism_count,
    boundary_walks,
    canonical_key,
    connected_components,
    disjoint_union,
    dual,
    from_rotation,
    genus,
    is_connected,
    isomorphic,
    metrics,
    num_components,
    states,
    tensor_cycle,
)

graphs = st.builds(lambda e, s: random_graph(e, random.Random(s)), st.integers(0, 7), st.integers(0, 10 ** 6))
connected = st.builds(lambda e, s: random_graph(e, random.Random(s), connected=True),
                      st.integers(1, 7), st.integers(0, 10 ** 6))


def relabel(F, rng):
    """Same map with shuffled dart numbering, vertex order and edge directions."""
    perm = list(range(F.num_darts))
    rng.shuffle(perm)
    rots = [[f"x{perm[d]}" for d in rot] for rot in F.rotations]
    rng.shuffle(rots)
    pairs = [(f"x{perm[a]}", f"x{perm[b]}") if rng.random() < .5 else (f"x{perm[b]}", f"x{perm[a]}")
             for a, b in F.edges]
    rng.shuffle(pairs)
    return from_rotation(rots, pairs, isolated=F.isolated)


def test_small_metrics(bridge, loop, torus):
    assert metrics(bridge, bridge.full_state()) == (1, 1, 1, 0, 1, 0)
    assert metrics(loop, loop.full_state()) == (1, 1, 0, 1, 2, 0)
    assert metrics(torus, torus.full_state()) == (1, 2, 0, 2, 1, 1)
    assert metrics(torus, torus.empty_state()) == (1, 0, 0, 0, 1, 0)


def test_boundary_walks_of_states(torus):
    assert [len(w) for w in boundary_walks(torus)] == [4]
    assert sorted(len(w) for w in boundary_walks(torus, torus.state([0]))) == [1, 1]
    assert boundary_walks(torus, torus.empty_state()) == [[]]


def test_states_cover_all_subsets(torus):
    assert len(list(states(torus))) == 4


def test_input_errors():
    with pytest.raises(DuplicateDart):
        from_rotation([["a", "a", "b"]], [("a", "b")])
    with pytest.raises(UnpairedDart):
        from_rotation([["a", "b", "c"]], [("a", "b")])
    with pytest.raises(SelfPairedDart):
        from_rotation([["a"]], [("a", "a")])
    with pytest.raises(DisconnectedGraph):
        dual(from_rotation([["a", "b"], []], [("a", "b")]))
    with pytest.raises(BadCycleLength):
        tensor_cycle(from_rotation([["a", "b"]], [("a", "b")]), 1)


def test_dual_of_bridge_is_loop(bridge, loop):
    assert isomorphic(dual(bridge), loop)
    assert dual(dual(bridge)).rotations == bridge.rotations


def test_isolated_vertices_count():
    F = from_rotation([["a", "b"], []], [("a", "b")], isolated=2)
    assert F.num_vertices == 4
    assert num_components(F) == 4
    assert len(boundary_walks(F)) == 2 + 3


def test_tensor_c3_sizes(torus):
    T = tensor_cycle(torus, 3)
    assert (T.num_vertices, T.num_edges) == (3, 4)
    assert genus(T) == genus(torus)
    assert T.c3_subdivision


def test_census_matches_rooted_map_counts():
    # rooted maps with e edges, all genera: 1, 2, 10, 74, 706, 8162
    for e, rooted in [(1, 2), (2, 10), (3, 74), (4, 706)]:
        total = sum(Fraction(2 * e, automorphism_count(G)) for G in connected_graphs(e, reflect=False))
        assert total == rooted


def test_census_planar_counts():
    # rooted planar maps: 2 3^e (2e)! / (e! (e+2)!)
    for e, rooted in [(1, 2), (2, 9), (3, 54), (4, 378)]:
        total = sum(Fraction(2 * e, automorphism_count(G))
                    for G in connected_graphs(e, reflect=False) if genus(G) == 0)
        assert total == rooted


@given(graphs)
def test_euler_relation_in_every_state(F):
    for H in list(states(F))[:64]:
        k, e, r, n, p, g = metrics(F, H)
        assert 2 * g == k - p + n and g >= 0
        assert r + n == e


@given(connected)
def test_dual_properties(F):
    D = dual(F)
    assert D.num_vertices == len(boundary_walks(F))
    assert D.num_edges == F.num_edges
    assert genus(D) == genus(F)
    assert dual(D).rotations == F.rotations
    assert isomorphic(dual(D), F)


@given(graphs, st.integers(0, 10 ** 6))
def test_canonical_key_ignores_labels(F, seed):
    G = relabel(F, random.Random(seed))
    assert canonical_key(G) == canonical_key(F)
    assert canonical_key(G, reflect=False) == canonical_key(F, reflect=False)


@given(graphs)
def test_mirror_image_identified_only_with_reflection(F):
    M = from_rotation([[F.dart_names[d] for d in reversed(rot)] for rot in F.rotations],
                      [(F.dart_names[a], F.dart_names[b]) for a, b in F.edges], isolated=F.isolated)
    assert isomorphic(M, F, reflect=True)


@given(graphs)
def test_components_reassemble(F):
    parts = connected_components(F)
    assert all(is_connected(P) for P in parts)
    assert isomorphic(disjoint_union(*parts), F)


@settings(max_examples=30)
@given(connected, st.integers(2, 5))
def test_tensor_cycle_subdivides(F, q):
    T = tensor_cycle(F, q)
    assert T.num_edges == (q - 1) * F.num_edges
    assert T.num_vertices == F.num_vertices + (q - 2) * F.num_edges
    assert genus(T) == genus(F)
    assert len(boundary_walks(T)) == len(boundary_walks(F))
