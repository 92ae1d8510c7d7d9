import random

import pytest
from hypothesis import given, settings, strategies as st

from ribbonpoly.census import random_graph
from ribbonpoly.invariants import (
    CyclicWord,
    GridViolation,
    MissingTangle,
    MissingWeight,
    bollobas_riordan,
    bollobas_riordan_rearranged,
    boundary_label,
    genus_from_br,
    homfly_formula,
    homfly_full,
    homfly_resolution,
    homfly_traldi,
    jones_cp,
    jones_from_homfly,
    jones_via_bracket,
    kauffman_bracket,
    mirror,
    state_labels,
    state_table,
    tutte,
    weighted_B,
)
from ribbonpoly.laurent import LaurentPoly, RationalPoint
from ribbonpoly.ribbon import boundary_walks, dual, from_rotation, genus, states

small = st.builds(lambda e, s: random_graph(e, random.Random(s)), st.integers(0, 6), st.integers(0, 10 ** 6))
small_connected = st.builds(lambda e, s: random_graph(e, random.Random(s), connected=True),
                            st.integers(1, 6), st.integers(0, 10 ** 6))

x, y = LaurentPoly.var("x"), LaurentPoly.var("y")


def triangle():
    return from_rotation([["a", "c'"], ["a'", "b"], ["b'", "c"]], [("a", "a'"), ("b", "b'"), ("c", "c'")])


def test_small_br_values(bridge, loop, torus):
    assert str(bollobas_riordan(bridge)) == "1 + 1*alpha"
    assert str(bollobas_riordan(loop)) == "1 + 1*beta"
    assert str(bollobas_riordan(torus)) == "1 + 2*beta + 1*beta^2*gamma^2"


def test_tutte_of_triangle():
    assert str(tutte(triangle())) == "1*y_T + 1*x_T + 1*x_T^2"


def test_weighted_values(bridge, loop):
    assert str(weighted_B(bridge.with_default_weights())) == "1*a*b_e1*c + 1*a^2*c^2"
    assert str(weighted_B(loop.with_default_weights())) == "1*a*c + 1*a*b_e1*c^2"
    with pytest.raises(MissingWeight):
        weighted_B(loop)


def test_homfly_values(bridge, loop):
    assert homfly_formula(bridge) == LaurentPoly.const(1)
    expected = y * x ** -1 + (x - x ** -1) * x ** -2 * y ** -1
    assert homfly_formula(loop) == expected
    assert homfly_resolution(loop) == expected


def test_jones_values(bridge, loop, torus):
    assert jones_cp(bridge, -1) == LaurentPoly.const(1)
    assert str(jones_cp(loop, -1)) == "1*t^(-3/2)"
    assert str(jones_from_homfly(loop)) == "-1*t^(1/2) - 1*t^(5/2)"
    # the trefoil
    assert str(jones_from_homfly(torus)) == "1*t + 1*t^3 - 1*t^4"
    with pytest.raises(GridViolation):
        jones_cp(loop, 0)


def test_empty_graph_is_one():
    E = from_rotation([], [], isolated=1)
    for f in (bollobas_riordan, homfly_formula, homfly_resolution, jones_from_homfly, kauffman_bracket):
        assert f(E) == LaurentPoly.const(1)


def test_genus_specialisation_of_torus(torus):
    assert genus_from_br(torus) == 1


def test_loop_labels(loop):
    full = loop.full_state()
    labels = sorted(boundary_label(loop, full, w).format(loop.edge_names) for w in boundary_walks(loop, full))
    assert labels == ["(e1')", "(e1)"]


def test_homfly_full_needs_weights(loop):
    with pytest.raises(MissingWeight):
        homfly_full(loop)
    with pytest.raises(MissingTangle):
        homfly_traldi(loop)


def test_traldi_bridge_gives_loop_homfly(bridge, loop):
    assert homfly_traldi(bridge.with_tangles("w3")).forget() == homfly_formula(loop)


def test_parallel_table_matches_serial():
    G = random_graph(11, random.Random(5), connected=True)
    assert state_table(G, jobs=2) == state_table(G, jobs=1)


@given(small)
def test_two_expansions_agree(F):
    assert bollobas_riordan(F) == bollobas_riordan_rearranged(F)


@given(small)
def test_homfly_expansions_agree(F):
    assert homfly_formula(F) == homfly_resolution(F)


shifted = st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(lambda q: q not in (0, -1))


@given(small, shifted, shifted)
def test_br_at_gamma_one_is_tutte(F, a, b):
    # R(x-1, y-1, 1) = T(x, y)
    R = bollobas_riordan(F).evaluate(RationalPoint.from_values({"alpha": a, "beta": b, "gamma": 1}))
    T = tutte(F).evaluate(RationalPoint.from_values({"x_T": a + 1, "y_T": b + 1}))
    assert R == T


@given(small)
def test_br_counts_states(F):
    total = bollobas_riordan(F).evaluate(RationalPoint.from_values({"alpha": 1, "beta": 1, "gamma": 1}))
    assert total == 2 ** F.num_edges


@given(small_connected)
def test_genus_recovered(F):
    assert genus_from_br(F) == genus(F)


@given(small)
def test_bracket_matches_medial_jones(F):
    w = -F.num_edges
    assert jones_via_bracket(F, w) == jones_cp(F, w)


@settings(max_examples=40)
@given(small)
def test_jones_paths_agree(F):
    assert jones_from_homfly(F, "joho") == jones_from_homfly(F, "homfly")


@given(small)
def test_mirror_is_involution(F):
    J = jones_cp(F, -F.num_edges)
    assert mirror(mirror(J)) == J


@given(small)
def test_labelled_homfly_forgets_to_homfly(F):
    W = F.with_default_weights()
    assert homfly_full(W).forget() == homfly_resolution(F)
    assert homfly_traldi(F.with_tangles("w1")) == homfly_full(W)


@given(small_connected)
def test_traldi_w3_on_dual(F):
    assert homfly_traldi(dual(F).with_tangles("w3")).forget() == homfly_resolution(F)


@given(small)
def test_state_labels_are_canonical(F):
    for H in list(states(F))[:32]:
        for w in state_labels(F, H.mask):
            assert w.canonical() == w
            assert not w.is_trivial


letters = st.lists(st.integers(0, 7), max_size=12)


@given(letters, st.integers(0, 20))
def test_cyclic_word_canonical_form(word, shift):
    w = CyclicWord.from_letters(word)
    assert w.canonical() == w
    if word:
        k = shift % len(word)
        assert CyclicWord.from_letters(word[k:] + word[:k]) == w
    L = w.letters
    for i in range(len(L)):
        assert L[i] ^ 1 != L[(i + 1) % len(L)] or len(L) == 1


@given(letters, st.integers(0, 7))
def test_cyclic_word_cancels_inserted_backtrack(word, a):
    pos = len(word) // 2
    padded = word[:pos] + [a, a ^ 1] + word[pos:]
    assert CyclicWord.from_letters(padded) == CyclicWord.from_letters(word)


@given(letters)
def test_cyclic_word_inverse(word):
    w = CyclicWord.from_letters(word)
    assert w.inverse().inverse() == w
