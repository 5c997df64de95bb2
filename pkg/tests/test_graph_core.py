"""Canonical forms, signs, enumeration, and serialization of graph classes.

Expected canonical data is recomputed by the exhaustive relabelling
oracle in conftest, never by the code under test.
"""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import brute_canonical, brute_canonical_one
from gcworkbench.graphs import (
    BI_ORD,
    BI_SYM,
    ONE,
    GraphVector,
    canonicalize,
    degrees,
    edge,
    enumerate_classes,
    graph,
    k4,
    key_str,
    parse_key,
    parse_term_json,
    term_json,
    three_star,
    vector_json,
    white_pair,
)


# ----------------------------------------------------------------- #
#  fixed classes with known fate
# ----------------------------------------------------------------- #


def test_triangle_class_vanishes():
    """Swapping two triangle vertices reorders two edges: odd, so zero."""
    assert canonicalize(graph(ONE, 0, 3, ((1, 2), (1, 3), (2, 3)))) is None


def test_black_star_class_vanishes():
    t = graph(BI_ORD, 1, 2, ((1, 2), (1, 3)))
    assert canonicalize(t) is None


def test_black_three_path_class_vanishes():
    assert canonicalize(graph(ONE, 0, 3, ((1, 2), (2, 3)))) is None


def test_chain_class_survives(chain_graph):
    res = canonicalize(chain_graph)
    assert res is not None
    key, sign = res
    assert sign == 1
    assert key == chain_graph


def test_complete_graph_on_four_survives():
    res = canonicalize(k4())
    assert res == (k4(), 1)


def test_edge_order_controls_sign(chain_graph):
    swapped = graph(BI_ORD, 1, 2, ((2, 3), (1, 2)))
    key, sign = canonicalize(swapped)
    assert key == chain_graph
    assert sign == -1


def test_endpoint_order_is_normalised_without_sign():
    assert graph(BI_ORD, 1, 1, ((2, 1),)) == graph(BI_ORD, 1, 1, ((1, 2),))


def test_repeated_edge_gives_zero_class():
    assert canonicalize(graph(ONE, 0, 2, ((1, 2), (1, 2)))) is None


def test_tadpole_rejected():
    with pytest.raises(ValueError):
        graph(ONE, 0, 2, ((1, 1),))


def test_colour_constraints_on_white_count():
    with pytest.raises(ValueError):
        graph(ONE, 1, 2, ())
    with pytest.raises(ValueError):
        graph(BI_ORD, 0, 2, ())
    with pytest.raises(ValueError):
        graph("tartan", 1, 1, ())


def test_out_of_range_endpoint_rejected():
    with pytest.raises(ValueError):
        graph(ONE, 0, 2, ((1, 3),))


def test_isolated_black_vertices_sit_at_the_end():
    # b1 isolated, b2 carries the edge: the canonical labelling moves the
    # edge onto the first black label.
    key, sign = canonicalize(graph(BI_ORD, 1, 2, ((1, 3),)))
    assert key == graph(BI_ORD, 1, 2, ((1, 2),))
    assert sign == 1


def test_ordered_whites_never_move():
    # the edge hangs off w2; with ordered whites it must stay there
    key, _ = canonicalize(graph(BI_ORD, 2, 1, ((2, 3),)))
    assert key == graph(BI_ORD, 2, 1, ((2, 3),))


def test_symmetric_whites_do_move():
    key, _ = canonicalize(graph(BI_SYM, 2, 1, ((2, 3),)))
    assert key == graph(BI_SYM, 2, 1, ((1, 3),))


# ----------------------------------------------------------------- #
#  canonicalization against the exhaustive oracle
# ----------------------------------------------------------------- #


def _all_subsets(pairs, size):
    return itertools.combinations(pairs, size)


def _vertex_pairs(nv):
    return [(u, v) for u in range(1, nv + 1) for v in range(u + 1, nv + 1)]


@pytest.mark.parametrize("m,n", [(1, 2), (2, 1), (2, 2), (1, 3)])
def test_bi_ord_canonical_matches_oracle_exhaustively(m, n):
    pairs = _vertex_pairs(m + n)
    for size in range(len(pairs) + 1):
        for sub in _all_subsets(pairs, size):
            term = graph(BI_ORD, m, n, sub)
            assert canonicalize(term) == brute_canonical(term)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_one_colour_canonical_matches_oracle_exhaustively(n):
    pairs = _vertex_pairs(n)
    for size in range(len(pairs) + 1):
        for sub in _all_subsets(pairs, size):
            term = graph(ONE, 0, n, sub)
            assert canonicalize(term) == brute_canonical_one(term)


def test_bi_sym_canonical_matches_oracle_exhaustively():
    pairs = _vertex_pairs(4)
    for size in range(len(pairs) + 1):
        for sub in _all_subsets(pairs, size):
            term = graph(BI_SYM, 2, 2, sub)
            assert canonicalize(term) == brute_canonical(term)


@st.composite
def bi_ord_terms(draw, max_whites=2, max_blacks=4):
    m = draw(st.integers(1, max_whites))
    n = draw(st.integers(0, max_blacks))
    pairs = _vertex_pairs(m + n)
    sub = draw(st.lists(st.sampled_from(pairs), unique=True,
                        max_size=len(pairs))) if pairs else []
    ordered = draw(st.permutations(sub))
    flipped = [(v, u) if draw(st.booleans()) else (u, v) for u, v in ordered]
    return graph(BI_ORD, m, n, tuple(flipped))


@st.composite
def one_colour_terms(draw, max_vertices=5):
    n = draw(st.integers(1, max_vertices))
    pairs = _vertex_pairs(n)
    sub = draw(st.lists(st.sampled_from(pairs), unique=True,
                        max_size=len(pairs))) if pairs else []
    ordered = draw(st.permutations(sub))
    return graph(ONE, 0, n, tuple(ordered))


@given(bi_ord_terms())
def test_random_two_coloured_term_matches_oracle(term):
    assert canonicalize(term) == brute_canonical(term)


@given(one_colour_terms())
def test_random_one_colour_term_matches_oracle(term):
    assert canonicalize(term) == brute_canonical_one(term)


@given(one_colour_terms())
def test_canonicalize_is_idempotent(term):
    res = canonicalize(term)
    if res is not None:
        assert canonicalize(res[0]) == (res[0], 1)


@given(bi_ord_terms(), st.randoms(use_true_random=False))
def test_black_relabelling_preserves_the_class(term, rng):
    """A permutation of black labels lands in the same class (or both zero)."""
    colour, m, n, edges = term
    blacks = list(range(m + 1, m + n + 1))
    rng.shuffle(blacks)
    mapping = dict(zip(range(m + 1, m + n + 1), blacks))
    mapping.update({v: v for v in range(1, m + 1)})
    moved = graph(colour, m, n,
                  tuple((mapping[u], mapping[v]) for u, v in edges))
    a, b = canonicalize(term), canonicalize(moved)
    if a is None or b is None:
        assert a is None and b is None
    else:
        assert a[0] == b[0]


# ----------------------------------------------------------------- #
#  enumeration
# ----------------------------------------------------------------- #


def _oracle_classes(colour, m, n, size):
    pairs = _vertex_pairs(m + n)
    out = set()
    for sub in _all_subsets(pairs, size):
        term = graph(colour, m, n, sub)
        res = brute_canonical_one(term) if colour == ONE else brute_canonical(term)
        if res is not None:
            out.add(res[0])
    return sorted(out)


@pytest.mark.parametrize("colour,m,n", [(ONE, 0, 4), (BI_ORD, 1, 3), (BI_ORD, 2, 2)])
def test_enumeration_agrees_with_oracle(colour, m, n):
    pairs = _vertex_pairs(m + n)
    for size in range(len(pairs) + 1):
        assert enumerate_classes(colour, m, n, size) == _oracle_classes(colour, m, n, size)


def test_enumeration_is_sorted_and_deterministic():
    first = enumerate_classes(ONE, 0, 5, 6)
    assert first == sorted(first)
    assert first == enumerate_classes(ONE, 0, 5, 6)


def test_enumeration_rejects_bad_input():
    with pytest.raises(ValueError):
        enumerate_classes(BI_ORD, 0, 3, 2)
    with pytest.raises(ValueError):
        enumerate_classes(ONE, 1, 3, 2)
    with pytest.raises(ValueError):
        enumerate_classes(ONE, 0, 12, 4)


def _components(nv, edges):
    comp = {v: {v} for v in range(1, nv + 1)}
    for u, v in edges:
        cu, cv = comp[u], comp[v]
        if cu is not cv:
            cu |= cv
            for w in cv:
                comp[w] = cu
    return {frozenset(c) for c in comp.values()}


def test_connected_flag_keeps_exactly_the_connected_classes():
    plain = enumerate_classes(BI_ORD, 2, 2, 3)
    conn = enumerate_classes(BI_ORD, 2, 2, 3, connected=True)
    expected = [key for key in plain if len(_components(4, key[3])) == 1]
    assert conn == expected
    assert 0 < len(conn) < len(plain)


def test_trivalent_flag_bounds_every_vertex_in_one_colour_mode():
    # on five vertices with seven edges no graph is 3-regular-or-better,
    # so the filter must reject everything the plain enumeration found
    plain = enumerate_classes(ONE, 0, 5, 7)
    assert plain
    assert enumerate_classes(ONE, 0, 5, 7, trivalent_black=True) == [
        key for key in plain if min(degrees(key)) >= 3]
    assert enumerate_classes(ONE, 0, 5, 7, trivalent_black=True) == []
    assert enumerate_classes(ONE, 0, 4, 6, trivalent_black=True) == [k4()]


def test_trivalent_flag_only_constrains_black_vertices():
    plain = enumerate_classes(BI_ORD, 3, 1, 3)
    kept = enumerate_classes(BI_ORD, 3, 1, 3, trivalent_black=True)
    assert kept == [key for key in plain
                    if min(degrees(key)[3:] or [3]) >= 3]
    # the star's whites have degree one; only the black is constrained
    assert three_star() in kept
    assert set(kept) < set(plain)


def test_no_solely_black_flag_demands_white_in_every_component():
    kept = enumerate_classes(BI_ORD, 1, 3, 2, no_solely_black=True)
    for key in kept:
        m = key[1]
        for part in _components(m + key[2], key[3]):
            assert any(v <= m for v in part)
    dropped = set(enumerate_classes(BI_ORD, 1, 3, 2)) - set(kept)
    assert dropped


def test_k4_is_the_only_six_edge_class_on_four_vertices():
    assert enumerate_classes(ONE, 0, 4, 6) == [k4()]


# ----------------------------------------------------------------- #
#  graph vectors
# ----------------------------------------------------------------- #


def test_single_canonicalizes_and_kills_zero_classes():
    v = GraphVector.single(graph(BI_ORD, 1, 2, ((2, 3), (1, 2))), 3)
    assert v.terms == {graph(BI_ORD, 1, 2, ((1, 2), (2, 3))): Fraction(-3)}
    z = GraphVector.single(graph(ONE, 0, 3, ((1, 2), (1, 3), (2, 3))))
    assert z.is_zero()


def test_vector_arithmetic_is_exact():
    a = GraphVector.single(edge(), Fraction(1, 3))
    b = GraphVector.single(edge(), Fraction(2, 3))
    assert (a + b).terms == {edge(): Fraction(1)}
    assert (a - a).is_zero()
    assert (Fraction(3, 2) * a).terms == {edge(): Fraction(1, 2)}
    assert (-a).terms == {edge(): Fraction(-1, 3)}


def test_cancellation_drops_the_key_entirely():
    a = GraphVector.single(edge())
    assert not (a - a).terms


def test_colour_mixing_rejected():
    with pytest.raises(ValueError):
        GraphVector.single(edge()) + GraphVector.single(white_pair())
    with pytest.raises(ValueError):
        GraphVector(ONE).add_term(white_pair(), 1)


def test_bigrade_bookkeeping():
    v = GraphVector.single(three_star()) + GraphVector.single(white_pair())
    assert v.bigrades() == [(2, 0, 0), (3, 1, 3)]
    assert v.bigrade_part(3, 1, 3).terms == {three_star(): Fraction(1)}
    assert v.bigrade_part(1, 1, 1).is_zero()


@given(st.fractions(), st.fractions())
def test_scalar_action_is_linear(p, q):
    v = GraphVector.single(k4())
    lhs = (p + q) * v
    rhs = p * v + q * v
    assert lhs == rhs


# ----------------------------------------------------------------- #
#  serialization
# ----------------------------------------------------------------- #


def test_key_text_roundtrip_on_enumerated_classes():
    keys = enumerate_classes(BI_ORD, 2, 2, 3) + enumerate_classes(ONE, 0, 4, 4)
    for key in keys:
        assert parse_key(key_str(key)) == key


def test_key_text_format_is_stable():
    assert key_str(three_star()) == "c:bi-ord;v:3,1;e:(w1,b1)(w2,b1)(w3,b1)"
    assert parse_key("c:one;v:0,2;e:(b1,b2)") == edge()


def test_parse_key_rejects_garbage():
    for bad in ("", "c:one;v:0,2", "c:plaid;v:0,2;e:", "c:one;v:0,2;e:(b1,b3)"):
        with pytest.raises(ValueError):
            parse_key(bad)


def test_term_json_roundtrip_keeps_fractions_exact():
    d = term_json(k4(), Fraction(-22, 7))
    key, coeff = parse_term_json(d)
    assert key == k4()
    assert coeff == Fraction(-22, 7)


def test_vector_json_lists_terms_in_key_order():
    v = GraphVector.single(three_star(), Fraction(1, 2))
    v = v + GraphVector.single(white_pair(), -2)
    blob = vector_json(v)
    assert [parse_term_json(t)[0] for t in blob] == [k for k, _ in v.items()]
    back = GraphVector(v.colour, dict(parse_term_json(t) for t in blob))
    assert back == v
