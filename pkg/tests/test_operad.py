"""Insertion axioms checked at the labelled level, plus hand-computed anchors.

The sequential and parallel composition identities are verified on raw
reattachment terms, before any canonical relabelling, so they do not
lean on the canonicalizer.
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from gcworkbench.graphs import (
    BI_ORD,
    ONE,
    GraphVector,
    black_white_edge,
    edge,
    graph,
    k4,
    one_vertex,
    three_star,
    white_pair,
)
from gcworkbench.operad import act_on_blacks, insert, reattachments


def _single(term, coeff=1):
    return GraphVector.single(term, coeff)


# ----------------------------------------------------------------- #
#  units and shapes
# ----------------------------------------------------------------- #


def test_single_vertex_is_a_two_sided_unit():
    host = graph(ONE, 0, 3, ((1, 2), (1, 3)))
    for slot in (1, 2, 3):
        assert insert(host, slot, one_vertex()) == _single(host)
    assert insert(one_vertex(), 1, host) == _single(host)


def test_slot_out_of_range_rejected():
    with pytest.raises(ValueError):
        insert(edge(), 3, edge())
    with pytest.raises(ValueError):
        insert(edge(), 0, edge())


def test_colour_shape_rules():
    with pytest.raises(ValueError):
        insert(edge(), 1, black_white_edge())       # one-colour host
    with pytest.raises(ValueError):
        insert(three_star(), 1, edge())             # white slot wants bi-ord
    with pytest.raises(ValueError):
        insert(three_star(), 4, three_star())       # black slot wants one-colour


def test_result_bigrade_white_slot():
    out = insert(three_star(), 2, black_white_edge())
    for key, _ in out.items():
        assert (key[1], key[2], len(key[3])) == (3, 2, 4)


def test_result_bigrade_black_slot():
    out = insert(three_star(), 4, edge())
    for key, _ in out.items():
        assert (key[1], key[2], len(key[3])) == (3, 2, 4)


def test_reattachment_count_is_guest_size_to_the_slot_degree():
    # the k4 slot has degree 3 and the guest has two vertices: 2**3 terms
    assert len(reattachments(k4(), 1, edge())) == 8
    assert len(reattachments(edge(), 1, k4())) == 4
    assert len(reattachments(white_pair(), 1, black_white_edge())) == 1


# ----------------------------------------------------------------- #
#  hand-computed insertions
# ----------------------------------------------------------------- #


def test_white_slot_insertion_into_edgeless_host():
    got = insert(white_pair(), 1, black_white_edge())
    assert got == _single(graph(BI_ORD, 2, 1, ((1, 3),)))
    got = insert(white_pair(), 2, black_white_edge())
    assert got == _single(graph(BI_ORD, 2, 1, ((2, 3),)))


def test_black_slot_insertion_doubles_the_chain():
    # reconnecting w-b across an inserted edge gives the chain twice:
    # once directly and once after the black swap, with matching signs
    chain = graph(BI_ORD, 1, 2, ((1, 2), (2, 3)))
    assert insert(black_white_edge(), 2, edge()) == _single(chain, 2)


def test_one_colour_insertion_of_edge_into_edge_cancels():
    # every reattachment is a three-vertex path, which is a zero class
    assert insert(edge(), 1, edge()).is_zero()
    assert insert(edge(), 2, edge()).is_zero()


def test_insertion_is_bilinear():
    a = _single(edge(), Fraction(2, 3))
    b = _single(k4(), 2) + _single(edge(), -1)
    lhs = insert(a, 1, b)
    rhs = Fraction(4, 3) * insert(edge(), 1, k4()) \
        - Fraction(2, 3) * insert(edge(), 1, edge())
    assert lhs == rhs


# ----------------------------------------------------------------- #
#  composition identities on labelled terms
# ----------------------------------------------------------------- #


def _nested_lhs(a, i, b, gslot, c):
    out = []
    for t in reattachments(a, i, b):
        out.extend(reattachments(t, gslot, c))
    return sorted(out)


@st.composite
def small_one_colour(draw, max_vertices=3):
    n = draw(st.integers(1, max_vertices))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    sub = draw(st.lists(st.sampled_from(pairs), unique=True,
                        max_size=len(pairs))) if pairs else []
    return graph(ONE, 0, n, tuple(draw(st.permutations(sub))))


@given(small_one_colour(), small_one_colour(), small_one_colour(),
       st.data())
def test_sequential_composition_is_associative(a, b, c, data):
    """(a o_i b) o c-at-b's-slot-j equals a o_i (b o_j c), term by term."""
    i = data.draw(st.integers(1, a[2]), label="host slot")
    j = data.draw(st.integers(1, b[2]), label="guest slot")
    # after a o_i b, vertex u of b carries label i + u - 1
    lhs = _nested_lhs(a, i, b, i + j - 1, c)
    rhs = []
    for s in reattachments(b, j, c):
        rhs.extend(reattachments(a, i, s))
    assert lhs == sorted(rhs)


@given(small_one_colour(), small_one_colour(), small_one_colour(),
       st.data())
def test_parallel_compositions_commute(a, b, c, data):
    """Inserting into two different slots gives the same labelled terms.

    The edge sequences come out in different block orders (host, b, c
    versus host, c, b); the comparison restores a common order, which is
    an even move at the vector level only up to the usual Koszul sign --
    here we only compare the underlying labelled multisets.
    """
    assume(a[2] >= 2)
    i = data.draw(st.integers(1, a[2] - 1), label="lower slot")
    k = data.draw(st.integers(i + 1, a[2]), label="upper slot")
    la, lc = len(a[3]), len(c[3])
    # b first: a's slot k shifts up by |b|-1
    lhs = _nested_lhs(a, i, b, k + b[2] - 1, c)
    # c first at slot k; slot i is untouched since i < k
    rhs = []
    for t in reattachments(a, k, c):
        for s in reattachments(t, i, b):
            # blocks arrive as (a, c, b); restore (a, b, c)
            e = s[3]
            fixed = e[:la] + e[la + lc:] + e[la:la + lc]
            rhs.append((s[0], s[1], s[2], fixed))
    assert lhs == sorted(rhs)


@given(small_one_colour(), small_one_colour())
def test_insertion_lands_in_one_bigrade(a, b):
    out = insert(a, 1, b)
    for key, _ in out.items():
        assert key[2] == a[2] + b[2] - 1
        assert len(key[3]) == len(a[3]) + len(b[3])


# ----------------------------------------------------------------- #
#  summed action over black vertices
# ----------------------------------------------------------------- #


def test_black_action_of_unit_counts_black_vertices():
    assert act_on_blacks(three_star(), one_vertex()) == _single(three_star())
    chain = graph(BI_ORD, 1, 2, ((1, 2), (2, 3)))
    assert act_on_blacks(chain, one_vertex()) == _single(chain, 2)


def test_black_action_over_one_colour_host_uses_every_vertex():
    assert act_on_blacks(edge(), one_vertex()) == _single(edge(), 2)


def test_black_action_rejects_two_coloured_gamma():
    with pytest.raises(ValueError):
        act_on_blacks(three_star(), black_white_edge())


def test_black_action_matches_slotwise_sum():
    host = three_star()
    total = GraphVector(BI_ORD)
    for s in (4,):
        total = total + insert(host, s, edge())
    assert act_on_blacks(host, edge()) == total
