"""Shared fixtures and small independent oracles.

The brute-force helpers here recompute canonical data by exhaustive
search, so the unit tests never depend on the code paths they check.
"""

import itertools
from fractions import Fraction

import pytest
from hypothesis import settings

from gcworkbench.graphs import BI_ORD, ONE, graph

settings.register_profile("workbench", deadline=None, max_examples=60)
settings.load_profile("workbench")


def perm_sign(perm):
    """Sign of a permutation given as a tuple of images of 0..k-1."""
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def relabelled_edges(term, mapping):
    """Edge tuple after applying a vertex relabelling, endpoints sorted."""
    out = []
    for u, v in term[3]:
        a, b = mapping[u], mapping[v]
        out.append((a, b) if a < b else (b, a))
    return tuple(out)


def edge_sort_sign(edges):
    """Sign of sorting an edge sequence into lexicographic order, or zero
    when two edges coincide."""
    if len(set(edges)) != len(edges):
        return 0, ()
    order = sorted(range(len(edges)), key=lambda i: edges[i])
    return perm_sign(tuple(order)), tuple(sorted(edges))


def brute_canonical(term):
    """Exhaustive canonical form oracle: try every allowed relabelling.

    Vertices are even (a relabelling carries no sign of its own); the
    only sign is the parity of sorting the relabelled edge list.  Returns
    ``None`` for a zero class (some symmetry acts by -1), otherwise
    ``(key, sign)`` with the lexicographically smallest sorted edge list.
    White vertices stay fixed; black vertices range over all
    permutations.
    """
    colour, m, n, edges = term
    first_black = m + 1
    if colour == "bi-sym":
        white_perms = list(itertools.permutations(range(1, m + 1)))
    else:
        white_perms = [tuple(range(1, m + 1))]
    best = None
    signs = {}
    for pw in white_perms:
        for pb in itertools.permutations(range(first_black, m + n + 1)):
            mapping = {i + 1: pw[i] for i in range(m)}
            mapping.update({first_black + i: pb[i] for i in range(n)})
            es, sorted_edges = edge_sort_sign(relabelled_edges(term, mapping))
            if es == 0:
                continue
            if sorted_edges in signs and signs[sorted_edges] != es:
                return None
            signs[sorted_edges] = es
            cand = (colour, m, n, sorted_edges)
            if best is None or cand[3] < best[3]:
                best = cand
    if best is None:
        return None
    return best, signs[best[3]]


def brute_canonical_one(term):
    """One-colour variant: all vertices may be permuted."""
    colour, _, n, edges = term
    best = None
    signs = {}
    for p in itertools.permutations(range(1, n + 1)):
        mapping = {i + 1: p[i] for i in range(n)}
        es, sorted_edges = edge_sort_sign(relabelled_edges(term, mapping))
        if es == 0:
            continue
        if sorted_edges in signs and signs[sorted_edges] != es:
            return None
        signs[sorted_edges] = es
        cand = (colour, 0, n, sorted_edges)
        if best is None or cand[3] < best[3]:
            best = cand
    if best is None:
        return None
    return best, signs[best[3]]


def dense_rank(rows, cols, entries):
    """Textbook Gaussian elimination over Fraction, for rank cross-checks."""
    mat = [[Fraction(0)] * cols for _ in range(rows)]
    for (i, j), q in entries.items():
        mat[i][j] = Fraction(q)
    rank = 0
    row = 0
    for col in range(cols):
        piv = next((r for r in range(row, rows) if mat[r][col]), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for r in range(rows):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        rank += 1
        row += 1
        if row == rows:
            break
    return rank


@pytest.fixture
def chain_graph():
    return graph(BI_ORD, 1, 2, ((1, 2), (2, 3)))


@pytest.fixture
def star_graph():
    return graph(BI_ORD, 3, 1, ((1, 4), (2, 4), (3, 4)))
