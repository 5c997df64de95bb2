"""Exact rational linear algebra against a dense textbook oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import dense_rank
from gcworkbench.complexes import complex_differential, delta_prime, ideal_span
from gcworkbench.graphs import (
    BI_ORD,
    ONE,
    GraphVector,
    enumerate_classes,
    graph,
    k4,
    white_pair,
)
from gcworkbench.linalg import (
    BasisIndex,
    SparseRationalMatrix,
    cohomology_dim,
    degree_layer,
    differential_matrix,
    is_coboundary,
    is_cocycle,
    parse_matrix,
    rank,
    solve_delta_prime_preimage,
    solve_preimage,
    target_bigrades,
)

single = GraphVector.single


# ----------------------------------------------------------------- #
#  sparse matrix container
# ----------------------------------------------------------------- #


def test_setting_zero_clears_the_entry():
    m = SparseRationalMatrix(2, 2)
    m[0, 1] = Fraction(3, 4)
    assert m[0, 1] == Fraction(3, 4)
    m[0, 1] = 0
    assert (0, 1) not in m.entries
    assert m[0, 1] == 0


def test_out_of_range_entry_rejected():
    m = SparseRationalMatrix(2, 2)
    with pytest.raises(IndexError):
        m[2, 0] = 1
    with pytest.raises(IndexError):
        m[0, -1] = 1


def test_transpose_and_matvec():
    m = SparseRationalMatrix(2, 3, {(0, 0): 1, (0, 2): Fraction(1, 2), (1, 1): -2})
    assert m.transpose()[2, 0] == Fraction(1, 2)
    assert m.matvec([1, 1, 4]) == [Fraction(3), Fraction(-2)]
    with pytest.raises(ValueError):
        m.matvec([1, 2])


def test_hstack_places_blocks_side_by_side():
    a = SparseRationalMatrix(2, 1, {(0, 0): 1})
    b = SparseRationalMatrix(2, 2, {(1, 1): 5})
    c = a.hstack(b)
    assert (c.rows, c.cols) == (2, 3)
    assert c[0, 0] == 1 and c[1, 2] == 5
    with pytest.raises(ValueError):
        a.hstack(SparseRationalMatrix(3, 1))


def test_dump_parse_roundtrip_keeps_exact_entries():
    m = SparseRationalMatrix(3, 2, {(0, 0): Fraction(-7, 3), (2, 1): Fraction(22, 7)})
    back = parse_matrix(m.dump())
    assert (back.rows, back.cols) == (3, 2)
    assert back.entries == m.entries


# ----------------------------------------------------------------- #
#  rank and solving, against dense elimination
# ----------------------------------------------------------------- #


@st.composite
def sparse_matrices(draw, max_dim=6):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    fracs = st.fractions(min_value=-4, max_value=4, max_denominator=6)
    entries = draw(st.dictionaries(
        st.tuples(st.integers(0, rows - 1), st.integers(0, cols - 1)),
        fracs, max_size=rows * cols))
    m = SparseRationalMatrix(rows, cols)
    for rc, v in entries.items():
        m[rc] = v
    return m


@given(sparse_matrices())
def test_rank_matches_dense_elimination(m):
    assert rank(m) == dense_rank(m.rows, m.cols, m.entries)


def test_rank_of_known_matrices():
    assert rank(SparseRationalMatrix(4, 4)) == 0
    eye = SparseRationalMatrix(3, 3, {(i, i): 1 for i in range(3)})
    assert rank(eye) == 3
    outer = SparseRationalMatrix(3, 3, {(i, j): (i + 1) * (j + 1)
                                        for i in range(3) for j in range(3)})
    assert rank(outer) == 1


@given(sparse_matrices(), st.data())
def test_preimage_solves_consistent_systems(m, data):
    fracs = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    x = data.draw(st.lists(fracs, min_size=m.cols, max_size=m.cols))
    target = m.matvec(x)
    y = solve_preimage(m, target)
    assert y is not None
    assert m.matvec(y) == target


def test_preimage_detects_inconsistency():
    m = SparseRationalMatrix(2, 2, {(0, 0): 1, (1, 0): 1})
    assert solve_preimage(m, [Fraction(1), Fraction(2)]) is None
    with pytest.raises(ValueError):
        solve_preimage(m, [Fraction(1)])


def test_preimage_of_zero_is_zero_choice():
    m = SparseRationalMatrix(2, 3, {(0, 1): 2})
    assert solve_preimage(m, [Fraction(0), Fraction(0)]) == [0, 0, 0]


# ----------------------------------------------------------------- #
#  bases and differential matrices
# ----------------------------------------------------------------- #


def test_basis_index_coordinates_roundtrip():
    idx = BasisIndex("def_ass_graphs", (1, 2, 2))
    assert idx.keys == sorted(idx.keys)
    v = GraphVector(BI_ORD)
    for i, key in enumerate(idx.keys):
        v.add_term(key, Fraction(i + 1, 3))
    coords = idx.coordinates(v)
    assert coords == [Fraction(i + 1, 3) for i in range(len(idx))]
    assert idx.vector(coords) == v


def test_basis_index_rejects_off_bigrade_vectors():
    idx = BasisIndex("def_ass_graphs", (1, 2, 2))
    with pytest.raises(ValueError):
        idx.coordinates(single(white_pair()))


def test_quotient_basis_drops_ideal_pivots():
    bg = (1, 2, 2)
    plain = BasisIndex("def_ass_graphs", bg)
    quot = BasisIndex("def_ass_graphs_quot", bg)
    pivots = ideal_span("I_bb_prime", bg)
    assert len(quot) == len(plain) - len(pivots)
    assert all(k not in pivots for k in quot.keys)


def test_differential_matrix_columns_are_the_differential():
    cid, bg = "def_ass_graphs", (1, 2, 2)
    src = BasisIndex(cid, bg)
    tgts = [BasisIndex(cid, t) for t in target_bigrades(cid, bg)]
    mat = differential_matrix(cid, bg)
    assert mat.cols == len(src)
    assert mat.rows == sum(len(t) for t in tgts)
    for j, key in enumerate(src.keys):
        image = complex_differential(cid, single(key))
        col = []
        for t in tgts:
            col.extend(t.coordinates(image.bigrade_part(*t.bigrade)))
        assert col == [mat[i, j] for i in range(mat.rows)]


def test_one_colour_target_bigrade_formula():
    assert target_bigrades("fgc2", (0, 3, 2)) == [(0, 4, 3)]
    assert target_bigrades("def_ass_graphs", (1, 2, 2)) == [(1, 3, 3), (2, 2, 2)]


# ----------------------------------------------------------------- #
#  cocycles, coboundaries, cohomology
# ----------------------------------------------------------------- #


def test_k4_is_a_cocycle_but_not_a_coboundary():
    v = single(k4())
    for cid in ("fgc2", "gc2"):
        assert is_cocycle(cid, v)
        flag, pre = is_coboundary(cid, v)
        assert not flag and pre is None


def test_differential_images_are_coboundaries():
    src = graph(ONE, 0, 4, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4)))
    image = complex_differential("fgc2", single(src))
    assert not image.is_zero()
    flag, pre = is_coboundary("fgc2", image)
    assert flag
    assert complex_differential("fgc2", pre) == image


def test_zero_vector_is_a_trivial_coboundary():
    flag, pre = is_coboundary("fgc2", GraphVector(ONE))
    assert flag and pre.is_zero()


def test_degree_layers_solve_the_grading_formula():
    assert degree_layer("gc2", 0, 4) == [(0, 1, 0), (0, 4, 6)]
    for m, n, l in degree_layer("def_ass_graphs", 1, 4):
        assert l == 2 * n + m - 2
        assert 0 <= l <= (m + n) * (m + n - 1) // 2


def test_capped_cohomology_matches_dense_rank_arithmetic():
    from gcworkbench.linalg import _layer_matrix

    cid, degree, cap = "fgc2", 0, 4
    out_mat, dim_here = _layer_matrix(cid, degree, cap)
    in_mat, _ = _layer_matrix(cid, degree - 1, cap)
    expected = (dim_here - dense_rank(out_mat.rows, out_mat.cols, out_mat.entries)
                - dense_rank(in_mat.rows, in_mat.cols, in_mat.entries))
    assert cohomology_dim(cid, degree, cap) == expected


def test_connected_trivalent_cohomology_sees_the_k4_class():
    assert cohomology_dim("gc2", 0, 4) == 1


# ----------------------------------------------------------------- #
#  whitening solves
# ----------------------------------------------------------------- #


def test_delta_prime_preimage_inverts_delta_prime():
    src = enumerate_classes(BI_ORD, 1, 1, 1)[0]
    target = delta_prime(single(src)).vector
    part = target.bigrade_part(1, 2, 2)
    got = solve_delta_prime_preimage(part)
    assert got is not None
    assert delta_prime(got).vector.bigrade_part(1, 2, 2) == part


def test_delta_prime_preimage_of_unreachable_bigrade_is_none():
    assert solve_delta_prime_preimage(single(white_pair())) is None


def test_delta_prime_preimage_of_zero_is_zero():
    assert solve_delta_prime_preimage(GraphVector(BI_ORD)).is_zero()
