"""Sparse exact-rational linear algebra over bigraded graph bases.

Everything here is plumbing: basis bookkeeping per (m, n, l) bigrade,
differential matrices of the registered complexes, fraction-free rank,
and cocycle / coboundary / preimage solves.  All arithmetic is exact;
no floats enter at any point.

The differential of every registered complex shifts the total vertex
count by exactly one, so degree-layer computations decompose cleanly
into (total t) -> (total t+1) blocks; the capped cohomology below is
the cohomology of the vertex-capped truncation with the differential
compressed to the cap.
"""

from __future__ import annotations

from fractions import Fraction

from .graphs import BI_ORD, ONE, GraphVector, key_str
from . import complexes
from .complexes import (
    COMPLEXES,
    complex_basis,
    complex_differential,
    def_degree,
    gc_degree,
    ideal_span,
)


# ----------------------------------------------------------------- #
#  basis plumbing
# ----------------------------------------------------------------- #


class BasisIndex:
    """Ordered, duplicate-free canonical keys of one bigrade of a complex.

    Quotient complexes drop the pivot keys of their ideal span, so the
    remaining keys are reduced representatives forming a basis.
    """

    __slots__ = ("complex_id", "bigrade", "keys", "_pos")

    def __init__(self, complex_id, bigrade, max_vertices=None):
        self.complex_id = complex_id
        self.bigrade = tuple(bigrade)
        keys = complex_basis(complex_id, bigrade, max_vertices)
        ideal = COMPLEXES[complex_id][2]
        if ideal is not None:
            pivots = ideal_span(ideal, self.bigrade)
            keys = [k for k in keys if k not in pivots]
        self.keys = list(keys)
        self._pos = {k: i for i, k in enumerate(self.keys)}

    def __len__(self):
        return len(self.keys)

    def position(self, key):
        return self._pos[key]

    def coordinates(self, vec):
        """Dense coordinate list of a vector supported on this bigrade."""
        out = [Fraction(0)] * len(self.keys)
        for k, c in vec.terms.items():
            if (k[1], k[2], len(k[3])) != self.bigrade:
                raise ValueError("vector leaves the bigrade %r" % (self.bigrade,))
            out[self._pos[k]] = c
        return out

    def vector(self, coords):
        colour = ONE if self.keys and self.keys[0][0] == ONE else \
            (self.keys[0][0] if self.keys else ONE)
        v = GraphVector(colour)
        for k, c in zip(self.keys, coords):
            if c:
                v.add_term(k, c)
        return v


class SparseRationalMatrix:
    """Immutable-ish sparse matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), val in entries.items():
                self[r, c] = val

    def __setitem__(self, rc, val):
        r, c = rc
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(rc)
        q = Fraction(val)
        if q:
            self.entries[r, c] = q
        else:
            self.entries.pop(rc, None)

    def __getitem__(self, rc):
        return self.entries.get(rc, Fraction(0))

    def transpose(self):
        out = SparseRationalMatrix(self.cols, self.rows)
        for (r, c), v in self.entries.items():
            out.entries[c, r] = v
        return out

    def matvec(self, x):
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            if x[c]:
                out[r] += v * x[c]
        return out

    def hstack(self, other):
        if other.rows != self.rows:
            raise ValueError("dimension mismatch")
        out = SparseRationalMatrix(self.rows, self.cols + other.cols)
        out.entries.update(self.entries)
        for (r, c), v in other.entries.items():
            out.entries[r, self.cols + c] = v
        return out

    def dump(self):
        """Coordinate text with exact p/q entries, 1-based indices."""
        lines = ["%%MatrixMarket matrix coordinate rational general",
                 "%d %d %d" % (self.rows, self.cols, len(self.entries))]
        for (r, c) in sorted(self.entries):
            v = self.entries[r, c]
            lines.append("%d %d %d/%d" % (r + 1, c + 1,
                                          v.numerator, v.denominator))
        return "\n".join(lines) + "\n"


def parse_matrix(text):
    """Inverse of :meth:`SparseRationalMatrix.dump`."""
    lines = [ln for ln in text.splitlines()
             if ln.strip() and not ln.startswith("%")]
    rows, cols, nnz = (int(x) for x in lines[0].split())
    m = SparseRationalMatrix(rows, cols)
    for ln in lines[1:nnz + 1]:
        r, c, v = ln.split()
        m[int(r) - 1, int(c) - 1] = Fraction(v)
    return m


# ----------------------------------------------------------------- #
#  differential matrices
# ----------------------------------------------------------------- #


def target_bigrades(complex_id, bigrade):
    """Bigrades the differential maps one source bigrade into (sorted)."""
    colour = COMPLEXES[complex_id][0]
    m, n, l = bigrade
    if colour == ONE:
        return [(0, n + 1, l + 1)]
    if colour == BI_ORD:
        return sorted([(m + 1, n, l), (m, n + 1, l + 1)])
    raise ValueError("cone complexes have paired bigrades")


def differential_matrix(complex_id, bigrade, max_vertices=None):
    """Matrix of the differential out of one bigrade.

    Columns follow the source :class:`BasisIndex`; rows are the target
    bigrades' indices stacked in sorted bigrade order.
    """
    m, _, _ = _differential_blocks(complex_id, bigrade, max_vertices)
    return m


def _differential_blocks(complex_id, bigrade, max_vertices=None):
    src = BasisIndex(complex_id, bigrade, max_vertices)
    tgts = [BasisIndex(complex_id, bg, max_vertices)
            for bg in target_bigrades(complex_id, bigrade)]
    offs = []
    total = 0
    for t in tgts:
        offs.append(total)
        total += len(t)
    mat = SparseRationalMatrix(total, len(src))
    for j, key in enumerate(src.keys):
        image = complex_differential(complex_id, GraphVector.single(key))
        for k, c in image.terms.items():
            bg = (k[1], k[2], len(k[3]))
            for t, off in zip(tgts, offs):
                if t.bigrade == bg:
                    mat[off + t.position(k), j] = c
                    break
            else:
                raise AssertionError("differential left the declared targets")
    return mat, src, tgts


# ----------------------------------------------------------------- #
#  fraction-free elimination
# ----------------------------------------------------------------- #


def _integer_rows(mat):
    """Row list of integer-scaled entries: {col: int} per row."""
    rows = [dict() for _ in range(mat.rows)]
    for (r, c), v in mat.entries.items():
        rows[r][c] = v
    out = []
    for row in rows:
        if not row:
            out.append({})
            continue
        den = 1
        for v in row.values():
            den = den * v.denominator // _gcd(den, v.denominator)
        out.append({c: int(v * den) for c, v in row.items()})
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def rank(mat):
    """Exact rank by fraction-free (Bareiss) elimination.

    Pivots are chosen by minimal Markowitz fill among the nonzero
    entries of the active submatrix.
    """
    rows = [r for r in _integer_rows(mat) if r]
    col_count = {}
    for r in rows:
        for c in r:
            col_count[c] = col_count.get(c, 0) + 1
    prev = 1
    rk = 0
    while rows:
        # pick the entry minimizing (row fill - 1) * (col fill - 1)
        best = None
        for i, r in enumerate(rows):
            rl = len(r) - 1
            for c in r:
                score = rl * (col_count[c] - 1)
                if best is None or score < best[0]:
                    best = (score, i, c)
            if best and best[0] == 0:
                break
        _, pi, pc = best
        prow = rows.pop(pi)
        piv = prow[pc]
        nxt = []
        for r in rows:
            f = r.pop(pc, 0)
            if f:
                col_count[pc] -= 1
                merged = {}
                for c in set(r) | set(prow):
                    if c == pc:
                        continue
                    val = r.get(c, 0) * piv - f * prow.get(c, 0)
                    val //= prev
                    if val:
                        merged[c] = val
                    if c in r and c not in merged:
                        col_count[c] -= 1
                    elif c not in r and c in merged:
                        col_count[c] = col_count.get(c, 0) + 1
                r = merged
            if r:
                nxt.append(r)
            else:
                for c in r:
                    col_count[c] -= 1
        for c in prow:
            col_count[c] = col_count.get(c, 1) - 1
        rows = nxt
        prev = piv
        rk += 1
    return rk


def solve_preimage(mat, target):
    """Any exact solution of mat . y = target, or None.

    ``target`` is a dense list of rationals; free variables are set to
    zero.  Plain rational elimination with sparsity-guided pivoting.
    """
    if len(target) != mat.rows:
        raise ValueError("dimension mismatch")
    rows = [dict() for _ in range(mat.rows)]
    for (r, c), v in mat.entries.items():
        rows[r][c] = v
    aug = [Fraction(t) for t in target]
    work = [(rows[i], aug[i]) for i in range(mat.rows)]
    pivots = []                      # (col, row dict, rhs) in order
    while True:
        best = None
        for i, (r, b) in enumerate(work):
            if not r:
                continue
            if best is None or len(r) < best[0]:
                best = (len(r), i)
        if best is None:
            break
        _, pi = best
        prow, pb = work.pop(pi)
        pc = min(prow)
        pv = prow[pc]
        prow = {c: v / pv for c, v in prow.items()}
        pb = pb / pv
        nwork = []
        for r, b in work:
            f = r.get(pc)
            if f:
                r = dict(r)
                for c, v in prow.items():
                    nv = r.get(c, Fraction(0)) - f * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
                b = b - f * pb
            nwork.append((r, b))
        work = nwork
        pivots.append((pc, prow, pb))
    if any(b for r, b in work if not r):
        return None
    sol = [Fraction(0)] * mat.cols
    for pc, prow, pb in reversed(pivots):
        acc = pb
        for c, v in prow.items():
            if c != pc and sol[c]:
                acc -= v * sol[c]
        sol[pc] = acc
    return sol


# ----------------------------------------------------------------- #
#  cocycle / coboundary tests
# ----------------------------------------------------------------- #


def _vec_bigrade_and_degree(complex_id, vec):
    colour = COMPLEXES[complex_id][0]
    degfun = gc_degree if colour == ONE else def_degree
    bgs = vec.bigrades()
    if not bgs:
        return None, None, None
    degs = {degfun(k) for k in vec.terms}
    tots = {m + n for (m, n, _) in bgs}
    if len(degs) != 1 or len(tots) != 1:
        raise ValueError("need a vector homogeneous in degree and vertex count")
    return bgs, degs.pop(), tots.pop()


def degree_layer(complex_id, degree, max_vertices):
    """All bigrades of one degree within the vertex cap, sorted."""
    colour = COMPLEXES[complex_id][0]
    out = []
    if colour == ONE:
        for n in range(1, max_vertices + 1):
            l = 2 * n - 2 - degree
            if 0 <= l <= n * (n - 1) // 2:
                out.append((0, n, l))
    else:
        for m in range(1, max_vertices + 1):
            for n in range(0, max_vertices - m + 1):
                l = 2 * n + m - 1 - degree
                nv = m + n
                if 0 <= l <= nv * (nv - 1) // 2:
                    out.append((m, n, l))
    return sorted(out)


def is_cocycle(complex_id, x):
    """Whether the differential of the vector vanishes (in the quotient,
    for quotient complexes)."""
    vec = x.vector if hasattr(x, "vector") else x
    return complex_differential(complex_id, vec).is_zero()


def is_coboundary(complex_id, x):
    """Exact solve for a differential preimage of a homogeneous vector.

    Returns ``(flag, preimage)`` with the preimage a GraphVector or None.
    The solve runs over every source bigrade one vertex below the input
    and demands the image vanish at every reachable bigrade other than
    the input's own.
    """
    vec = x.vector if hasattr(x, "vector") else x
    if vec.is_zero():
        return True, GraphVector(vec.colour)
    bgs, degree, total = _vec_bigrade_and_degree(complex_id, vec)
    sources = [bg for bg in degree_layer(complex_id, degree - 1, total - 1)
               if bg[0] + bg[1] == total - 1]
    src_idx = [BasisIndex(complex_id, bg) for bg in sources]
    src_idx = [s for s in src_idx if len(s)]
    if not src_idx:
        return False, None
    tgt_bgs = sorted({t for s in src_idx
                      for t in target_bigrades(complex_id, s.bigrade)})
    tgt_idx = [BasisIndex(complex_id, bg) for bg in tgt_bgs]
    offs = {}
    total_rows = 0
    for t in tgt_idx:
        offs[t.bigrade] = (t, total_rows)
        total_rows += len(t)
    cols = sum(len(s) for s in src_idx)
    mat = SparseRationalMatrix(total_rows, cols)
    j0 = 0
    for s in src_idx:
        for j, key in enumerate(s.keys):
            image = complex_differential(complex_id, GraphVector.single(key))
            for k, c in image.terms.items():
                bg = (k[1], k[2], len(k[3]))
                t, off = offs[bg]
                mat[off + t.position(k), j0 + j] = c
        j0 += len(s)
    rhs = [Fraction(0)] * total_rows
    for k, c in vec.terms.items():
        bg = (k[1], k[2], len(k[3]))
        if bg not in offs:
            return False, None
        t, off = offs[bg]
        rhs[off + t.position(k)] = c
    sol = solve_preimage(mat, rhs)
    if sol is None:
        return False, None
    out = GraphVector(vec.colour)
    j0 = 0
    for s in src_idx:
        for j, key in enumerate(s.keys):
            if sol[j0 + j]:
                out.add_term(key, sol[j0 + j])
        j0 += len(s)
    return True, out


def solve_delta_prime_preimage(target):
    """Preimage of a homogeneous two-coloured vector under the non-wedge
    differential parts, over the unconstrained two-coloured basis."""
    bgs = target.bigrades()
    if not bgs:
        return GraphVector(BI_ORD)
    if len(bgs) != 1:
        raise ValueError("need a bigrade-homogeneous target")
    m, n, l = bgs[0]
    if n < 1 or l < 1:
        return None
    from .graphs import enumerate_classes

    src_keys = enumerate_classes(BI_ORD, m, n - 1, l - 1)
    tgt_keys = complex_basis("def_ass_fgraphs", (m, n, l))
    pos = {k: i for i, k in enumerate(tgt_keys)}
    mat = SparseRationalMatrix(len(tgt_keys), len(src_keys))
    for j, key in enumerate(src_keys):
        image = complexes.delta_prime(GraphVector.single(key)).vector
        for k, c in image.terms.items():
            mat[pos[k], j] = c
    rhs = [Fraction(0)] * len(tgt_keys)
    for k, c in target.terms.items():
        rhs[pos[k]] = c
    sol = solve_preimage(mat, rhs)
    if sol is None:
        return None
    out = GraphVector(BI_ORD)
    for j, key in enumerate(src_keys):
        if sol[j]:
            out.add_term(key, sol[j])
    return out


# ----------------------------------------------------------------- #
#  capped cohomology
# ----------------------------------------------------------------- #


def _layer_matrix(complex_id, degree, max_vertices):
    """Differential matrix from the whole degree layer, compressed to the
    vertex cap; returns (matrix, source dimension)."""
    srcs = [BasisIndex(complex_id, bg)
            for bg in degree_layer(complex_id, degree, max_vertices)]
    srcs = [s for s in srcs if len(s)]
    tgt_bgs = sorted({t for s in srcs
                      for t in target_bigrades(complex_id, s.bigrade)
                      if t[0] + t[1] <= max_vertices})
    tgts = {}
    total_rows = 0
    for bg in tgt_bgs:
        t = BasisIndex(complex_id, bg)
        if len(t):
            tgts[bg] = (t, total_rows)
            total_rows += len(t)
    cols = sum(len(s) for s in srcs)
    mat = SparseRationalMatrix(total_rows, cols)
    j0 = 0
    for s in srcs:
        for j, key in enumerate(s.keys):
            image = complex_differential(complex_id, GraphVector.single(key))
            for k, c in image.terms.items():
                bg = (k[1], k[2], len(k[3]))
                if bg in tgts:
                    t, off = tgts[bg]
                    mat[off + t.position(k), j0 + j] = c
        j0 += len(s)
    return mat, cols


def cohomology_dim(complex_id, degree, max_vertices):
    """dim ker - dim im of the capped degree-graded differential."""
    out_mat, dim_here = _layer_matrix(complex_id, degree, max_vertices)
    in_mat, _ = _layer_matrix(complex_id, degree - 1, max_vertices)
    return (dim_here - rank(out_mat)) - rank(in_mat)
