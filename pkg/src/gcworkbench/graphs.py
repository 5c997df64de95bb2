"""Signed isomorphism classes of one- and two-coloured oriented graphs.

Conventions
-----------

* Vertices are the integers ``1 .. m+n``; in the two-coloured modes the
  whites are ``1 .. m`` and the blacks are ``m+1 .. m+n``.  One-colour
  graphs have ``m = 0``.
* An edge is an unordered pair, stored ``(u, v)`` with ``u < v``.  Swapping
  the endpoints of a single edge carries no sign; the orientation of a graph
  lives entirely in the *sequence order* of its edge list, and an odd
  permutation of that sequence flips the sign of the class.
* Tadpoles (loops) are rejected outright; a repeated edge makes the class
  zero (the transposition of the two parallel edges is an odd automorphism).
* Colour modes:

  ==========  ====================================================
  ``one``     all vertices interchangeable
  ``bi-ord``  whites form an ordered sequence (fixed pointwise),
              blacks interchangeable
  ``bi-sym``  whites interchangeable among themselves, blacks too
  ==========  ====================================================

The canonical representative of a class is the relabelling (within the
allowed symmetry group) whose ascending edge list is lexicographically
smallest, and the attached sign is the parity of the edge-sequence
permutation taking the input orientation to that sorted list.  A class is
Zero (canonicalize returns ``None``) exactly when two relabellings reach the
minimal edge list with opposite parities, i.e. when the graph has an
automorphism inducing an odd edge permutation.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._kernels import njit

# ----------------------------------------------------------------- #
#  colour modes and key helpers
# ----------------------------------------------------------------- #

ONE = "one"
BI_ORD = "bi-ord"
BI_SYM = "bi-sym"
COLOURS = (ONE, BI_ORD, BI_SYM)

#: default cap on the total number of vertices in enumerations
MAX_VERTICES = 9

# A graph term and a canonical key share the same shape:
#   (colour, whites, blacks, edges)  with edges a tuple of (u, v), u < v.


def graph(colour, whites, blacks, edges):
    """Build a validated (not yet canonical) graph term.

    Edge endpoints may be given in either order; they are normalised to
    ``u < v`` (no sign).  Raises ``ValueError`` for unknown colour modes,
    out-of-range endpoints, tadpoles, or a two-coloured graph without
    white vertices.
    """
    if colour not in COLOURS:
        raise ValueError("unknown colour mode %r" % (colour,))
    if colour == ONE:
        if whites != 0:
            raise ValueError("one-colour graphs have no white vertices")
    elif whites < 1:
        raise ValueError("two-coloured graphs need at least one white vertex")
    if blacks < 0 or whites < 0:
        raise ValueError("negative vertex count")
    nv = whites + blacks
    norm = []
    for e in edges:
        u, v = e
        if u == v:
            raise ValueError("tadpole at vertex %d" % u)
        if not (1 <= u <= nv and 1 <= v <= nv):
            raise ValueError("edge endpoint out of range: %r" % (e,))
        norm.append((u, v) if u < v else (v, u))
    return (colour, whites, blacks, tuple(norm))


def vertex_name(key, v):
    """Printable name of vertex v: w1..wm then b1..bn (one-colour: b only)."""
    m = key[1]
    return "w%d" % v if v <= m else "b%d" % (v - m)


def degrees(key):
    """Degree of every vertex, as a list indexed 0..m+n-1."""
    _, m, n, edges = key
    deg = [0] * (m + n)
    for u, v in edges:
        deg[u - 1] += 1
        deg[v - 1] += 1
    return deg


# ----------------------------------------------------------------- #
#  canonical search
# ----------------------------------------------------------------- #
#
# Branch-and-bound over allowed relabellings.  The ascending edge list is
# encoded as an integer ("code") whose bits run through the vertex pairs
# (1,2),(1,3),...,(1,N),(2,3),... from the most significant end, so the
# lexicographically smallest edge list is the largest code.  Slots are
# filled in order; after k slots the undecided bits of any completion are
# bounded above by packing each assigned row's remaining neighbours into
# its leftmost free columns and filling all later rows with ones.  Branches
# whose bound falls below the best complete code cannot contribute, and all
# branches reaching the best code are kept so that opposite-parity
# relabellings (zero classes) are detected.


@njit(cache=True)
def _canon_search(N, req, grp, adj, eu, ev):  # pragma: no cover - jitted
    TOT = N * (N - 1) // 2
    # rowstart[i] = bit position of pair (i, i+1), 0-based rows
    rowstart = np.zeros(N, dtype=np.int64)
    for i in range(N):
        rowstart[i] = i * N - i * (i + 1) // 2
    # tail[k] = mask of every position in rows >= k
    tail = np.zeros(N + 1, dtype=np.int64)
    for k in range(N - 1):
        tail[k] = (1 << (TOT - rowstart[k])) - 1

    perm = np.full(N, -1, dtype=np.int64)      # slot -> vertex
    slot_of = np.full(N, -1, dtype=np.int64)   # vertex -> slot
    cand = np.zeros(N + 1, dtype=np.int64)     # next vertex to try per depth
    dec = np.zeros(N + 1, dtype=np.int64)      # decided code per depth
    best_perm = np.full(N, -1, dtype=np.int64)
    pairs = np.zeros(max(eu.shape[0], 1), dtype=np.int64)

    l = eu.shape[0]
    best_code = np.int64(-1)
    best_sign = np.int64(0)
    zero = np.int64(0)

    k = 0
    while k >= 0:
        if k == N:
            code = dec[N]
            if code >= best_code:
                # leaf parity: insertion-sort the relabelled edge sequence
                for e in range(l):
                    a = slot_of[eu[e]]
                    b = slot_of[ev[e]]
                    if a > b:
                        a, b = b, a
                    pairs[e] = a * N + b
                swaps = 0
                for e in range(1, l):
                    x = pairs[e]
                    j = e - 1
                    while j >= 0 and pairs[j] > x:
                        pairs[j + 1] = pairs[j]
                        j -= 1
                        swaps += 1
                    pairs[j + 1] = x
                s = 1 if (swaps & 1) == 0 else -1
                if code > best_code:
                    best_code = code
                    best_sign = s
                    zero = 0
                    for i in range(N):
                        best_perm[i] = perm[i]
                elif s != best_sign:
                    zero = 1
            k -= 1
            if k >= 0:
                slot_of[perm[k]] = -1
                perm[k] = -1
            continue

        u = cand[k]
        placed = False
        newdec = np.int64(0)
        while u < N:
            if slot_of[u] < 0 and grp[u] == req[k]:
                a = adj[u]
                newdec = dec[k]
                for j in range(k):
                    if (a >> perm[j]) & 1:
                        newdec |= 1 << (TOT - 1 - (rowstart[j] + k - j - 1))
                # optimistic completion bound
                ub = newdec | tail[k + 1]
                for i in range(k + 1):
                    vi = u if i == k else perm[i]
                    c = 0
                    rem = adj[vi]
                    for v in range(N):
                        if (rem >> v) & 1 and slot_of[v] < 0 and v != u:
                            c += 1
                    if c > 0:
                        start = rowstart[i] + (k + 1) - i - 1
                        ub |= ((1 << c) - 1) << (TOT - start - c)
                if ub >= best_code:
                    placed = True
                    break
            u += 1
        if not placed:
            cand[k] = 0
            k -= 1
            if k >= 0:
                slot_of[perm[k]] = -1
                perm[k] = -1
            continue
        perm[k] = u
        slot_of[u] = k
        dec[k + 1] = newdec
        cand[k] = u + 1
        k += 1
        cand[k] = 0

    return zero, best_sign, best_perm


def _run_search(m, n, edges, sym_whites):
    """Search the reduced graph (0-based vertices, whites first)."""
    N = m + n
    req = np.zeros(N, dtype=np.int64)
    grp = np.zeros(N, dtype=np.int64)
    if sym_whites is None:          # one colour: everything interchangeable
        pass
    elif sym_whites:                # whites one cell, blacks another
        for v in range(m, N):
            grp[v] = 1
        for k in range(m, N):
            req[k] = 1
    else:                           # whites pinned pointwise
        for v in range(m):
            grp[v] = v + 1
            req[v] = v + 1
    adj = np.zeros(N, dtype=np.int64)
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    zero, sign, perm = _canon_search(N, req, grp, adj, eu, ev)
    if zero:
        return None
    slot = [0] * N
    for s in range(N):
        slot[perm[s]] = s
    out = []
    for u, v in edges:
        a, b = slot[u], slot[v]
        out.append((a, b) if a < b else (b, a))
    out.sort()
    return out, int(sign)


@lru_cache(maxsize=1 << 18)
def _canonicalize_cached(colour, m, n, edges):
    # repeated undirected edge: odd automorphism swapping the two copies
    if len(set(edges)) != len(edges):
        return None

    # strip isolated vertices; they sit at the end of their colour block in
    # any minimal labelling and contribute neither signs nor automorphisms
    deg = [0] * (m + n)
    for u, v in edges:
        deg[u - 1] += 1
        deg[v - 1] += 1
    if colour == BI_ORD:
        live_w = list(range(1, m + 1))          # ordered whites never move
    else:
        live_w = [v for v in range(1, m + 1) if deg[v - 1] > 0]
    live_b = [v for v in range(m + 1, m + n + 1) if deg[v - 1] > 0]
    mr, nr = len(live_w), len(live_b)
    relab = {v: i for i, v in enumerate(live_w)}
    relab.update({v: mr + i for i, v in enumerate(live_b)})
    red = [(relab[u], relab[v]) for u, v in edges]
    red = [(u, v) if u < v else (v, u) for u, v in red]

    if colour == ONE:
        trivial = mr + nr <= 1
        sym_whites = None
    elif colour == BI_SYM:
        trivial = mr <= 1 and nr <= 1
        sym_whites = True
    else:
        trivial = nr <= 1
        sym_whites = False

    if trivial:
        pairs = sorted(range(len(red)), key=lambda i: red[i])
        sign = _perm_sign(pairs)
        out = sorted(red)
    else:
        res = _run_search(mr, nr, red, sym_whites)
        if res is None:
            return None
        out, sign = res

    # undo the stripping: white labels are unchanged, black labels shift up
    shift = m - mr
    full = []
    for u, v in out:
        uu = u + 1 if u < mr else u + 1 + shift
        vv = v + 1 if v < mr else v + 1 + shift
        full.append((uu, vv))
    key = (colour, m, n, tuple(full))
    return key, sign


def _perm_sign(order):
    """Sign of the permutation given as an image list."""
    seen = [False] * len(order)
    sign = 1
    for i in range(len(order)):
        if seen[i]:
            continue
        j, cyc = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            cyc += 1
        if cyc % 2 == 0:
            sign = -sign
    return sign


def canonicalize(g):
    """Canonical form of a graph term.

    Returns ``(key, sign)`` with ``sign`` in {+1, -1}, or ``None`` when the
    class is zero.  ``g`` may be any validated term; run :func:`graph` first
    for raw input.
    """
    colour, m, n, edges = g
    return _canonicalize_cached(colour, m, n, tuple(edges))


# ----------------------------------------------------------------- #
#  enumeration
# ----------------------------------------------------------------- #


def _connected_components(nv, edges):
    parent = list(range(nv + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    comps = {}
    for v in range(1, nv + 1):
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


def enumerate_classes(colour, whites, blacks, edge_count, *,
                      trivalent_black=False, connected=False,
                      no_solely_black=False, max_vertices=MAX_VERTICES):
    """All nonzero canonical classes at one (m, n, l) bigrade.

    Constraints: tadpoles are always excluded; ``trivalent_black`` demands
    every black (one-colour: every) vertex has degree >= 3; ``connected``
    demands a single component; ``no_solely_black`` rejects graphs with a
    connected component containing no white vertex.  Deterministic
    ascending key order.
    """
    if colour not in COLOURS:
        raise ValueError("unknown colour mode %r" % (colour,))
    nv = whites + blacks
    if nv > max_vertices:
        raise ValueError("vertex count %d exceeds cap %d" % (nv, max_vertices))
    if colour == ONE and whites:
        raise ValueError("one-colour graphs have no white vertices")
    if colour != ONE and whites < 1:
        raise ValueError("two-coloured graphs need at least one white vertex")
    pairs = [(u, v) for u in range(1, nv + 1) for v in range(u + 1, nv + 1)]
    out = set()
    first_black = whites + 1
    for sub in itertools.combinations(pairs, edge_count):
        deg = [0] * (nv + 1)
        for u, v in sub:
            deg[u] += 1
            deg[v] += 1
        if trivalent_black and any(deg[v] < 3 for v in range(first_black, nv + 1)):
            continue
        if connected or no_solely_black:
            comps = _connected_components(nv, sub)
            if connected and len(comps) > 1:
                continue
            if no_solely_black and any(all(v > whites for v in c) for c in comps):
                continue
        res = canonicalize((colour, whites, blacks, sub))
        if res is not None:
            out.add(res[0])
    return sorted(out)


# ----------------------------------------------------------------- #
#  graph vectors
# ----------------------------------------------------------------- #


class GraphVector:
    """Finite rational linear combination of canonical graph keys.

    Coefficients are exact ``Fraction``s; zero coefficients are dropped
    eagerly.  All keys in one vector share a colour mode; mixing modes
    raises ``ValueError``.
    """

    __slots__ = ("colour", "terms")

    def __init__(self, colour, terms=None):
        if colour not in COLOURS:
            raise ValueError("unknown colour mode %r" % (colour,))
        self.colour = colour
        self.terms = {}
        if terms:
            for key, coeff in terms.items() if hasattr(terms, "items") else terms:
                self.add_term(key, coeff)

    @classmethod
    def single(cls, g, coeff=1):
        """Vector with one (canonicalized) term; Zero classes give 0."""
        v = cls(g[0])
        res = canonicalize(g)
        if res is not None:
            key, sign = res
            v.add_term(key, Fraction(coeff) * sign)
        return v

    @classmethod
    def zero(cls, colour):
        return cls(colour)

    def add_term(self, key, coeff):
        """Accumulate coeff on an (already canonical) key, in place."""
        if key[0] != self.colour:
            raise ValueError("colour mismatch: %s vector, %s key"
                             % (self.colour, key[0]))
        c = self.terms.get(key, Fraction(0)) + Fraction(coeff)
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)
        return self

    def __add__(self, other):
        if self.colour != other.colour:
            raise ValueError("colour mismatch in vector addition")
        out = GraphVector(self.colour, self.terms)
        for key, c in other.terms.items():
            out.add_term(key, c)
        return out

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar):
        out = GraphVector(self.colour)
        q = Fraction(scalar)
        if q:
            for key, c in self.terms.items():
                out.terms[key] = c * q
        return out

    __mul__ = __rmul__

    def bigrade_part(self, m, n, l):
        """Homogeneous (m, n, l) part."""
        out = GraphVector(self.colour)
        for key, c in self.terms.items():
            if key[1] == m and key[2] == n and len(key[3]) == l:
                out.terms[key] = c
        return out

    def bigrades(self):
        """Sorted list of (m, n, l) bigrades with a nonzero term."""
        return sorted({(k[1], k[2], len(k[3])) for k in self.terms})

    def is_zero(self):
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        return (isinstance(other, GraphVector)
                and self.colour == other.colour and self.terms == other.terms)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        if not self.terms:
            return "<GraphVector %s 0>" % self.colour
        bits = ["%s*%s" % (c, key_str(k)) for k, c in self.items()]
        return "<GraphVector %s>" % " + ".join(bits)


def add(u, v):
    return u + v


def scale(q, v):
    return Fraction(q) * v


def extract(v, m, n, l):
    return v.bigrade_part(m, n, l)


# ----------------------------------------------------------------- #
#  serialization
# ----------------------------------------------------------------- #


def key_str(key):
    """Canonical text form  c:<colour>;v:<m>,<n>;e:(a,b)(c,d)..."""
    colour, m, n, edges = key
    es = "".join("(%s,%s)" % (vertex_name(key, u), vertex_name(key, v))
                 for u, v in edges)
    return "c:%s;v:%d,%d;e:%s" % (colour, m, n, es)


_KEY_RE = re.compile(r"^c:(one|bi-ord|bi-sym);v:(\d+),(\d+);e:((?:\([wb]\d+,[wb]\d+\))*)$")
_EDGE_RE = re.compile(r"\(([wb])(\d+),([wb])(\d+)\)")


def parse_key(s):
    """Parse the canonical text form back into a (raw) graph term."""
    mobj = _KEY_RE.match(s.strip())
    if not mobj:
        raise ValueError("malformed graph key: %r" % s)
    colour, m, n = mobj.group(1), int(mobj.group(2)), int(mobj.group(3))
    edges = []
    for cu, du, cv, dv in _EDGE_RE.findall(mobj.group(4)):
        u = int(du) if cu == "w" else m + int(du)
        v = int(dv) if cv == "w" else m + int(dv)
        edges.append((u, v))
    return graph(colour, m, n, edges)


def term_json(key, coeff):
    """JSON-ready dict for one term."""
    colour, m, n, edges = key
    return {
        "colour": colour,
        "whites": m,
        "blacks": n,
        "edges": [[vertex_name(key, u), vertex_name(key, v)] for u, v in edges],
        "coeff": str(Fraction(coeff)),
    }


def parse_term_json(d):
    """Inverse of :func:`term_json`; returns (raw term, Fraction)."""
    m = int(d["whites"])
    edges = []
    for u, v in d["edges"]:
        edges.append(tuple(int(x[1:]) if x[0] == "w" else m + int(x[1:])
                           for x in (u, v)))
    g = graph(d["colour"], m, int(d["blacks"]), edges)
    return g, Fraction(d.get("coeff", "1"))


def vector_json(v):
    return [term_json(k, c) for k, c in v.items()]


# ----------------------------------------------------------------- #
#  stock graphs
# ----------------------------------------------------------------- #


def one_vertex():
    """The one-colour operadic unit: a single vertex, no edges."""
    return (ONE, 0, 1, ())


def edge():
    """The one-colour single edge."""
    return (ONE, 0, 2, ((1, 2),))


def k4():
    """The complete graph on four vertices (smallest nonzero degree-0 class)."""
    return (ONE, 0, 4, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)))


def white_pair(colour=BI_ORD):
    """Two whites, no edges: the wedge-product generator image."""
    return (colour, 2, 0, ())


def black_white_edge(colour=BI_ORD):
    """One white joined to one black: the mixed generator image."""
    return (colour, 1, 1, ((1, 2),))


def three_star(colour=BI_ORD):
    """Three whites all joined to a single black."""
    return (colour, 3, 1, ((1, 4), (2, 4), (3, 4)))
