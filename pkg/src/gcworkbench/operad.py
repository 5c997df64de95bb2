"""Operadic insertion of graphs into graph vertices.

``reattachments`` expands a single composition ``host o_slot guest`` at the
labelled level: the guest occupies the slot, and every host edge that ended
on the slot is reconnected to each guest vertex in turn, one term per
function from those edges to the guest vertex set.  Every term has
coefficient +1 under the orientation convention: the edge sequence of a
term is the host's edge sequence (with reattached endpoints substituted in
place) followed by the guest's edge sequence.

``insert`` canonicalizes the expansion into a :class:`GraphVector`; terms
whose class is zero drop out silently.

Legal colour shapes:

* two-coloured host, white slot, two-coloured guest of the same mode;
* two-coloured host, black slot, one-colour guest;
* one-colour host and guest (any slot).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .graphs import BI_ORD, BI_SYM, ONE, GraphVector, canonicalize

# ----------------------------------------------------------------- #


def _relabel_maps(host, slot, guest):
    """Vertex relabelling (host map, guest map, result signature).

    Returns (hmap, gmap, colour, m, n) with hmap/gmap dicts old->new.
    """
    ch, m1, n1, _ = host
    cg, m2, n2, _ = guest
    if ch == ONE:
        if cg != ONE:
            raise ValueError("one-colour host takes one-colour guests")
        if not 1 <= slot <= n1:
            raise ValueError("slot %d out of range" % slot)
        hmap = {v: v if v < slot else v + n2 - 1 for v in range(1, n1 + 1)}
        del hmap[slot]
        gmap = {u: slot + u - 1 for u in range(1, n2 + 1)}
        return hmap, gmap, ONE, 0, n1 + n2 - 1
    if not 1 <= slot <= m1 + n1:
        raise ValueError("slot %d out of range" % slot)
    if slot <= m1:                      # white slot: same-mode two-coloured guest
        if cg != ch:
            raise ValueError("white-slot insertion needs a %s guest" % ch)
        m, n = m1 + m2 - 1, n1 + n2
        hmap = {}
        for w in range(1, m1 + 1):
            if w != slot:
                hmap[w] = w if w < slot else w + m2 - 1
        for j in range(1, n1 + 1):
            hmap[m1 + j] = m + j
        gmap = {}
        for u in range(1, m2 + 1):
            gmap[u] = slot + u - 1
        for j in range(1, n2 + 1):
            gmap[m2 + j] = m + n1 + j
        return hmap, gmap, ch, m, n
    # black slot: one-colour guest becomes blacks
    if cg != ONE:
        raise ValueError("black-slot insertion needs a one-colour guest")
    j0 = slot - m1
    m, n = m1, n1 + n2 - 1
    hmap = {w: w for w in range(1, m1 + 1)}
    for j in range(1, n1 + 1):
        if j != j0:
            hmap[m1 + j] = m1 + (j if j < j0 else j + n2 - 1)
    gmap = {u: m1 + j0 - 1 + u for u in range(1, n2 + 1)}
    return hmap, gmap, ch, m, n


def reattachments(host, slot, guest):
    """Labelled expansion of one insertion; list of raw terms, each +1."""
    hmap, gmap, colour, m, n = _relabel_maps(host, slot, guest)
    E1, E2 = host[3], guest[3]
    at = [i for i, e in enumerate(E1) if slot in e]
    other = {i: (E1[i][1] if E1[i][0] == slot else E1[i][0]) for i in at}
    gverts = range(1, guest[1] + guest[2] + 1)
    tail = [tuple(sorted((gmap[u], gmap[v]))) for u, v in E2]
    out = []
    for f in itertools.product(gverts, repeat=len(at)):
        edges = []
        hit = 0
        for i, (u, v) in enumerate(E1):
            if i in other:
                a, b = hmap[other[i]], gmap[f[hit]]
                hit += 1
            else:
                a, b = hmap[u], hmap[v]
            edges.append((a, b) if a < b else (b, a))
        edges.extend(tail)
        out.append((colour, m, n, tuple(edges)))
    return out


def _insert_term(host, slot, guest, coeff, out):
    """Accumulate one canonicalized term insertion into ``out``."""
    q = Fraction(coeff)
    for t in reattachments(host, slot, guest):
        res = canonicalize(t)
        if res is not None:
            out.add_term(res[0], q * res[1])


def insert(host, slot, guest, coeff=1):
    """Canonicalized insertion sum as a GraphVector.

    Host and guest may be single terms or GraphVectors; the result is
    bilinear.  ``slot`` always refers to the host labelling, so a vector
    host must be bigrade-homogeneous for the slot to be meaningful.
    """
    hterms, hcolour = _as_terms(host)
    gterms, _ = _as_terms(guest)
    out = GraphVector(hcolour)
    for ht, hc in hterms:
        for gt, gc in gterms:
            _insert_term(ht, slot, gt, coeff * hc * gc, out)
    return out


def _as_terms(x):
    """Normalise a term-or-vector argument to [(term, coeff)] pairs."""
    if isinstance(x, GraphVector):
        return list(x.items()), x.colour
    return [(x, Fraction(1))], x[0]


def act_on_blacks(host, gamma):
    """Sum of insertions of ``gamma`` over the black vertices of ``host``.

    One-colour hosts sum over all vertices.  Both arguments may be terms or
    GraphVectors; the result is bilinear and canonicalized.
    """
    hterms, hcolour = _as_terms(host)
    gterms, gcolour = _as_terms(gamma)
    if gcolour != ONE:
        raise ValueError("black-vertex action takes a one-colour gamma")
    out = GraphVector(hcolour)
    for ht, hc in hterms:
        _, m1, n1, _ = ht
        slots = range(m1 + 1, m1 + n1 + 1) if hcolour != ONE else range(1, n1 + 1)
        for gt, gc in gterms:
            q = hc * gc
            for s in slots:
                out = out + insert(ht, s, gt, q)
    return out
