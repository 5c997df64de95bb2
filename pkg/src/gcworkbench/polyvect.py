"""Polyvector-field realization of graph operators.

Graphs act on polynomial polyvector fields: every vertex of a graph
receives a polyvector argument, every edge becomes a second-order
contraction operator, and the remaining factors are wedge-multiplied.
This module provides the exact symbolic engine for those evaluations
(rational coefficients throughout), the induced multilinear operators,
and checkers for the operad-morphism and algebra-relation identities.

A polyvector in dimension d is a polynomial in even coordinates
x1..xd and odd symbols psi_1..psi_d (written p1..pd in literals).
Odd symbols anticommute and square to zero; monomials are stored with
the odd part normal-ordered by increasing index, and every reordering
tracks its sign.
"""

import re
from fractions import Fraction

from .graphs import ONE, COLOURS, GraphVector

# ---------------------------------------------------------------------------
# monomial helpers
#
# A term key is (xexp, omask): xexp a tuple of exponents for x1..xd,
# omask a bit mask over psi_1..psi_d (bit a-1 for psi_a).  The same shape
# is reused for the internal multi-block tensors in phi, where the tuple
# and the mask run over blocks*d slots.
# ---------------------------------------------------------------------------


def _mul_terms(k1, c1, k2, c2):
    """Product of two monomials, or None if an odd symbol repeats."""
    x1, o1 = k1
    x2, o2 = k2
    if o1 & o2:
        return None
    # normal order: word(o1) then word(o2), each ascending.  Count the
    # inversions between the two words.
    sign = 0
    m = o2
    while m:
        low = m & -m
        sign += bin(o1 >> low.bit_length()).count("1")
        m ^= low
    coeff = c1 * c2 if (sign & 1) == 0 else -c1 * c2
    return (tuple(a + b for a, b in zip(x1, x2)), o1 | o2), coeff


class Polyvector:
    """Polynomial polyvector field with exact rational coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[k] = c

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim):
        return cls(dim)

    @classmethod
    def monomial(cls, dim, coeff, xexp=(), odd=()):
        """Single term; xexp maps positionally onto x1..xd, odd lists psi indices."""
        ex = list(xexp) + [0] * (dim - len(xexp))
        if len(ex) != dim or min(ex, default=0) < 0:
            raise ValueError("bad exponent vector")
        mask = 0
        sign = 1
        for a in odd:
            if not 1 <= a <= dim:
                raise ValueError("odd index out of range")
            bit = 1 << (a - 1)
            if mask & bit:
                return cls(dim)
            # insertion position sign: count present symbols above a
            if bin(mask >> a).count("1") & 1:
                sign = -sign
            mask |= bit
        return cls(dim, {(tuple(ex), mask): Fraction(coeff) * sign})

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        self._compat(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Polyvector(self.dim, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Polyvector(self.dim, {k: -c for k, c in self.terms.items()})

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return Polyvector(self.dim)
        return Polyvector(self.dim, {k: scalar * c for k, c in self.terms.items()})

    def wedge(self, other):
        """Graded product; odd symbols anticommute."""
        self._compat(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                prod = _mul_terms(k1, c1, k2, c2)
                if prod is None:
                    continue
                k, c = prod
                s = out.get(k, 0) + c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Polyvector(self.dim, out)

    __mul__ = wedge

    # -- queries ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self):
        degs = {bin(o).count("1") for (_, o) in self.terms}
        return len(degs) <= 1

    def odd_degree(self):
        """Common odd degree of all terms; None for 0 or mixed."""
        degs = {bin(o).count("1") for (_, o) in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def parity(self):
        d = self.odd_degree()
        return None if d is None else d & 1

    def _compat(self, other):
        if not isinstance(other, Polyvector) or other.dim != self.dim:
            raise ValueError("dimension mismatch")

    def __eq__(self, other):
        return (isinstance(other, Polyvector) and other.dim == self.dim
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (xe, om) in sorted(self.terms):
            c = self.terms[(xe, om)]
            part = [] if c == 1 and (any(xe) or om) else [str(c)]
            if c == -1 and (any(xe) or om):
                part = ["-"]
            for a, e in enumerate(xe):
                if e == 1:
                    part.append("x%d" % (a + 1))
                elif e > 1:
                    part.append("x%d^%d" % (a + 1, e))
            for a in range(self.dim):
                if om >> a & 1:
                    part.append("p%d" % (a + 1))
            bits.append(" ".join(part) if part != ["-"] else "-" + " ".join(part[1:] or ["1"]))
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# literal parser:  "3/2 x1^2 x3 p2 p4 + -1 x2"  (pk denotes psi_k)
# ---------------------------------------------------------------------------

_FACT_RE = re.compile(r"^(x|p)(\d+)(?:\^(\d+))?$")


def parse_polyvector(text, dim):
    """Parse the `+`-separated monomial syntax into a Polyvector."""
    out = Polyvector.zero(dim)
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        coeff = Fraction(1)
        xexp = [0] * dim
        odd = []
        for tok in chunk.split():
            m = _FACT_RE.match(tok)
            if m:
                kind, idx, power = m.group(1), int(m.group(2)), m.group(3)
                if not 1 <= idx <= dim:
                    raise ValueError("variable index %d out of range for d=%d" % (idx, dim))
                if kind == "x":
                    xexp[idx - 1] += int(power or 1)
                else:
                    if power not in (None, "1"):
                        raise ValueError("odd symbols do not take powers")
                    odd.append(idx)
            elif tok == "-":
                coeff *= -1
            else:
                coeff *= Fraction(tok)
        out = out + Polyvector.monomial(dim, coeff, xexp, odd)
    return out


# ---------------------------------------------------------------------------
# the graph-to-operator map phi
#
# Internally a tensor of B arguments lives in one big super-ring whose
# variable slots are indexed by (block, axis): slot = block*d + axis.
# Embedding the arguments block by block realizes the tensor product with
# no extra signs because block words are already in ascending slot order.
# ---------------------------------------------------------------------------


def _embed(term_key, coeff, block, dim, nblocks):
    xe, om = term_key
    big_x = [0] * (nblocks * dim)
    for a, e in enumerate(xe):
        big_x[block * dim + a] = e
    return (tuple(big_x), om << (block * dim)), coeff


def _dx(terms, slot):
    out = {}
    for (xe, om), c in terms.items():
        e = xe[slot]
        if not e:
            continue
        nxe = list(xe)
        nxe[slot] = e - 1
        k = (tuple(nxe), om)
        s = out.get(k, 0) + c * e
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _dpsi(terms, slot):
    """Left derivative with respect to the odd slot variable."""
    bit = 1 << slot
    out = {}
    for (xe, om), c in terms.items():
        if not om & bit:
            continue
        sign = -1 if bin(om & (bit - 1)).count("1") & 1 else 1
        k = (xe, om ^ bit)
        s = out.get(k, 0) + c * sign
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _delta_edge(terms, u, v, dim):
    """One edge contraction between blocks u and v (1-based vertex ids)."""
    out = {}
    for a in range(dim):
        su = (u - 1) * dim + a
        sv = (v - 1) * dim + a
        for part in (_dx(_dpsi(terms, sv), su), _dx(_dpsi(terms, su), sv)):
            for k, c in part.items():
                s = out.get(k, 0) + c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
    return out


def _contract(big, dim, nblocks):
    """Wedge all blocks together into a dimension-d polyvector."""
    out = {}
    for (xe, om), c in big.items():
        tx = [0] * dim
        for slot, e in enumerate(xe):
            tx[slot % dim] += e
        # merge the odd word (ascending big-slot order) into ascending axes
        axes = [slot % dim for slot in range(nblocks * dim) if om >> slot & 1]
        mask = 0
        sign = 0
        bad = False
        for a in axes:
            bit = 1 << a
            if mask & bit:
                bad = True
                break
            sign += bin(mask >> (a + 1)).count("1")
            mask |= bit
        if bad:
            continue
        cc = -c if sign & 1 else c
        k = (tuple(tx), mask)
        s = out.get(k, 0) + cc
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def phi(term, args, black=None):
    """Evaluate a graph term as a multidifferential operator.

    One-colour graphs take one argument per vertex.  Two-coloured graphs
    take one argument per white vertex, while the black vertices receive
    the designated ``black`` polyvector -- either a single one fed to all
    of them, or a sequence giving each black vertex its own.  The edge
    contractions compose as an operator product read off the edge
    sequence, so the last listed edge acts first; transposing two edges
    flips the overall sign, which is what makes the evaluation well
    defined on oriented classes.
    """
    colour, m, n, edges = term
    if colour == ONE:
        per_vertex = list(args)
        if len(per_vertex) != n:
            raise ValueError("expected %d arguments, got %d" % (n, len(per_vertex)))
    else:
        if len(args) != m:
            raise ValueError("expected %d white arguments, got %d" % (m, len(args)))
        if isinstance(black, (list, tuple)):
            if len(black) != n:
                raise ValueError("expected %d black arguments, got %d" % (n, len(black)))
            per_vertex = list(args) + list(black)
        else:
            if n and black is None:
                raise ValueError("graph has black vertices but no black argument")
            per_vertex = list(args) + [black] * n
    if not per_vertex:
        raise ValueError("empty graph")
    dim = per_vertex[0].dim
    nb = len(per_vertex)
    big = {}
    for v, arg in enumerate(per_vertex):
        if arg.dim != dim:
            raise ValueError("dimension mismatch")
        if v == 0:
            for k, c in arg.terms.items():
                big[_embed(k, c, 0, dim, nb)[0]] = c
        else:
            nxt = {}
            for bk, bc in big.items():
                for k, c in arg.terms.items():
                    ek, _ = _embed(k, c, v, dim, nb)
                    prod = _mul_terms(bk, bc, ek, c)
                    if prod is None:
                        continue
                    kk, cc = prod
                    s = nxt.get(kk, 0) + cc
                    if s:
                        nxt[kk] = s
                    else:
                        nxt.pop(kk, None)
            big = nxt
        if not big:
            return Polyvector.zero(dim)
    for (u, v) in reversed(edges):
        big = _delta_edge(big, u, v, dim)
        if not big:
            return Polyvector.zero(dim)
    return Polyvector(dim, _contract(big, dim, nb))


def phi_vector(vec, args, black=None):
    """phi extended linearly over a GraphVector."""
    out = None
    for key, coeff in vec.items():
        val = coeff * phi(key, args, black)
        out = val if out is None else out + val
    if out is None:
        if args:
            dim = args[0].dim
        elif isinstance(black, (list, tuple)):
            dim = black[0].dim
        else:
            dim = black.dim
        return Polyvector.zero(dim)
    return out


# ---------------------------------------------------------------------------
# exhaustive graded test arguments
# ---------------------------------------------------------------------------


def monomial_pool(dim, max_degree):
    """Every monomial of combined degree (polynomial + odd) up to the cap,
    in a fixed deterministic order."""
    import itertools

    out = []
    for total in range(max_degree + 1):
        for ex in itertools.product(range(total + 1), repeat=dim):
            rem = total - sum(ex)
            if rem < 0:
                continue
            for om in range(1 << dim):
                if bin(om).count("1") != rem:
                    continue
                odd = [a + 1 for a in range(dim) if om >> a & 1]
                out.append(Polyvector.monomial(dim, 1, ex, odd))
    return out


def argument_tuples(dim, count, max_degree):
    """All tuples of ``count`` monomials whose degrees sum to at most the
    cap.  This keeps multilinear identity checks exhaustive per degree
    while staying far smaller than a full per-argument product."""
    pool = monomial_pool(dim, max_degree)
    degs = []
    for p in pool:
        (xe, om), = p.terms.keys()
        degs.append(sum(xe) + bin(om).count("1"))

    def rec(i, left):
        if i == count:
            yield ()
            return
        for j, p in enumerate(pool):
            if degs[j] > left:
                continue
            for rest in rec(i + 1, left - degs[j]):
                yield (p,) + rest

    return rec(0, max_degree)


def _parity(p):
    q = p.parity()
    return 0 if q is None else q


# ---------------------------------------------------------------------------
# operad-morphism checker
#
# Insertions are expanded through the raw labelled reattachment terms so
# each vertex keeps its identity and can carry its own graded argument;
# comparing canonical classes instead would scramble the argument slots.
# ---------------------------------------------------------------------------


def _term_of(g):
    if isinstance(g, tuple):
        return g
    items = list(g.items())
    if len(items) != 1 or items[0][1] != 1:
        raise ValueError("need a single graph term")
    return items[0][0]


def _split_args(term, per_vertex):
    colour, m, n, _ = term
    if colour == ONE:
        return per_vertex, None
    return per_vertex[:m], per_vertex[m:]


def check_operad_morphism(g1, g2, slot, dim, max_degree=2):
    """Compare phi(g1 o_slot g2) with phi(g1) o_slot phi(g2).

    The direct side feeds the composite graph in its own block order
    (whites by label, then blacks by label); the composed side feeds the
    guest's whole argument block at the slot position.  Composition in
    the endomorphism operad of a graded space therefore carries the
    Koszul sign of the shuffle between those two orders, counted over
    odd-parity arguments; one-colour insertion relabels consecutively, so
    there the sign is always one.

    Runs over every graded argument tuple within the combined degree cap
    and returns ``(ok, checked, witness)`` where the witness names the
    first failing argument tuple, if any.
    """
    from .operad import _relabel_maps, reattachments

    t1 = _term_of(g1)
    t2 = _term_of(g2)
    hmap, gmap, colour, m, n = _relabel_maps(t1, slot, t2)
    raw = reattachments(t1, slot, t2)
    nargs = (t1[1] + t1[2]) - 1 + (t2[1] + t2[2])

    # composed evaluation order as composite labels, aligned with the
    # argument sequence it consumes
    order = []
    for v in range(1, t1[1] + t1[2] + 1):
        if v == slot:
            order.extend(gmap[u] for u in range(1, t2[1] + t2[2] + 1))
        else:
            order.append(hmap[v])

    checked = 0
    for tup in argument_tuples(dim, nargs, max_degree):
        host_args = {}
        pos = 0
        for v in range(1, t1[1] + t1[2] + 1):
            if v == slot:
                continue
            host_args[v] = tup[pos]
            pos += 1
        guest_args = list(tup[pos:])

        # direct evaluation on the raw labelled insertion terms
        per_vertex = [None] * (m + n)
        for v, w in hmap.items():
            if v != slot:
                per_vertex[w - 1] = host_args[v]
        for v, w in gmap.items():
            per_vertex[w - 1] = guest_args[v - 1]
        lhs = Polyvector.zero(dim)
        for rt in raw:
            a, b = _split_args(rt, per_vertex)
            lhs = lhs + phi(rt, a, b)

        # composition of the two evaluators
        ga, gb = _split_args(t2, guest_args)
        inner = phi(t2, ga, gb)
        outer_vertex = [host_args.get(v) for v in range(1, t1[1] + t1[2] + 1)]
        outer_vertex[slot - 1] = inner
        oa, ob = _split_args(t1, outer_vertex)
        rhs = phi(t1, oa, ob)

        sign = 1
        argseq = []
        for v in range(1, t1[1] + t1[2] + 1):
            if v == slot:
                argseq.extend(guest_args)
            else:
                argseq.append(host_args[v])
        for i in range(len(order)):
            if not _parity(argseq[i]):
                continue
            for j in range(i + 1, len(order)):
                if order[i] > order[j] and _parity(argseq[j]):
                    sign = -sign

        if not (lhs - sign * rhs).is_zero():
            return False, checked, repr(tup)
        checked += 1
    return True, checked, None


# ---------------------------------------------------------------------------
# generator-relation checker
#
# The operations are the images of the three generators: the product
# (white pair), the bracket (one-colour edge), and the black action
# (black-white edge).  The sign in each relation depends only on the
# parities of the arguments; the patterns below were pinned by
# exhaustive evaluation and are exactly the ones the evaluations
# satisfy identically.
# ---------------------------------------------------------------------------

RELATION_IDS = ("assoc", "jacobi", "ncg-compat-1", "ncg-compat-2",
                "gerstenhaber-compat")


def _gen_ops():
    from .graphs import (black_white_edge, canonicalize, edge, white_pair)

    ek = canonicalize(edge())[0]
    mk = canonicalize(white_pair())[0]
    wk = canonicalize(black_white_edge())[0]
    lam = lambda a, b: phi(ek, [a, b])
    mu = lambda a, b: phi(mk, [a, b])
    act = lambda b, w: phi(wk, [w], black=b)
    return lam, mu, act


def relation_defect(relation, a, b, c):
    """The (identically vanishing) defect of one named relation."""
    lam, mu, act = _gen_ops()
    pa, pb, pc = _parity(a), _parity(b), _parity(c)
    s = lambda bit: -1 if bit & 1 else 1
    if relation == "assoc":
        return mu(mu(a, b), c) - mu(a, mu(b, c))
    if relation == "jacobi":
        return (lam(a, lam(b, c))
                - s(pa + 1) * lam(lam(a, b), c)
                - s((pa + 1) * (pb + 1)) * lam(b, lam(a, c)))
    if relation == "ncg-compat-1":
        # a is the acting vector, b and c sit in the algebra slots
        return (act(a, mu(b, c))
                - s(pa * pc) * mu(act(a, b), c)
                - s(pb) * mu(b, act(a, c)))
    if relation == "ncg-compat-2":
        return (act(lam(a, b), c)
                + s(pc + pa * pb) * act(a, act(b, c))
                + s(pc) * act(b, act(a, c)))
    if relation == "gerstenhaber-compat":
        return (lam(a, mu(b, c))
                - mu(lam(a, b), c)
                - s(pb * (pa + 1)) * mu(b, lam(a, c)))
    raise ValueError("unknown relation %r" % (relation,))


def relation_check(relation, dim, max_degree=2):
    """Exhaustively verify a named relation; (ok, checked, witness)."""
    checked = 0
    for a, b, c in argument_tuples(dim, 3, max_degree):
        if not relation_defect(relation, a, b, c).is_zero():
            return False, checked, repr((a, b, c))
        checked += 1
    return True, checked, None


# ---------------------------------------------------------------------------
# formal series and the twisted product
# ---------------------------------------------------------------------------


class FormalSeries:
    """Polyvector coefficients of powers of the formal parameter, kept
    modulo the power after the stated truncation order."""

    __slots__ = ("dim", "truncation", "coeffs")

    def __init__(self, dim, truncation, coeffs=None):
        self.dim = dim
        self.truncation = truncation
        self.coeffs = {}
        if coeffs:
            for p, v in coeffs.items():
                if 0 <= p <= truncation and not v.is_zero():
                    self.coeffs[p] = v

    @classmethod
    def constant(cls, value, truncation):
        return cls(value.dim, truncation, {0: value})

    def coeff(self, p):
        return self.coeffs.get(p, Polyvector.zero(self.dim))

    def shift(self, p):
        """Multiply by the formal parameter to the given power."""
        return FormalSeries(self.dim, self.truncation,
                            {q + p: v for q, v in self.coeffs.items()})

    def __add__(self, other):
        if other.dim != self.dim or other.truncation != self.truncation:
            raise ValueError("series mismatch")
        out = dict(self.coeffs)
        for p, v in other.coeffs.items():
            w = out.get(p)
            out[p] = v if w is None else w + v
        return FormalSeries(self.dim, self.truncation, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        return FormalSeries(self.dim, self.truncation,
                            {p: scalar * v for p, v in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, FormalSeries) and other.dim == self.dim
                and other.truncation == self.truncation
                and other.coeffs == self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join("h^%d (%r)" % (p, self.coeffs[p])
                          for p in sorted(self.coeffs))


class TwistedAssStructure:
    """Multilinear products obtained by feeding a fixed polyvector into
    every black vertex of a two-coloured element.

    The arity-m product collects, per black vertex count n, the
    evaluations of the (m, n) part with the twisting polyvector in all
    black slots, weighted by the n-th parameter power over n factorial.
    """

    __slots__ = ("source", "pi", "truncation", "_by_arity")

    def __init__(self, source, pi, truncation):
        from .graphs import BI_ORD

        if getattr(source, "colour", None) != BI_ORD:
            raise ValueError("the twist source must be two-coloured")
        self.source = source
        self.pi = pi
        self.truncation = truncation
        self._by_arity = {}
        for key, coeff in source.items():
            self._by_arity.setdefault(key[1], []).append((key, coeff))

    def arities(self):
        return sorted(self._by_arity)

    def mu(self, m, args):
        """The arity-m product as a truncated formal series."""
        if len(args) != m:
            raise ValueError("expected %d arguments" % m)
        out = FormalSeries(self.pi.dim, self.truncation)
        fact = [Fraction(1)]
        for key, coeff in self._by_arity.get(m, ()):
            n = key[2]
            if n > self.truncation:
                continue
            while len(fact) <= n:
                fact.append(fact[-1] * len(fact))
            val = phi(key, list(args), self.pi)
            if val.is_zero():
                continue
            term = FormalSeries(self.pi.dim, self.truncation,
                                {n: (coeff / fact[n]) * val})
            out = out + term

        return out


def poisson_defect(pi):
    """Image of the one-colour edge on the pair (pi, pi); zero exactly
    when the bivector satisfies the Poisson condition."""
    from .graphs import canonicalize, edge

    return phi(canonicalize(edge())[0], [pi, pi])


def twist_by_poisson(source, pi, truncation):
    """Build the twisted products from a two-coloured element.

    ``source`` may be a GraphVector, a wrapper with a ``vector``
    attribute, or a cone element with a ``def_part``.
    """
    vec = getattr(source, "def_part", None)
    if vec is None:
        vec = getattr(source, "vector", source)
    return TwistedAssStructure(vec, pi, truncation)


def ainf_relation_check(structure, arity, hbar_order=None, max_degree=2):
    """Verify the associativity-tower identity of one arity.

    The identity sums every way of nesting an inner product inside an
    outer one, with the usual alternating placement sign and a parity
    sign when an odd-arity inner product passes leading arguments.
    Returns ``(ok, checked, witness)``.
    """
    t = structure
    if hbar_order is not None and hbar_order != t.truncation:
        t = TwistedAssStructure(t.source, t.pi, hbar_order)
    checked = 0
    for tup in argument_tuples(t.pi.dim, arity, max_degree):
        total = FormalSeries(t.pi.dim, t.truncation)
        for s in range(1, arity + 1):
            for r in range(0, arity - s + 1):
                u = arity - s - r
                inner = t.mu(s, list(tup[r:r + s]))
                sign = -1 if (r + s * u) & 1 else 1
                if s & 1:
                    lead = sum(_parity(a) for a in tup[:r])
                    if lead & 1:
                        sign = -sign
                for p, v in inner.coeffs.items():
                    outer_args = list(tup[:r]) + [v] + list(tup[r + s:])
                    contrib = t.mu(r + 1 + u, outer_args).shift(p)
                    total = total + sign * contrib
        if not total.is_zero():
            return False, checked, repr(tup)
        checked += 1
    return True, checked, None
