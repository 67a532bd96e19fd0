"""Monotone Galois connections (adjunctions) on and between finite posets.

A connection is a pair of monotone maps (lower, upper) with
lower(p) <= q  iff  p <= upper(q).  On one carrier these form the monoid
Adj(P); between two posets they are the cross connections used by the
generalized taxotopy relation.  Right adjoints are unique when they exist,
so enumeration walks candidate lower maps and derives the upper one.
"""

import functools
import itertools

from . import bounds
from .errors import CarrierMismatch, SizeLimit
from .poset import (FinitePoset, MonotoneMap, add_bottom, bits,
                    connected_components, identity_map)


class GaloisConnection:
    'Adjoint pair lower: Q -> P, upper: P -> Q; endo when Q is P.'

    __slots__ = ("lower", "upper")

    def __init__(self, lower, upper, _validated=False):
        if lower.dom != upper.cod or lower.cod != upper.dom:
            raise CarrierMismatch("lower and upper do not form a pair Q <-> P")
        self.lower = lower
        self.upper = upper
        if not _validated and not _law_holds(lower.dom, lower.cod,
                                             lower.values, upper.values):
            raise ValueError(f"adjunction law fails for {lower.values} -| {upper.values}")

    @property
    def carrier(self):
        if self.lower.dom != self.lower.cod:
            raise CarrierMismatch("cross connection has two carriers")
        return self.lower.dom

    def is_identity(self):
        n = self.lower.dom.n
        return self.lower.values == tuple(range(n)) == self.upper.values

    def __eq__(self, other):
        return (isinstance(other, GaloisConnection)
                and self.lower == other.lower and self.upper == other.upper)

    def __hash__(self):
        return hash((self.lower, self.upper))

    def __repr__(self):
        return f"({self.lower!r} -| {self.upper!r})"


def _law_holds(Q, P, lower, upper):
    'lower(q) <= p iff q <= upper(p), for all q in Q, p in P.'
    for q in range(Q.n):
        for p in range(P.n):
            if P.leq(lower[q], p) != Q.leq(q, upper[p]):
                return False
    return True


def _max_of(P, mask):
    'Index of the maximum of the nonempty subset, or None.'
    for m in bits(mask):
        if mask & ~P.down[m] == 0:
            return m
    return None


def _min_of(P, mask):
    for m in bits(mask):
        if mask & ~P.up[m] == 0:
            return m
    return None


def right_adjoint_values(Q, P, lower):
    'Upper value table for lower: Q -> P, or None (upper(p) = max{q : lower(q) <= p}).'
    upper = []
    for p in range(P.n):
        mask = 0
        for q in range(Q.n):
            if P.leq(lower[q], p):
                mask |= 1 << q
        if mask == 0:
            return None
        m = _max_of(Q, mask)
        if m is None:
            return None
        upper.append(m)
    return tuple(upper)


def left_adjoint_values(Q, P, upper):
    'Lower value table for upper: P -> Q, or None (lower(q) = min{p : q <= upper(p)}).'
    lower = []
    for q in range(Q.n):
        mask = 0
        for p in range(P.n):
            if Q.leq(q, upper[p]):
                mask |= 1 << p
        if mask == 0:
            return None
        m = _min_of(P, mask)
        if m is None:
            return None
        lower.append(m)
    return tuple(lower)


def right_adjoint_of(f):
    'Right adjoint of a monotone map, as a MonotoneMap, or None.'
    values = right_adjoint_values(f.dom, f.cod, f.values)
    if values is None:
        return None
    return MonotoneMap(f.cod, f.dom, values, _validated=True)


def left_adjoint_of(g):
    values = left_adjoint_values(g.cod, g.dom, g.values)
    if values is None:
        return None
    return MonotoneMap(g.cod, g.dom, values, _validated=True)


def _monotone_tables(S, P, pinned=None):
    """All monotone value tables S -> P in lexicographic order.

    Values are assigned in index order; a candidate for position i must be
    compatible with every already-assigned comparable position.  ``pinned``
    optionally fixes some positions.
    """
    n = S.n
    if n == 0:
        yield ()
        return
    if P.n == 0:
        return
    values = [0] * n
    up, down = S.up, S.down
    Pleq = P.leq

    def place(i):
        if i == n:
            yield tuple(values)
            return
        if pinned is not None and pinned[i] is not None:
            cands = [pinned[i]]
        else:
            cands = range(P.n)
        below = down[i] & ((1 << i) - 1)
        above = up[i] & ((1 << i) - 1)
        for v in cands:
            ok = True
            for j in bits(below):
                if not Pleq(values[j], v):
                    ok = False
                    break
            if ok:
                for j in bits(above):
                    if not Pleq(v, values[j]):
                        ok = False
                        break
            if ok:
                values[i] = v
                yield from place(i + 1)

    yield from place(0)


class AdjunctionSet:
    'Complete, deterministically ordered Adj(P); the identity is index 0.'

    __slots__ = ("poset", "connections", "_index")

    def __init__(self, poset, connections):
        self.poset = poset
        self.connections = tuple(connections)
        self._index = {c.lower.values: i for i, c in enumerate(self.connections)}
        assert self.connections and self.connections[0].is_identity()

    def __len__(self):
        return len(self.connections)

    def __iter__(self):
        return iter(self.connections)

    def __getitem__(self, i):
        return self.connections[i]

    def index_of(self, conn):
        return self._index[conn.lower.values]


@functools.lru_cache(maxsize=4096)
def _enumerate_adjunctions_cached(P):
    n = P.n
    found = []
    pinned = None
    bot = P.bottom()
    if bot is not None:
        # left adjoints preserve an existing bottom
        pinned = [bot if i == bot else None for i in range(n)]
    for lower in _monotone_tables(P, P, pinned):
        upper = right_adjoint_values(P, P, lower)
        if upper is not None:
            found.append((lower, upper))
    ident = tuple(range(n))
    found.sort(key=lambda pair: (pair[0] != ident, pair[0]))
    conns = [GaloisConnection(MonotoneMap(P, P, lo, _validated=True),
                              MonotoneMap(P, P, hi, _validated=True), _validated=True)
             for lo, hi in found]
    return AdjunctionSet(P, conns)


def enumerate_adjunctions(P, max_size=None):
    'All Galois connections on P, identity first, then ordered by lower table.'
    bounds.check(P.n, bounds.MAX_ADJ_POSET, "carrier size for Adj enumeration", max_size)
    return _enumerate_adjunctions_cached(P)


@functools.lru_cache(maxsize=4096)
def _cross_connections_cached(Q, P):
    found = []
    for lower in _monotone_tables(Q, P):
        upper = right_adjoint_values(Q, P, lower)
        if upper is not None:
            found.append(GaloisConnection(
                MonotoneMap(Q, P, lower, _validated=True),
                MonotoneMap(P, Q, upper, _validated=True), _validated=True))
    return tuple(found)


def cross_connections(Q, P, max_size=None):
    'All adjunctions lower: Q -> P -| upper: P -> Q, ordered by lower table.'
    bounds.check(max(Q.n, P.n), bounds.MAX_ADJ_POSET, "carrier size for cross enumeration", max_size)
    return _cross_connections_cached(Q, P)


def compose(f, g):
    'Connection with lower f.lower o g.lower and upper g.upper o f.upper.'
    if f.lower.dom != g.lower.dom or f.lower.cod != g.lower.cod:
        raise CarrierMismatch("can only compose connections on one carrier")
    return GaloisConnection(f.lower.compose(g.lower),
                            g.upper.compose(f.upper), _validated=True)


def closure_op(f):
    'upper o lower: inflationary, idempotent, monotone.'
    return f.upper.compose(f.lower)


def interior_op(f):
    'lower o upper: deflationary, idempotent, monotone.'
    return f.lower.compose(f.upper)


def fixed_set(op):
    return tuple(i for i, v in enumerate(op.values) if v == i)


# -- restriction and extension properties -----------------------------------

def restricts_to(f, elems):
    """Restriction of an endo connection to a subset, or None.

    Present iff both adjoints map the subset into itself; the restricted
    pair then satisfies the law automatically.
    """
    P = f.carrier
    mask = 0
    for e in elems:
        mask |= 1 << e
    lo, hi = f.lower.values, f.upper.values
    for e in bits(mask):
        if not ((mask >> lo[e]) & 1 and (mask >> hi[e]) & 1):
            return None
    sub, order = P.subposet(list(bits(mask)))
    pos = {e: k for k, e in enumerate(order)}
    return GaloisConnection(
        MonotoneMap(sub, sub, tuple(pos[lo[e]] for e in order), _validated=True),
        MonotoneMap(sub, sub, tuple(pos[hi[e]] for e in order), _validated=True),
        _validated=True)


def is_weak_sub(P, elems, max_size=None):
    'Membership of a nonempty subset in Sub_w(P): every connection restricts.'
    adjs = enumerate_adjunctions(P, max_size)
    mask = 0
    for e in elems:
        mask |= 1 << e
    return _mask_is_weak_sub(P, mask, adjs)


def _mask_is_weak_sub(P, mask, adjs):
    for c in adjs:
        lo, hi = c.lower.values, c.upper.values
        for e in bits(mask):
            if not ((mask >> lo[e]) & 1 and (mask >> hi[e]) & 1):
                return False
    return True


def weak_subsets(P, max_size=None):
    'All nonempty members of Sub_w(P), as bitmasks in ascending order.'
    adjs = enumerate_adjunctions(P, max_size)
    return [mask for mask in range(1, 1 << P.n) if _mask_is_weak_sub(P, mask, adjs)]


def has_extension_property(h, max_size=None):
    """Whether every connection on the domain of h extends along h.

    h: Q -> P has the extension property iff for each f in Adj(Q) there is
    g in Adj(P) with h o f.lower = g.lower o h and h o f.upper = g.upper o h.
    """
    Q, P = h.dom, h.cod
    adj_q = enumerate_adjunctions(Q, max_size)
    adj_p = enumerate_adjunctions(P, max_size)
    hv = h.values
    targets = {}
    for g in adj_p:
        glo, ghi = g.lower.values, g.upper.values
        targets.setdefault((tuple(glo[v] for v in hv), tuple(ghi[v] for v in hv)), g)
    for f in adj_q:
        flo, fhi = f.lower.values, f.upper.values
        key = (tuple(hv[v] for v in flo), tuple(hv[v] for v in fhi))
        if key not in targets:
            return False
    return True


def inclusion_map(P, elems):
    'Inclusion of the induced subposet on elems into P.'
    sub, order = P.subposet(elems)
    return MonotoneMap(sub, P, tuple(order), _validated=True)


def is_strong_sub(P, elems, max_size=None):
    'Membership in Sub_s(P): restriction property and extension property.'
    return (is_weak_sub(P, elems, max_size)
            and has_extension_property(inclusion_map(P, elems), max_size))


def extend_to_bottom(f):
    """Unique extension of an endo connection on P to add_bottom(P).

    Both components are forced to fix the new bottom: the lower map because
    left adjoints preserve an existing bottom, the upper one by the law.
    """
    P = f.carrier
    PB = add_bottom(P)
    lo = (0,) + tuple(v + 1 for v in f.lower.values)
    hi = (0,) + tuple(v + 1 for v in f.upper.values)
    return GaloisConnection(MonotoneMap(PB, PB, lo, _validated=True),
                            MonotoneMap(PB, PB, hi, _validated=True), _validated=True)


def bottom_extensions(P, max_size=None):
    'The witness pool for the star preorder: [f extended to P_bot for f in Adj(P)].'
    return tuple(extend_to_bottom(f) for f in enumerate_adjunctions(P, max_size))
