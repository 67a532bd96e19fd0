"""The taxotopy preorder on monotone map sets and its fundamental posets.

k is below h when some connection e on the domain and g on the codomain
make both squares commute:  k o e.lower = g.lower o h  and
h o e.upper = g.upper o k.  The relation is computed pairwise (never closed
transitively: it is a preorder by construction, and an assertion compares
it with its transitive closure so a bug fails loudly instead of being
repaired).  Witnesses are the lexicographically least (codomain index,
domain index) pair, matching a scan with the codomain loop outermost.
"""

import functools
from concurrent.futures import ThreadPoolExecutor

from . import bounds
from .errors import EmptyPoset, TheoremViolation
from .galois import enumerate_adjunctions, cross_connections
from .poset import (MonotoneMap, Preorder, bits, chain_poset,
                    posetal_reflection)


@functools.lru_cache(maxsize=1)
def point_poset():
    return chain_poset(1, prefix="pt")


class TaxotopyWitness:
    'The pair of connections (domain, codomain) realizing one relation k <= h.'

    __slots__ = ("dom_conn", "cod_conn")

    def __init__(self, dom_conn, cod_conn):
        self.dom_conn = dom_conn
        self.cod_conn = cod_conn

    def validates(self, k, h):
        'Recheck both commuting squares for k <= h.'
        e, g = self.dom_conn, self.cod_conn
        kv, hv = k.values, h.values
        glo, ghi = g.lower.values, g.upper.values
        elo, ehi = e.lower.values, e.upper.values
        n = len(kv)
        return (all(kv[elo[s]] == glo[hv[s]] for s in range(n))
                and all(hv[ehi[s]] == ghi[kv[s]] for s in range(n)))

    def __repr__(self):
        return f"Witness(dom={self.dom_conn!r}, cod={self.cod_conn!r})"


def monotone_maps(S, P, max_space=None):
    'All monotone maps S -> P, lexicographic by value table.'
    if S.n == 0:
        raise EmptyPoset("map source must be nonempty")
    bounds.check(P.n ** S.n, bounds.MAX_MAP_SPACE, "monotone map candidate space", max_space)
    from .galois import _monotone_tables
    return tuple(MonotoneMap(S, P, t, _validated=True) for t in _monotone_tables(S, P))


def is_taxotopic(k, h, adj_dom, adj_cod):
    """First witness for k <= h, scanning codomain connections outermost.

    Reference implementation; the fundamental-poset builder uses an indexed
    search that provably returns the same witness.
    """
    kv, hv = k.values, h.values
    n = len(kv)
    for g in adj_cod:
        glo, ghi = g.lower.values, g.upper.values
        right1 = tuple(glo[v] for v in hv)
        right2 = tuple(ghi[v] for v in kv)
        for e in adj_dom:
            elo, ehi = e.lower.values, e.upper.values
            if (all(kv[elo[s]] == right1[s] for s in range(n))
                    and all(hv[ehi[s]] == right2[s] for s in range(n))):
                return TaxotopyWitness(e, g)
    return None


def _taxotopy_tables(maps, dom_conns, cod_conns):
    'Interned composite tables feeding the pairwise witness search.'
    intern = {}

    def key(t):
        v = intern.get(t)
        if v is None:
            v = len(intern)
            intern[t] = v
        return v

    vals = [m.values for m in maps]
    L1, L2 = [], []   # [map][e]: k o e.lower, k o e.upper
    for mv in vals:
        L1.append([key(tuple(mv[s] for s in e.lower.values)) for e in dom_conns])
        L2.append([key(tuple(mv[s] for s in e.upper.values)) for e in dom_conns])
    R1, R2 = [], []   # [g][map]: g.lower o h, g.upper o k
    for g in cod_conns:
        glo, ghi = g.lower.values, g.upper.values
        R1.append([key(tuple(glo[v] for v in mv)) for mv in vals])
        R2.append([key(tuple(ghi[v] for v in mv)) for mv in vals])
    return L1, L2, R1, R2


def _pair_witness(a, b, L1, L2, R1, R2, ng):
    'Least (g, e) with L1[a][e] == R1[g][b] and L2[b][e] == R2[g][a], or None.'
    lookup = {}
    for g in range(ng):
        k = (R1[g][b], R2[g][a])
        if k not in lookup:
            lookup[k] = g
    best = None
    la, lb = L1[a], L2[b]
    for e in range(len(la)):
        g = lookup.get((la[e], lb[e]))
        if g is not None and (best is None or (g, e) < best):
            best = (g, e)
    return best


def taxotopy_preorder(maps, dom_conns, cod_conns, threads=1):
    """Preorder masks and witness table for the taxotopy relation on maps.

    Returns (Preorder, {(i, j): TaxotopyWitness}).  Raises TheoremViolation
    if the computed relation fails to be reflexive or transitive.
    """
    n = len(maps)
    L1, L2, R1, R2 = _taxotopy_tables(maps, dom_conns, cod_conns)
    ng = len(cod_conns)

    def row(a):
        mask = 0
        found = []
        for b in range(n):
            w = _pair_witness(a, b, L1, L2, R1, R2, ng)
            if w is not None:
                mask |= 1 << b
                found.append((b, w))
        return mask, found

    rel = [0] * n
    witnesses = {}
    if threads > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for a, (mask, found) in enumerate(pool.map(row, range(n))):
                rel[a] = mask
                for b, (g, e) in found:
                    witnesses[(a, b)] = TaxotopyWitness(dom_conns[e], cod_conns[g])
    else:
        for a in range(n):
            mask, found = row(a)
            rel[a] = mask
            for b, (g, e) in found:
                witnesses[(a, b)] = TaxotopyWitness(dom_conns[e], cod_conns[g])

    _assert_preorder(rel, n)
    return Preorder(n, rel, _validated=True), witnesses


def _assert_preorder(rel, n):
    for i in range(n):
        if not (rel[i] >> i) & 1:
            raise TheoremViolation(f"taxotopy relation not reflexive at map {i}")
    for i in range(n):
        acc = 0
        for j in bits(rel[i]):
            acc |= rel[j]
        if acc & ~rel[i]:
            j = next(bits(acc & ~rel[i]))
            raise TheoremViolation(
                f"taxotopy relation not transitive: {i} reaches {j} only indirectly")


class FundamentalPoset:
    """Posetal reflection of the taxotopy preorder on an enumerated map set.

    ``maps[i]`` carries class ``quotient.class_of[i]``; ``witnesses[(i, j)]``
    holds the connection pair realizing maps[i] <= maps[j].
    """

    __slots__ = ("source", "target", "maps", "preorder", "quotient", "witnesses")

    def __init__(self, source, target, maps, preorder, quotient, witnesses):
        self.source = source
        self.target = target
        self.maps = tuple(maps)
        self.preorder = preorder
        self.quotient = quotient
        self.witnesses = witnesses

    @property
    def poset(self):
        return self.quotient.quotient

    def map_index(self, values):
        values = tuple(values)
        for i, m in enumerate(self.maps):
            if m.values == values:
                return i
        raise KeyError(values)

    def class_members(self, c):
        return [self.maps[i] for i in self.quotient.members(c)]

    def __repr__(self):
        return (f"FundamentalPoset(|maps|={len(self.maps)}, "
                f"classes={self.poset.n})")


def _map_label(m):
    return "(" + " ".join(m.cod.labels[v] for v in m.values) + ")"


def fundamental_poset(S, P, threads=1, max_space=None):
    'Fundamental poset of the map set Pos(S, P) under the taxotopy preorder.'
    maps = monotone_maps(S, P, max_space)
    adj_s = enumerate_adjunctions(S)
    adj_p = enumerate_adjunctions(P)
    pre, wit = taxotopy_preorder(maps, adj_s.connections, adj_p.connections, threads)
    quot = posetal_reflection(pre, [_map_label(m) for m in maps])
    return FundamentalPoset(S, P, maps, pre, quot, wit)


def lambda_poset(P):
    """Taxotopy classes of the points of P (source a singleton), fast path.

    p <= q iff some connection has lower(q) = p and upper(p) = q; agrees
    with fundamental_poset(point, P) and is checked against it in tests.
    """
    if P.n == 0:
        raise EmptyPoset("lambda of the empty poset is undefined")
    adj = enumerate_adjunctions(P)
    one = point_poset()
    ident = enumerate_adjunctions(one)[0]
    n = P.n
    rel = [0] * n
    witnesses = {}
    for g in adj:
        lo, hi = g.lower.values, g.upper.values
        for q in range(n):
            p = lo[q]
            if hi[p] == q:
                rel[p] |= 1 << q
                if (p, q) not in witnesses:
                    witnesses[(p, q)] = TaxotopyWitness(ident, g)
    _assert_preorder(rel, n)
    pre = Preorder(n, rel, _validated=True)
    quot = posetal_reflection(pre, P.labels)
    maps = [MonotoneMap(one, P, (p,), _validated=True) for p in range(n)]
    return FundamentalPoset(one, P, maps, pre, quot, witnesses)


def lambda_embedding_check(Q, P, max_space=None):
    'Constant-map inclusion of the point classes into the map classes is an order embedding.'
    lam = lambda_poset(P)
    fund = fundamental_poset(Q, P, max_space=max_space)
    const = [fund.map_index((p,) * Q.n) for p in range(P.n)]
    return all(lam.preorder.leq(p, q) == fund.preorder.leq(const[p], const[q])
               for p in range(P.n) for q in range(P.n))


def generalized_taxotopic(k, h, max_size=None):
    """Witness for k below h across different codomains, or None.

    k: S -> P, h: S -> Q; the codomain side of the witness is a cross
    connection (lower: Q -> P, upper: P -> Q) with lower o h = k o e.lower
    and upper o k = h o e.upper.
    """
    if k.dom != h.dom:
        raise EmptyPoset("the two maps must share their source")
    S, P, Q = k.dom, k.cod, h.cod
    adj_s = enumerate_adjunctions(S)
    cross = cross_connections(Q, P, max_size)
    kv, hv = k.values, h.values
    n = S.n
    for c in cross:
        clo, chi = c.lower.values, c.upper.values
        right1 = tuple(clo[v] for v in hv)
        right2 = tuple(chi[v] for v in kv)
        for e in adj_s:
            elo, ehi = e.lower.values, e.upper.values
            if (all(kv[elo[s]] == right1[s] for s in range(n))
                    and all(hv[ehi[s]] == right2[s] for s in range(n))):
                return TaxotopyWitness(e, c)
    return None


def is_S_continuous(h, S, max_space=None):
    'Composition with h preserves the taxotopy relation of maps out of S.'
    fund_q = fundamental_poset(S, h.dom, max_space=max_space)
    fund_p = fundamental_poset(S, h.cod, max_space=max_space)
    hv = h.values
    index_p = {m.values: i for i, m in enumerate(fund_p.maps)}
    pushed = [index_p[tuple(hv[v] for v in m.values)] for m in fund_q.maps]
    return all(fund_p.preorder.leq(pushed[i], pushed[j])
               for i, j in fund_q.preorder.pairs())
