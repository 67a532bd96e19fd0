"""Fundamental posets of disjoint unions.

A connection on a multi-component poset permutes the components; the
admissible permutations and cross-component connections let the
fundamental poset of a union be assembled from per-component data: the
folding quotient and open-book relation for a doubled component, and a
four-piece formula when the two components admit no exchange.
"""

import itertools

from .errors import (AdmissibilityNotIdentity, NotConnected,
                     SymmetryViolation, TheoremViolation)
from .fundamental import _map_label, fundamental_poset, monotone_maps
from .galois import cross_connections, enumerate_adjunctions
from .poset import (Preorder, QuotientResult, bits, connected_components,
                    disjoint_union, posetal_reflection, product_poset)


def admissible_permutations(P, max_size=None):
    """Permutations of the component index set induced by connections.

    Returns (perms, preorder): every upper adjoint maps component i into
    component perms[k][i]; the preorder relates i to j when some admissible
    permutation sends i to j.  Each permutation claim is verified
    elementwise before being believed.
    """
    comps = connected_components(P)
    m = len(comps)
    perms = set()
    for c in enumerate_adjunctions(P, max_size):
        phi = _component_permutation(P, comps, c)
        perms.add(phi)
    rel = [0] * m
    for phi in perms:
        for i, j in enumerate(phi):
            rel[i] |= 1 << j
    return sorted(perms), Preorder(m, rel)


def _component_permutation(P, comps, conn):
    m = len(comps)
    phi = [None] * m
    hi = conn.upper.values
    for i, comp in enumerate(comps):
        targets = {next(k for k, c in enumerate(comps) if (c >> hi[e]) & 1)
                   for e in bits(comp)}
        if len(targets) != 1:
            raise TheoremViolation(
                f"upper adjoint {conn.upper!r} scatters component {i} over {targets}")
        phi[i] = targets.pop()
    if sorted(phi) != list(range(m)):
        raise TheoremViolation(f"component map {phi} of {conn!r} is not a permutation")
    return tuple(phi)


class FoldInput:
    'A relation on the square of a poset, required to be coordinate-symmetric.'

    __slots__ = ("base", "rel")

    def __init__(self, base, rel):
        self.base = base
        self.rel = rel
        n = base.n
        if rel.n != n * n:
            raise ValueError("relation carrier must be the square of the base")
        for x in range(n * n):
            sx = _swap_index(x, n)
            for y in bits(rel.rel[x]):
                if not rel.leq(sx, _swap_index(y, n)):
                    raise SymmetryViolation(
                        f"pairs {divmod(x, n)} <= {divmod(y, n)} but not their swaps")

    def pair_index(self, i, j):
        return i * self.base.n + j


def _swap_index(x, n):
    i, j = divmod(x, n)
    return j * n + i


def fold(fold_input):
    'Quotient of the square relation by identifying each pair with its swap.'
    n = fold_input.base.n
    rel = fold_input.rel.rel
    folded = []
    for x in range(n * n):
        mask = rel[x]
        extra = 0
        for y in bits(mask):
            extra |= 1 << _swap_index(y, n)
        folded.append(mask | extra)
    labels = [f"({fold_input.base.labels[i]},{fold_input.base.labels[j]})"
              for i in range(n) for j in range(n)]
    pre = Preorder(n * n, folded)
    return posetal_reflection(pre, labels)


def _shared_codomain_relation(maps_a, maps_b, dom_conns, cod_conns):
    """Per-codomain-connection relation masks.

    out[e][i] has bit j set iff some domain connection f satisfies
    maps_a[i] o f.lower = e.lower o maps_b[j] and
    maps_b[j] o f.upper = e.upper o maps_a[i].
    """
    out = []
    for e in cod_conns:
        elo, ehi = e.lower.values, e.upper.values
        rows = []
        for k in maps_a:
            kv = k.values
            mask = 0
            for j, h in enumerate(maps_b):
                hv = h.values
                for f in dom_conns:
                    flo, fhi = f.lower.values, f.upper.values
                    if (all(kv[flo[s]] == elo[hv[s]] for s in range(len(kv)))
                            and all(hv[fhi[s]] == ehi[kv[s]] for s in range(len(kv)))):
                        mask |= 1 << j
                        break
            rows.append(mask)
        out.append(rows)
    return out


def _map_pair_open_book(fund):
    'Shared-witness relation on endo map pairs: one codomain e serves both coordinates.'
    maps = fund.maps
    conns = enumerate_adjunctions(fund.target).connections
    per_e = _shared_codomain_relation(maps, maps, conns, conns)
    nm = len(maps)
    pair_rel = [0] * (nm * nm)
    for rows in per_e:
        for k1 in range(nm):
            for k2 in range(nm):
                x = k1 * nm + k2
                m1, m2 = rows[k1], rows[k2]
                acc = 0
                for h1 in bits(m1):
                    acc |= m2 << (h1 * nm)
                pair_rel[x] |= acc
    return pair_rel


def open_book_relation(P, fund=None):
    """The shared-witness relation on pairs of endo map classes.

    (c1, c2) relates to (d1, d2) when a single codomain connection e admits
    domain partners witnessing both coordinates at once.  Computed on map
    representatives and asserted independent of the choice; the assertion
    can genuinely fire (e.g. on the three-element poset with one minimum
    and two maxima), in which case the relation only exists at map level.
    """
    if not P.is_connected():
        raise NotConnected("the open book relation needs a connected poset")
    if fund is None:
        fund = fundamental_poset(P, P)
    nm = len(fund.maps)
    pair_rel = _map_pair_open_book(fund)
    # classes: assert the relation only depends on the taxotopy classes
    cls = fund.quotient.class_of
    q = fund.poset
    nq = q.n
    class_rel = {}
    for k1 in range(nm):
        for k2 in range(nm):
            for h1 in range(nm):
                for h2 in range(nm):
                    key = (cls[k1] * nq + cls[k2], cls[h1] * nq + cls[h2])
                    val = bool((pair_rel[k1 * nm + k2] >> (h1 * nm + h2)) & 1)
                    if class_rel.setdefault(key, val) != val:
                        raise TheoremViolation(
                            "shared-witness relation differs across representatives "
                            f"of class pair {key}")
    rel = [0] * (nq * nq)
    for (x, y), val in class_rel.items():
        if val:
            rel[x] |= 1 << y
    return FoldInput(q, Preorder(nq * nq, rel))


def product_square_relation(Q):
    'Componentwise order on the square of a poset, as a FoldInput.'
    n = Q.n
    rel = []
    for i in range(n):
        for j in range(n):
            mask = 0
            for i2 in bits(Q.up[i]):
                for j2 in bits(Q.up[j]):
                    mask |= 1 << (i2 * n + j2)
            rel.append(mask)
    return FoldInput(Q, Preorder(n * n, rel, _validated=True))


def lambda_double(P):
    """Endo map classes of a doubled component, by the folding formula.

    First piece: the folded square of the endo class poset under the
    componentwise order.  Second piece: the folded shared-witness relation,
    taken at map level (it need not descend to classes, so folding before
    reflecting is the correct order of operations) and then reflected.
    """
    if not P.is_connected():
        raise NotConnected("the doubling formula needs a connected poset")
    fund = fundamental_poset(P, P)
    plain = fold(product_square_relation(fund.poset)).quotient
    nm = len(fund.maps)
    pair_rel = _map_pair_open_book(fund)
    folded = []
    for x in range(nm * nm):
        extra = 0
        for y in bits(pair_rel[x]):
            extra |= 1 << _swap_index(y, nm)
        folded.append(pair_rel[x] | extra)
    labels = [f"({_map_label(fund.maps[i])},{_map_label(fund.maps[j])})"
              for i in range(nm) for j in range(nm)]
    book = posetal_reflection(Preorder(nm * nm, folded), labels).quotient
    return disjoint_union(plain, book)


def _admissibility(components, max_size=None):
    'Admissible index permutations from cross-connection availability.'
    m = len(components)
    has_leg = [[bool(cross_connections(components[j], components[i], max_size))
                for j in range(m)] for i in range(m)]
    perms = [phi for phi in itertools.permutations(range(m))
             if all(has_leg[i][phi[i]] for i in range(m))]
    rel = [0] * m
    for phi in perms:
        for i, j in enumerate(phi):
            rel[i] |= 1 << j
    return perms, Preorder(m, rel)


def lambda_disjoint(S, components, threads=1, max_size=None):
    """Fundamental poset of maps from a connected source into a disjoint union.

    The image of a connected source lies in one component, so the carrier
    is the union of the per-component map sets; relations run along
    admissible index pairs through cross connections.
    """
    if not S.is_connected() or S.n == 0:
        raise NotConnected("the source must be nonempty and connected")
    if not components:
        raise ValueError("need at least one component")
    for C in components:
        if C.n == 0 or not C.is_connected():
            raise NotConnected("components must be nonempty and connected")
    _, adm = _admissibility(components, max_size)
    per_comp = [monotone_maps(S, C) for C in components]
    offsets = []
    total = 0
    for maps in per_comp:
        offsets.append(total)
        total += len(maps)
    adj_s = enumerate_adjunctions(S).connections
    rel = [0] * total
    labels = []
    for i, maps in enumerate(per_comp):
        labels.extend(f"{i}:{_map_label(m)}" for m in maps)
    for i in range(len(components)):
        for j in bits(adm.rel[i]):
            cross = cross_connections(components[j], components[i], max_size)
            per_e = _shared_codomain_cross(per_comp[i], per_comp[j], adj_s, cross)
            for a, mask in enumerate(per_e):
                rel[offsets[i] + a] |= mask << offsets[j]
    pre = Preorder(total, rel)
    return posetal_reflection(pre, labels).quotient


def _shared_codomain_cross(maps_a, maps_b, dom_conns, cross):
    """Relation masks for maps into two components through cross connections.

    out[i] has bit j set iff some (e, c) satisfies
    c.lower o maps_b[j] = maps_a[i] o e.lower and
    c.upper o maps_a[i] = maps_b[j] o e.upper.
    """
    out = []
    for k in maps_a:
        kv = k.values
        mask = 0
        for j, h in enumerate(maps_b):
            hv = h.values
            hit = False
            for c in cross:
                clo, chi = c.lower.values, c.upper.values
                r1 = tuple(clo[v] for v in hv)
                r2 = tuple(chi[v] for v in kv)
                for e in dom_conns:
                    elo, ehi = e.lower.values, e.upper.values
                    if (all(kv[elo[s]] == r1[s] for s in range(len(kv)))
                            and all(hv[ehi[s]] == r2[s] for s in range(len(kv)))):
                        hit = True
                        break
                if hit:
                    break
            if hit:
                mask |= 1 << j
        out.append(mask)
    return out


def lambda_rigid_pair(P1, P2, max_size=None):
    """Endo map classes of P1 + P2 when no connection exchanges the parts.

    Four disjoint pieces: componentwise endo pairs (a product of the two
    endo class posets), exchanged pairs (a product of the two cross class
    posets), and the maps landing in a single component.
    """
    for C in (P1, P2):
        if C.n == 0 or not C.is_connected():
            raise NotConnected("both parts must be nonempty and connected")
    perms, _ = _admissibility([P1, P2], max_size)
    if (1, 0) in perms:
        raise AdmissibilityNotIdentity(
            "some connection exchanges the two parts; the formula needs rigidity")
    endo = product_poset(fundamental_poset(P1, P1).poset,
                         fundamental_poset(P2, P2).poset)
    crossed = product_poset(fundamental_poset(P1, P2).poset,
                            fundamental_poset(P2, P1).poset)
    D = disjoint_union(P1, P2)
    into_1 = fundamental_poset(D, P1).poset
    into_2 = fundamental_poset(D, P2).poset
    return disjoint_union(disjoint_union(endo, crossed),
                          disjoint_union(into_1, into_2))
