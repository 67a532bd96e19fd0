"""Covers, matching families, and the star preorder on bottomed maps.

A cover is a family of restriction-closed subsets, closed under nonempty
intersection, whose union is the whole poset.  Chain-compactness makes
every comparability finitely covered; compatible per-block connections
then glue to a global one.  Maps into the bottomed poset restrict to
blocks by the greatest-value retract, and the star preorder (witnesses
restricted to bottom-preserving extensions) turns into a limit over the
cover, checked here both as a componentwise iff and, for three-block
covers, as a concrete pullback.
"""

import itertools

from .errors import (EmptyBlock, GlueConflict, HypothesisFailed, MaxUndefined,
                     NotChainCompact, NotCompatible, NotCovering,
                     NotIntersectionClosed, NotMatching, NotWeakSub,
                     NoRestriction, PropertyViolation, TheoremViolation)
from .fundamental import fundamental_poset, monotone_maps, taxotopy_preorder
from .galois import (GaloisConnection, bottom_extensions,
                     enumerate_adjunctions, restricts_to, weak_subsets)
from .poset import (FinitePoset, MonotoneMap, add_bottom, bits, interval,
                    maximal_chains, posetal_reflection)


def _mask(elems):
    m = 0
    for e in elems:
        m |= 1 << e
    return m


class Cover:
    'Validated cover: poset, block masks (deterministic order), block subposets.'

    __slots__ = ("poset", "masks", "blocks", "subposets", "orders")

    def __init__(self, poset, masks):
        self.poset = poset
        self.masks = tuple(masks)
        self.blocks = tuple(tuple(bits(m)) for m in self.masks)
        subs = [poset.subposet(b) for b in self.blocks]
        self.subposets = tuple(s for s, _ in subs)
        self.orders = tuple(tuple(o) for _, o in subs)

    def __len__(self):
        return len(self.masks)

    def block_label(self, i):
        return "{%s}" % ",".join(self.poset.labels[e] for e in self.blocks[i])


def validate_cover(P, blocks, max_size=None):
    'Check all cover clauses; the error names the failing clause and witness.'
    masks = []
    for b in blocks:
        m = _mask(b)
        if m == 0:
            raise EmptyBlock("covers may not contain the empty set")
        if m not in masks:
            masks.append(m)
    masks.sort(key=lambda m: (bin(m).count("1"), m))
    adjs = enumerate_adjunctions(P, max_size)
    for m in masks:
        for c in adjs:
            lo, hi = c.lower.values, c.upper.values
            for e in bits(m):
                if not ((m >> lo[e]) & 1 and (m >> hi[e]) & 1):
                    raise NotWeakSub(
                        f"block {_label(P, m)} is not preserved by {c!r}")
    for m1, m2 in itertools.combinations(masks, 2):
        inter = m1 & m2
        if inter and inter not in masks:
            raise NotIntersectionClosed(
                f"{_label(P, m1)} and {_label(P, m2)} meet in {_label(P, inter)}, "
                "which is not a block")
    union = 0
    for m in masks:
        union |= m
    if union != (1 << P.n) - 1:
        raise NotCovering(f"blocks only reach {_label(P, union)}")
    for m1 in masks:
        for m2 in masks:
            if m1 != m2 and m1 & m2 == m1:
                sub, order = P.subposet(list(bits(m2)))
                inner = [order.index(e) for e in bits(m1)]
                for g in enumerate_adjunctions(sub, max_size):
                    if restricts_to(g, inner) is None:
                        raise NoRestriction(
                            f"{_label(P, m1)} inside {_label(P, m2)}: "
                            f"{g!r} does not restrict")
    return Cover(P, masks)


def _label(P, mask):
    return "{%s}" % ",".join(P.labels[e] for e in bits(mask))


def is_chain_compact(cover):
    'Every maximal chain admits a finite subfamily satisfying the three clauses.'
    P = cover.poset
    masks = cover.masks
    for chain in maximal_chains(P):
        cm = _mask(chain)
        if not any(_subfamily_ok(P, masks, sub, chain, cm)
                   for sub in _subfamilies(masks)):
            return False
    return True


def _subfamilies(masks):
    for r in range(1, len(masks) + 1):
        yield from itertools.combinations(masks, r)


def _subfamily_ok(P, all_masks, sub, chain, cm):
    union = 0
    for m in sub:
        union |= m
    if cm & ~union:
        return False
    # blocks of the subfamily are interval-convex along the chain
    for m in sub:
        onchain = [e for e in chain if (m >> e) & 1]
        for a, b in itertools.combinations(onchain, 2):
            seg = _mask(interval(P, a, b)) & cm
            if seg & ~m:
                return False
    # every comparability not inside one block is finitely stepped
    for i, a in enumerate(chain):
        for b in chain[i + 1:]:
            if any((m >> a) & 1 and (m >> b) & 1 for m in all_masks):
                continue
            if not _steppable(P, sub, chain, cm, a, b):
                return False
    return True


def _steppable(P, sub, chain, cm, a, b):
    'Reachability a -> b through steps whose chain segment fits in one block.'
    idx = {e: i for i, e in enumerate(chain)}
    reach = {a}
    frontier = [a]
    while frontier:
        p = frontier.pop()
        for q in chain[idx[p] + 1:]:
            if q in reach:
                continue
            seg = _mask(interval(P, p, q)) & cm
            if any(seg & ~m == 0 for m in sub):
                reach.add(q)
                frontier.append(q)
                if q == b:
                    return True
    return b in reach


def glue_compatible_family(cover, family, check_compact=True):
    """Glue per-block connections into one on the whole poset.

    family[i] is a connection on cover.subposets[i]; nested blocks must
    agree.  Requires a chain-compact cover; the glued pair is re-verified.
    """
    P = cover.poset
    if len(family) != len(cover.masks):
        raise NotCompatible("family must assign one connection per block")
    if check_compact and not is_chain_compact(cover):
        raise NotChainCompact("gluing needs a chain-compact cover")
    for i, mi in enumerate(cover.masks):
        for j, mj in enumerate(cover.masks):
            if i != j and mi & mj == mi:
                for e in bits(mi):
                    pi = cover.orders[i].index(e)
                    pj = cover.orders[j].index(e)
                    if (cover.orders[i][family[i].lower.values[pi]]
                            != cover.orders[j][family[j].lower.values[pj]]
                            or cover.orders[i][family[i].upper.values[pi]]
                            != cover.orders[j][family[j].upper.values[pj]]):
                        raise NotCompatible(
                            f"blocks {cover.block_label(i)} and {cover.block_label(j)} "
                            f"disagree at {P.labels[e]}")
    lower = [None] * P.n
    upper = [None] * P.n
    for i, m in enumerate(cover.masks):
        order = cover.orders[i]
        for k, e in enumerate(order):
            lo = order[family[i].lower.values[k]]
            hi = order[family[i].upper.values[k]]
            if lower[e] is not None and (lower[e], upper[e]) != (lo, hi):
                raise GlueConflict(
                    f"blocks disagree at {P.labels[e]} despite compatibility")
            lower[e], upper[e] = lo, hi
    try:
        glued = GaloisConnection(MonotoneMap(P, P, lower), MonotoneMap(P, P, upper))
    except ValueError as exc:
        raise TheoremViolation(f"glued family is not a connection: {exc}") from exc
    return glued


# -- bottomed maps and retracts ---------------------------------------------

def rho(h, q_elems):
    """Greatest-value retract of a bottomed map onto a subset.

    h: S -> P_bot with the bottom at index 0; the retract sends s to the
    maximum of h(s-down) inside Q, or to the fresh bottom of Q_bot.
    Requires that maximum to exist (guaranteed along chain sources).
    """
    S = h.dom
    P_bot = h.cod
    q_elems = sorted(q_elems)
    pos = {e: k for k, e in enumerate(q_elems)}
    qsub, _ = _parent_subposet(P_bot, q_elems)
    QB = add_bottom(qsub)
    values = []
    for s in range(S.n):
        hit = set()
        for t in bits(S.down[s]):
            v = h.values[t]
            if v != 0 and (v - 1) in pos:
                hit.add(v - 1)
        if not hit:
            values.append(0)
            continue
        best = None
        for cand in hit:
            if all(P_bot.leq(x + 1, cand + 1) for x in hit):
                best = cand
                break
        if best is None:
            raise MaxUndefined(
                f"values {sorted(hit)} below position {s} have no maximum in the block")
        values.append(pos[best] + 1)
    return MonotoneMap(S, QB, values)


def _parent_subposet(P_bot, q_elems):
    'Subposet of the unbottomed part: q_elems are indices of P (not P_bot).'
    sub_elems = [e + 1 for e in q_elems]
    sub, order = P_bot.subposet(sub_elems)
    return sub, order


def rho_between(h, inner_elems):
    """Retract of a block-valued map onto a nested block.

    h: S -> Q_bot where Q is a subposet of the ambient poset; inner_elems
    index positions of Q (0-based within Q).
    """
    return rho(h, inner_elems)


def is_matching_family(cover, family):
    'Do the per-block maps satisfy the greatest-value compatibility on nested blocks?'
    try:
        _matching_witness(cover, family)
        return True
    except NotMatching:
        return False


def _matching_witness(cover, family):
    for i, mi in enumerate(cover.masks):
        for j, mj in enumerate(cover.masks):
            if i == j or mi & mj != mi:
                continue
            inner = [cover.orders[j].index(e) for e in cover.blocks[i]]
            want = rho(family[j], inner)
            if want.values != family[i].values:
                raise NotMatching(
                    f"block {cover.block_label(i)} disagrees with the retract of "
                    f"{cover.block_label(j)}: {family[i].values} vs {want.values}")


def amalgamate(cover, family):
    """Pointwise-maximum gluing of a matching family, or None.

    Returns the amalgam h: S -> P_bot when max over blocks exists at every
    position; the retract round-trip is re-verified.
    """
    _matching_witness(cover, family)
    P = cover.poset
    PB = add_bottom(P)
    S = family[0].dom
    values = []
    for s in range(S.n):
        cands = set()
        for i, h in enumerate(family):
            v = h.values[s]
            if v != 0:
                cands.add(cover.orders[i][v - 1])   # ambient P index
        if not cands:
            values.append(0)
            continue
        best = None
        for c in cands:
            if all(P.leq(x, c) for x in cands):
                best = c
                break
        if best is None:
            return None
        values.append(best + 1)
    amalgam = MonotoneMap(S, PB, values)
    for i in range(len(cover.masks)):
        back = rho(amalgam, cover.blocks[i])
        if back.values != family[i].values:
            raise PropertyViolation(
                f"retract of the amalgam differs from the family at block "
                f"{cover.block_label(i)}")
    return amalgam


def matching_families(cover, S):
    'All matching families of maps S -> Q_bot over the cover (exhaustive).'
    pools = []
    for i, sub in enumerate(cover.subposets):
        pools.append(monotone_maps(S, add_bottom(sub)))
    out = []
    for combo in itertools.product(*pools):
        if is_matching_family(cover, list(combo)):
            out.append(list(combo))
    return out


# -- the star preorder -------------------------------------------------------

class StarPreorder:
    'Taxotopy of bottomed maps with witnesses from bottom-fixing extensions.'

    __slots__ = ("source", "target", "bottomed", "maps", "preorder",
                 "quotient", "witnesses")

    def __init__(self, source, target, bottomed, maps, preorder, quotient, witnesses):
        self.source = source
        self.target = target
        self.bottomed = bottomed
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

    def __repr__(self):
        return f"StarPreorder(|maps|={len(self.maps)}, classes={self.poset.n})"


def star_fundamental(S, P, threads=1, check_embedding=True):
    'Star classes of maps S -> P_bot; asserts the unbottomed classes embed.'
    PB = add_bottom(P)
    maps = monotone_maps(S, PB)
    dom = enumerate_adjunctions(S).connections
    cod = bottom_extensions(P)
    pre, wit = taxotopy_preorder(maps, dom, cod, threads)
    labels = ["(" + " ".join(PB.labels[v] for v in m.values) + ")" for m in maps]
    quot = posetal_reflection(pre, labels)
    star = StarPreorder(S, P, PB, maps, pre, quot, wit)
    if check_embedding:
        plain = fundamental_poset(S, P)
        lifted = [star.map_index(tuple(v + 1 for v in m.values)) for m in plain.maps]
        for i in range(len(plain.maps)):
            for j in range(len(plain.maps)):
                if plain.preorder.leq(i, j) != pre.leq(lifted[i], lifted[j]):
                    raise PropertyViolation(
                        "unbottomed taxotopy classes fail to embed into the "
                        f"star classes at maps {plain.maps[i]!r}, {plain.maps[j]!r}")
    return star


def _retract_index(star_p, star_q, q_elems):
    'Index table: position of rho_Q(h) in the block star for each bottomed map h.'
    table = []
    for h in star_p.maps:
        r = rho(h, q_elems)
        table.append(star_q.map_index(r.values))
    return table


def poset_pullback(A, B, C, fa, fb):
    'Pairs agreeing in C under the two maps, ordered componentwise.'
    pairs = [(a, b) for a in range(A.n) for b in range(B.n) if fa[a] == fb[b]]
    up = []
    for a, b in pairs:
        mask = 0
        for k, (a2, b2) in enumerate(pairs):
            if A.leq(a, a2) and B.leq(b, b2):
                mask |= 1 << k
        up.append(mask)
    labels = [f"({A.labels[a]},{B.labels[b]})" for a, b in pairs]
    return FinitePoset(labels, up), pairs


def _class_map(star_from, star_to, q_elems):
    'Induced map on star classes along the retract; verified monotone.'
    idx = _retract_index(star_from, star_to, q_elems)
    cls_from = star_from.quotient.class_of
    cls_to = star_to.quotient.class_of
    out = [None] * star_from.poset.n
    for i, j in enumerate(idx):
        c = cls_from[i]
        if out[c] is None:
            out[c] = cls_to[j]
        elif out[c] != cls_to[j]:
            raise TheoremViolation(
                "retract is not constant on star classes: "
                f"class {c} maps to both {out[c]} and {cls_to[j]}")
    for a in range(star_from.poset.n):
        for b in range(star_from.poset.n):
            if star_from.poset.leq(a, b) and not star_to.poset.leq(out[a], out[b]):
                raise TheoremViolation("retract map on star classes is not monotone")
    return out


def van_kampen_star_check(S, P, cover, threads=1):
    """Verify the limit description of the star classes over a chain-compact cover.

    (a) componentwise iff: a pair of bottomed maps relates globally exactly
    when each block retract pair relates, with bookkeeping on whether a
    compatible per-block witness family exists; (b) for a three-block cover
    {Q, Q', Q cap Q'}, the concrete pullback of the block star posets is
    isomorphic to the global one.  Both sides are always computed
    independently; disagreement raises TheoremViolation.
    """
    if not S.is_total_order() or S.n == 0:
        raise HypothesisFailed("source", "must be a nonempty finite total order")
    if not is_chain_compact(cover):
        raise HypothesisFailed("chain-compact", "the cover is not chain-compact")
    fams = matching_families(cover, S)
    for fam in fams:
        if amalgamate(cover, fam) is None:
            raise TheoremViolation(
                "matching family without amalgamation on a finite chain-compact cover: "
                f"{[m.values for m in fam]}")
    star_p = star_fundamental(S, P, threads)
    if len(fams) != len(star_p.maps):
        raise TheoremViolation(
            f"matching families ({len(fams)}) do not biject with bottomed maps "
            f"({len(star_p.maps)})")

    block_stars = []
    block_tables = []
    for i, sub in enumerate(cover.subposets):
        st = star_fundamental(S, sub, threads, check_embedding=False)
        block_stars.append(st)
        block_tables.append(_retract_index(star_p, st, cover.blocks[i]))

    n = len(star_p.maps)
    compat_gaps = []
    for a in range(n):
        for b in range(n):
            global_rel = star_p.preorder.leq(a, b)
            comp = all(bs.preorder.leq(tab[a], tab[b])
                       for bs, tab in zip(block_stars, block_tables))
            if global_rel and not comp:
                raise TheoremViolation(
                    f"global relation {star_p.maps[a]!r} <= {star_p.maps[b]!r} "
                    "fails in some block retract")
            if comp and not global_rel:
                has_family = _compatible_witness_family(
                    cover, block_stars, block_tables, a, b)
                compat_gaps.append((a, b, has_family))
                raise TheoremViolation(
                    "componentwise relations without a global one for "
                    f"{star_p.maps[a]!r} <= {star_p.maps[b]!r}; "
                    f"compatible witness family exists: {has_family}")

    report = {
        "maps": n,
        "classes": star_p.poset.n,
        "blocks": [cover.block_label(i) for i in range(len(cover.masks))],
        "componentwise_iff": True,
        "matching_families": len(fams),
    }

    top_blocks = [i for i, m in enumerate(cover.masks)
                  if not any(m != m2 and m & m2 == m for m2 in cover.masks)]
    if len(cover.masks) == 3 and len(top_blocks) == 2:
        i, j = top_blocks
        k = next(x for x in range(3) if x not in top_blocks)
        if cover.masks[i] & cover.masks[j] == cover.masks[k]:
            inner_i = [cover.orders[i].index(e) for e in cover.blocks[k]]
            inner_j = [cover.orders[j].index(e) for e in cover.blocks[k]]
            fi = _class_map(block_stars[i], block_stars[k], inner_i)
            fj = _class_map(block_stars[j], block_stars[k], inner_j)
            pull, _ = poset_pullback(block_stars[i].poset, block_stars[j].poset,
                                     block_stars[k].poset, fi, fj)
            from .poset import is_isomorphic
            iso = is_isomorphic(pull, star_p.poset, max_size=max(64, pull.n))
            if iso is None:
                raise TheoremViolation(
                    f"pullback of block stars ({pull.n} elements) is not isomorphic "
                    f"to the global star poset ({star_p.poset.n} elements)")
            report["pullback"] = True
            report["pullback_size"] = pull.n
    return report


def _compatible_witness_family(cover, block_stars, block_tables, a, b):
    'Is there a per-block family of witnesses restricting coherently along nesting?'
    pools = []
    for idx, (bs, tab) in enumerate(zip(block_stars, block_tables)):
        sub = cover.subposets[idx]
        adj = enumerate_adjunctions(sub)
        exts = bottom_extensions(sub)
        dom = enumerate_adjunctions(bs.source).connections
        k, h = bs.maps[tab[a]], bs.maps[tab[b]]
        good = []
        for gi, g in enumerate(exts):
            glo, ghi = g.lower.values, g.upper.values
            r1 = tuple(glo[v] for v in h.values)
            r2 = tuple(ghi[v] for v in k.values)
            for e in dom:
                elo, ehi = e.lower.values, e.upper.values
                if (all(k.values[elo[s]] == r1[s] for s in range(len(k.values)))
                        and all(h.values[ehi[s]] == r2[s] for s in range(len(k.values)))):
                    good.append(adj[gi])
                    break
        pools.append(good)
    for combo in itertools.product(*pools):
        ok = True
        for i, mi in enumerate(cover.masks):
            for j, mj in enumerate(cover.masks):
                if i == j or mi & mj != mi:
                    continue
                inner = [cover.orders[j].index(e) for e in cover.blocks[i]]
                restricted = restricts_to(combo[j], inner)
                if restricted is None or restricted != combo[i]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def retract_order_check(S, P, q_elems):
    'Star relations survive the retract onto a weak subposet, and block hits agree.'
    from .galois import is_weak_sub
    if not is_weak_sub(P, q_elems):
        raise HypothesisFailed("weak-sub", "the subset is not restriction-closed")
    q_elems = sorted(q_elems)
    star_p = star_fundamental(S, P)
    sub, _ = P.subposet(q_elems)
    star_q = star_fundamental(S, sub, check_embedding=False)
    table = _retract_index(star_p, star_q, q_elems)
    qmask = _mask(e + 1 for e in q_elems)
    for (i, j) in star_p.preorder.pairs():
        hits_i = any((qmask >> v) & 1 for v in star_p.maps[i].values)
        hits_j = any((qmask >> v) & 1 for v in star_p.maps[j].values)
        if hits_i != hits_j:
            return False
        if not star_q.preorder.leq(table[i], table[j]):
            return False
    return True


def max_comparison_check(S, P, pairs=None):
    'Related bottomed maps agree on whether they touch the unbottomed part.'
    star = star_fundamental(S, P, check_embedding=False)
    todo = pairs if pairs is not None else star.preorder.pairs()
    for (i, j) in todo:
        if star.preorder.leq(i, j):
            empty_i = all(v == 0 for v in star.maps[i].values)
            empty_j = all(v == 0 for v in star.maps[j].values)
            if empty_i != empty_j:
                return False
    return True


def search_chain_compact_3block(max_size, limit=10):
    'Three-block chain-compact covers {Q, Q2, Q cap Q2} on small posets.'
    from .poset import corpus
    found = []
    for P in corpus(max_size):
        if P.n < 3:
            continue
        try:
            weak = weak_subsets(P)
        except Exception:
            continue
        full = (1 << P.n) - 1
        for m1, m2 in itertools.combinations(weak, 2):
            if m1 | m2 != full or m1 == full or m2 == full:
                continue
            inter = m1 & m2
            if inter == 0 or inter == m1 or inter == m2:
                continue
            try:
                cover = validate_cover(P, [list(bits(m)) for m in (m1, m2, inter)])
            except Exception:
                continue
            if is_chain_compact(cover):
                found.append((P, cover))
                if len(found) >= limit:
                    return found
    return found
