import itertools

import pytest

from taxotopy.chains import (Chain, L_poset, canonical_chain_map,
                             chain_taxotopic, endpoint_fixing_adjunctions,
                             window_chain_map)
from taxotopy.errors import BadHeight, ChainTooShort, EmptyPoset
from taxotopy.fundamental import lambda_poset
from taxotopy.galois import enumerate_adjunctions
from taxotopy.poset import (antichain, catalog, chain_poset, chains, cone,
                            disjoint_union, empty_poset, height, is_isomorphic)


def test_canonical_chain_map_shapes():
    four = chain_poset(4)
    assert canonical_chain_map(four, (0, 3), 4).values == (0, 0, 0, 3)
    assert canonical_chain_map(four, (0, 1, 3), 4).values == (0, 1, 1, 3)
    assert canonical_chain_map(four, (0, 1, 2, 3), 4).values == (0, 1, 2, 3)
    assert canonical_chain_map(four, (0, 3), 2).values == (0, 3)
    with pytest.raises(ChainTooShort):
        canonical_chain_map(four, (2,), 4)
    with pytest.raises(BadHeight):
        canonical_chain_map(four, (0, 1, 2), 2)


def test_canonical_map_image_is_the_chain():
    P = catalog("cone_diamond")
    for chain in [(0, 5), (0, 1, 5), (0, 1, 4, 5)]:
        m = canonical_chain_map(P, chain, 5)
        assert tuple(m.image()) == chain


def brute_endpoint_fixing(d):
    'oracle: filter the full adjunction set by the four endpoint equations'
    out = []
    for c in enumerate_adjunctions(chain_poset(d)):
        lo, hi = c.lower.values, c.upper.values
        if lo[0] == 0 and hi[0] == 0 and lo[d - 1] == d - 1 and hi[d - 1] == d - 1:
            out.append((lo, hi))
    return out


def test_endpoint_fixing_counts():
    # frozen from the brute-force filter over Adj(d)
    assert [(c.lower.values, c.upper.values) for c in endpoint_fixing_adjunctions(2)] \
        == [((0, 1), (0, 1))]
    got3 = [(c.lower.values, c.upper.values) for c in endpoint_fixing_adjunctions(3)]
    assert got3 == brute_endpoint_fixing(3)
    assert got3 == [((0, 1, 2), (0, 1, 2)), ((0, 2, 2), (0, 0, 2))]
    got4 = [(c.lower.values, c.upper.values) for c in endpoint_fixing_adjunctions(4)]
    assert got4 == brute_endpoint_fixing(4)
    assert ((0, 1, 1, 3), (0, 2, 2, 3)) in got4   # collapses the middle rung
    assert len(got4) == 6
    with pytest.raises(BadHeight):
        endpoint_fixing_adjunctions(1)


def test_chain_taxotopic_diamond(diamond):
    bot, a, b, top = (diamond.index(x) for x in "⊥ a b ⊤".split())
    assert chain_taxotopic(diamond, (b, top), (b, top)) is not None
    # a chain through ⊥ can deform into one leaving ⊥, not conversely
    assert chain_taxotopic(diamond, (bot, top), (b, top)) is not None
    assert chain_taxotopic(diamond, (b, top), (bot, top)) is None
    with pytest.raises(ChainTooShort):
        chain_taxotopic(diamond, (a,), (b, top))


def test_chain_taxotopic_cone_vee():
    CV = cone(catalog("V"))
    bot, top = CV.bottom(), CV.top()
    v, a = CV.index("v"), CV.index("a")
    assert chain_taxotopic(CV, (bot, v, top), (bot, a, top)) is not None
    assert chain_taxotopic(CV, (bot, a, top), (bot, v, top)) is not None


def test_chain_witnesses_validate_at_larger_windows(diamond):
    bot, top, b = diamond.index("⊥"), diamond.index("⊤"), diamond.index("b")
    for extra in (0, 1, 2):
        w = chain_taxotopic(diamond, (bot, top), (b, top), window=4 + extra)
        assert w is not None
        ka = window_chain_map(diamond, (bot, top), 4 + extra)
        kb = window_chain_map(diamond, (b, top), 4 + extra)
        assert w.validates(ka, kb)


def test_L_two():
    L = L_poset(chain_poset(2))
    want = disjoint_union(chain_poset(1), chain_poset(2))
    assert is_isomorphic(L.poset, want)


def test_L_three():
    L = L_poset(chain_poset(3))
    want = disjoint_union(chain_poset(3), chain_poset(3))
    assert is_isomorphic(L.poset, want)
    # the middle class of the chain stratum holds both full-window chains
    i = L.chain_index((0, 2))
    j = L.chain_index((0, 1, 2))
    assert L.quotient.class_of[i] == L.quotient.class_of[j]


def test_L_four():
    L = L_poset(chain_poset(4))
    want = disjoint_union(catalog("diamond"), chain_poset(3))
    assert is_isomorphic(L.poset, want)


def test_L_no_cross_stratum_relations(diamond):
    for P in [chain_poset(3), diamond, cone(catalog("V"))]:
        L = L_poset(P)
        for (i, j) in L.preorder.pairs():
            assert (len(L.chains[i]) == 1) == (len(L.chains[j]) == 1)


def test_L_witnesses_validate(diamond):
    L = L_poset(diamond)
    for (i, j), w in L.witnesses.items():
        assert w.validates(L.maps[i], L.maps[j])


def test_constant_stratum_is_lambda(diamond):
    for P in [chain_poset(2), diamond, catalog("V"), catalog("X")]:
        L = L_poset(P)
        lam = lambda_poset(P)
        singles = [i for i, c in enumerate(L.chains) if len(c) == 1]
        sub, order = L.poset.subposet(sorted({L.quotient.class_of[i] for i in singles}))
        assert is_isomorphic(sub, lam.poset)


def test_cone_stratification():
    # non-constant classes of a cone split by their boundary intersection,
    # ordered bottom-window < {both, neither} < top-window
    CV = cone(catalog("V"))
    L = L_poset(CV)
    bot, top = CV.bottom(), CV.top()

    def stratum(c):
        elems = set(c.elements)
        return (bot in elems, top in elems)

    reps = {}
    for i, c in enumerate(L.chains):
        if len(c) > 1:
            reps.setdefault(stratum(c), set()).add(L.quotient.class_of[i])
    for cls_set in reps.values():
        assert len(cls_set) == 1
    q = L.poset
    lo = reps[(True, False)].pop()
    hi = reps[(False, True)].pop()
    mid_both = reps[(True, True)].pop()
    mid_none = reps[(False, False)].pop()
    assert q.lt(lo, mid_both) and q.lt(mid_both, hi)
    assert q.lt(lo, mid_none) and q.lt(mid_none, hi)
    assert not q.leq(mid_both, mid_none) and not q.leq(mid_none, mid_both)


def test_L_antichain_has_no_multichains():
    L = L_poset(antichain(3))
    assert all(len(c) == 1 for c in L.chains)
    assert is_isomorphic(L.poset, chain_poset(1))
    with pytest.raises(EmptyPoset):
        L_poset(empty_poset())
