import itertools

import pytest

from taxotopy.errors import CarrierMismatch, SizeLimit
from taxotopy.galois import (GaloisConnection, bottom_extensions, closure_op,
                             compose, cross_connections, enumerate_adjunctions,
                             extend_to_bottom, fixed_set,
                             has_extension_property, inclusion_map,
                             interior_op, is_strong_sub, is_weak_sub,
                             left_adjoint_of, restricts_to, right_adjoint_of,
                             weak_subsets)
from taxotopy.poset import (MonotoneMap, add_bottom, antichain, catalog,
                            chain_poset, corpus, disjoint_union, identity_map,
                            is_isomorphic, ordinal_sum)
from conftest import oracle_adjunction_pairs, oracle_monotone_maps


def dmap(P, labels):
    return MonotoneMap(P, P, tuple(P.index(x) for x in labels.split()))


def test_right_adjoint_identity(diamond):
    f = identity_map(diamond)
    assert right_adjoint_of(f).values == f.values


def test_right_adjoint_diamond_example(diamond):
    # the single worked adjunction on the diamond: <⊥,⊥,b,b> -| <a,a,⊤,⊤>
    f = dmap(diamond, "⊥ ⊥ b b")
    g = right_adjoint_of(f)
    assert g is not None and g.values == dmap(diamond, "a a ⊤ ⊤").values
    GaloisConnection(f, g)  # law re-verified by the constructor


def test_right_adjoint_antichain_brute():
    A = antichain(2)
    # brute force over all 4 endomaps: only the bijections have adjoints
    results = {}
    for values in itertools.product(range(2), repeat=2):
        try:
            f = MonotoneMap(A, A, values)
        except ValueError:
            continue
        g = right_adjoint_of(f)
        results[values] = None if g is None else g.values
    assert results == {(0, 0): None, (1, 1): None, (0, 1): (0, 1), (1, 0): (1, 0)}


def test_left_adjoint_examples(diamond):
    g = dmap(diamond, "a a ⊤ ⊤")
    f = left_adjoint_of(g)
    assert f.values == dmap(diamond, "⊥ ⊥ b b").values
    two = chain_poset(2)
    const_top = MonotoneMap(two, two, (1, 1))
    assert left_adjoint_of(const_top).values == (0, 0)
    assert left_adjoint_of(identity_map(two)).values == (0, 1)


def test_enumerate_small():
    assert len(enumerate_adjunctions(chain_poset(1))) == 1
    adj2 = enumerate_adjunctions(chain_poset(2))
    assert [(c.lower.values, c.upper.values) for c in adj2] == \
        [((0, 1), (0, 1)), ((0, 0), (1, 1))]


def test_enumerate_matches_bruteforce_oracle():
    # exhaustive law-filter over all monotone endomap pairs, posets up to 4
    for P in corpus(4):
        expected = set(oracle_adjunction_pairs(P))
        got = {(c.lower.values, c.upper.values) for c in enumerate_adjunctions(P)}
        assert got == expected, P


def test_enumerate_diamond_contents(diamond):
    adj = enumerate_adjunctions(diamond)
    lowers = {c.lower.values for c in adj}
    assert tuple(range(4)) in lowers                         # identity
    assert dmap(diamond, "⊥ ⊥ ⊥ ⊥").values in lowers         # ⊥ -| ⊤
    assert dmap(diamond, "⊥ ⊥ b b").values in lowers         # worked example
    assert dmap(diamond, "⊥ a ⊥ a").values in lowers         # its a/b mirror
    assert len(adj) == len(oracle_adjunction_pairs(diamond))
    assert adj[0].is_identity()
    rest = [c.lower.values for c in adj][1:]
    assert rest == sorted(rest)


def test_compose(diamond):
    adj = enumerate_adjunctions(diamond)
    ident = adj[0]
    f = next(c for c in adj if c.lower.values == dmap(diamond, "⊥ ⊥ b b").values)
    assert compose(ident, f) == f and compose(f, ident) == f
    ff = compose(f, f)
    GaloisConnection(ff.lower, ff.upper)  # law holds for the composite
    two = chain_poset(2)
    beta = enumerate_adjunctions(two)[1]
    assert compose(beta, beta) == beta
    with pytest.raises(CarrierMismatch):
        compose(ident, beta)


def test_monoid_on_corpus():
    for P in corpus(3):
        adj = enumerate_adjunctions(P)
        pool = {c.lower.values for c in adj}
        for a in adj:
            for b in adj:
                assert compose(a, b).lower.values in pool


def test_closure_interior(diamond):
    two = chain_poset(2)
    ident = enumerate_adjunctions(two)[0]
    assert closure_op(ident).values == (0, 1) == interior_op(ident).values
    assert fixed_set(closure_op(ident)) == (0, 1)
    beta = enumerate_adjunctions(two)[1]
    assert closure_op(beta).values == (1, 1) and interior_op(beta).values == (0, 0)
    f = next(c for c in enumerate_adjunctions(diamond)
             if c.lower.values == dmap(diamond, "⊥ ⊥ b b").values)
    cl, it = closure_op(f), interior_op(f)
    assert set(fixed_set(cl)) == {diamond.index("a"), diamond.index("⊤")}
    assert set(fixed_set(it)) == {diamond.index("⊥"), diamond.index("b")}


def test_closure_interior_laws_on_corpus():
    for P in corpus(4):
        for c in enumerate_adjunctions(P):
            cl, it = closure_op(c), interior_op(c)
            for p in range(P.n):
                assert P.leq(p, cl.values[p]) and P.leq(it.values[p], p)
            assert cl.compose(cl).values == cl.values
            assert it.compose(it).values == it.values
            # lower/upper restrict to inverse bijections between fixed sets
            fc, fi = fixed_set(cl), fixed_set(it)
            assert sorted(c.lower.values[p] for p in fc) == sorted(fi)
            assert all(c.upper.values[c.lower.values[p]] == p for p in fc)
            assert all(c.lower.values[c.upper.values[p]] == p for p in fi)


def test_adjoints_preserve_extrema_on_corpus():
    for P in corpus(4):
        top, bot = P.top(), P.bottom()
        for c in enumerate_adjunctions(P):
            if bot is not None:
                assert c.lower.values[bot] == bot
            if top is not None:
                assert c.upper.values[top] == top


def test_restricts_to(diamond):
    adj = enumerate_adjunctions(diamond)
    assert restricts_to(adj[0], [0, 2]) is not None
    four = chain_poset(4)
    bottop = enumerate_adjunctions(four)[1]
    assert bottop.lower.values == (0, 0, 0, 0)
    assert restricts_to(bottop, [1, 2]) is None
    f = next(c for c in adj if c.lower.values == dmap(diamond, "⊥ ⊥ b b").values)
    assert restricts_to(f, [diamond.index("⊥"), diamond.index("⊤")]) is None


def test_is_weak_sub():
    four = chain_poset(4)
    assert is_weak_sub(four, range(4))
    assert not is_weak_sub(four, [1, 2])
    # weak subsets of the bowtie: the two antichain layers and the whole
    b = catalog("bowtie")
    masks = weak_subsets(b)
    layers = {sum(1 << i for i in b.minimal_elements()),
              sum(1 << i for i in b.maximal_elements()), (1 << b.n) - 1}
    assert layers <= set(masks)


def test_extension_property(diamond):
    one = chain_poset(1)
    for P in [diamond, catalog("V"), chain_poset(3)]:
        bang = MonotoneMap(P, one, (0,) * P.n)
        assert has_extension_property(bang)
        for p in range(P.n):
            const = MonotoneMap(one, P, (p,))
            assert has_extension_property(const)
    D = disjoint_union(catalog("V"), chain_poset(1))
    assert has_extension_property(inclusion_map(D, [0, 1, 2]))


def test_is_strong_sub():
    two = chain_poset(2)
    assert is_strong_sub(two, [0, 1])
    # the interior {1, 2} of the 4-chain is not even a weak subposet
    assert not is_strong_sub(chain_poset(4), [1, 2])


def test_extend_to_bottom(diamond):
    two = chain_poset(2)
    ident = enumerate_adjunctions(two)[0]
    ext = extend_to_bottom(ident)
    assert ext.lower.values == (0, 1, 2) == ext.upper.values
    beta = enumerate_adjunctions(two)[1]
    ext = extend_to_bottom(beta)
    assert ext.lower.values == (0, 1, 1) and ext.upper.values == (0, 2, 2)
    # pool for the star preorder keeps Adj order, identity first
    pool = bottom_extensions(diamond)
    assert pool[0].is_identity() and len(pool) == len(enumerate_adjunctions(diamond))


def test_cross_connections_count():
    # adjunctions 2 <-> 2 across distinct copies match Adj(2) as pairs
    two, other = chain_poset(2), chain_poset(2)
    cross = cross_connections(two, other)
    assert [(c.lower.values, c.upper.values) for c in cross] == \
        [((0, 0), (1, 1)), ((0, 1), (0, 1))]


def test_ordinal_sum_componentwise_connections():
    """Componentwise pairs embed into Adj(P1 <| P2) and are exactly the
    connections preserving the two layers."""
    for P1, P2 in [(chain_poset(1), chain_poset(2)),
                   (antichain(2), antichain(2)),
                   (chain_poset(2), antichain(2))]:
        P = ordinal_sum(P1, P2)
        a1, a2 = enumerate_adjunctions(P1), enumerate_adjunctions(P2)
        spliced = set()
        for c1 in a1:
            for c2 in a2:
                lo = c1.lower.values + tuple(v + P1.n for v in c2.lower.values)
                hi = c1.upper.values + tuple(v + P1.n for v in c2.upper.values)
                GaloisConnection(MonotoneMap(P, P, lo), MonotoneMap(P, P, hi))
                spliced.add(lo)
        componentwise = set()
        for c in enumerate_adjunctions(P):
            lo, hi = c.lower.values, c.upper.values
            if all((lo[i] < P1.n) == (i < P1.n) == (hi[i] < P1.n)
                   for i in range(P.n)):
                componentwise.add(lo)
        assert spliced == componentwise


def test_size_limit():
    with pytest.raises(SizeLimit):
        enumerate_adjunctions(antichain(13))
