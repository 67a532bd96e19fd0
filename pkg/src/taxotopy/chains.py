"""Taxotopy of chains: the fundamental poset of maps from the integers.

The integers are never materialised.  A map out of them is eventually
constant on both sides (the target is finite), is determined up to
taxotopy by its image chain, and constant chains never relate to
non-constant ones.  For non-constant chains alpha, beta the class of alpha
sits below the class of beta exactly when some connection g on the target
satisfies

    g.lower(beta) inside alpha,   g.lower(min beta) = min alpha,
                                  g.lower(max beta) = max alpha,
    g.upper(alpha) inside beta,   g.upper(min alpha) = min beta,
                                  g.upper(max alpha) = max beta.

Necessity: a domain witness on the integers is unbounded in both
directions, so it eventually lands in the unbounded fibers of the two
maps, pinning the four endpoint equations; the two commuting squares pin
the memberships.  Sufficiency: index g.lower through beta as a chain map
u with right adjoint w (the law of g restricts to u -| w between the index
chains), send position j to the principal preimage of u(j) and continue by
shifted identity; the derived right adjoint then walks w, and both squares
commute.  The same construction yields a finite witness on a window chain,
returned for inspection and revalidated on every call.
"""

from .errors import BadHeight, ChainTooShort, EmptyPoset, PropertyViolation
from .fundamental import TaxotopyWitness, lambda_poset
from .galois import GaloisConnection, enumerate_adjunctions, right_adjoint_values
from .poset import (MonotoneMap, Preorder, chain_poset, chains, height,
                    posetal_reflection)


class Chain:
    'Nonempty strictly increasing run of elements of one poset.'

    __slots__ = ("poset", "elements")

    def __init__(self, poset, elements):
        self.poset = poset
        self.elements = tuple(elements)
        if not self.elements:
            raise ChainTooShort("chains are nonempty")
        for a, b in zip(self.elements, self.elements[1:]):
            if not (poset.leq(a, b) and a != b):
                raise ValueError(f"{self.elements} is not strictly increasing")

    def __len__(self):
        return len(self.elements)

    def label(self):
        return "<".join(self.poset.labels[e] for e in self.elements)

    def __repr__(self):
        return self.label()


def canonical_chain_map(P, elements, d):
    """Canonical map from the d-chain tracing the given image chain.

    0 goes to the first element, positions 1..n-3 walk the interior,
    the plateau [n-2, d-2] sits on the next-to-last element, and d-1 lands
    on the last; the image is exactly the chain.
    """
    n = len(elements)
    if n < 2:
        raise ChainTooShort("canonical maps need at least two elements")
    if d < n:
        raise BadHeight(f"domain size {d} shorter than the chain ({n})")
    values = [None] * d
    values[0] = elements[0]
    for i in range(1, n - 2):
        values[i] = elements[i]
    for i in range(max(n - 2, 1), d - 1):
        values[i] = elements[n - 2]
    values[d - 1] = elements[n - 1]
    return MonotoneMap(chain_poset(d), P, values, _validated=True)


def window_chain_map(P, elements, d):
    'Map from the d-chain walking the image chain immediately, then resting.'
    n = len(elements)
    if d < n:
        raise BadHeight(f"domain size {d} shorter than the chain ({n})")
    return MonotoneMap(chain_poset(d), P,
                       tuple(elements[min(s, n - 1)] for s in range(d)), _validated=True)


def endpoint_fixing_adjunctions(d):
    'Connections on the d-chain whose both adjoints fix 0 and d-1.'
    if d < 2:
        raise BadHeight("endpoint fixing needs d >= 2")
    out = []
    for c in enumerate_adjunctions(chain_poset(d)):
        lo, hi = c.lower.values, c.upper.values
        if lo[0] == hi[0] == 0 and lo[d - 1] == hi[d - 1] == d - 1:
            out.append(c)
    return tuple(out)


def _chain_conditions(P, alpha, beta, g):
    'The six membership/endpoint conditions deciding [alpha] <= [beta].'
    lo, hi = g.lower.values, g.upper.values
    in_alpha = set(alpha)
    in_beta = set(beta)
    return (all(lo[b] in in_alpha for b in beta)
            and all(hi[a] in in_beta for a in alpha)
            and lo[beta[0]] == alpha[0] and lo[beta[-1]] == alpha[-1]
            and hi[alpha[0]] == beta[0] and hi[alpha[-1]] == beta[-1])


def _window_witness(P, alpha, beta, g, d):
    'Finite witness on the d-window validating the two squares for window maps.'
    m, r = len(alpha), len(beta)
    pos_a = {a: i for i, a in enumerate(alpha)}
    u = [pos_a[g.lower.values[b]] for b in beta]
    lower = tuple(u[s] if s < r else min(s + m - r, d - 1) for s in range(d))
    dch = chain_poset(d)
    upper = right_adjoint_values(dch, dch, lower)
    if upper is None:
        raise PropertyViolation(f"window witness lower map {lower} has no right adjoint")
    e = GaloisConnection(MonotoneMap(dch, dch, lower, _validated=True),
                         MonotoneMap(dch, dch, upper, _validated=True), _validated=True)
    w = TaxotopyWitness(e, g)
    ka = window_chain_map(P, alpha, d)
    kb = window_chain_map(P, beta, d)
    if not w.validates(ka, kb):
        raise PropertyViolation(
            f"constructed chain witness fails for {alpha} <= {beta} via {g!r}")
    return w


def chain_taxotopic(P, alpha, beta, window=None):
    """Witness for chain alpha below chain beta in the chain classes, or None.

    Both chains must be non-constant (length >= 2).  Scans Adj(P) for the
    first connection meeting the six conditions and materialises a finite
    witness on a window chain (default size len(alpha) + len(beta)).
    """
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) < 2 or len(beta) < 2:
        raise ChainTooShort("constant chains are ordered by the point classes")
    if window is None:
        window = len(alpha) + len(beta)
    if window < len(alpha) + len(beta):
        raise BadHeight("window too small for a witness")
    for g in enumerate_adjunctions(P):
        if _chain_conditions(P, alpha, beta, g):
            return _window_witness(P, alpha, beta, g, window)
    return None


class ChainPoset:
    """Taxotopy classes of all chains of P.

    Constant chains carry the point classes; non-constant chains relate via
    the chain criterion; the two strata never mix.  ``maps[i]`` is the
    window representative of ``chains[i]`` and witnesses validate against
    those representatives.
    """

    __slots__ = ("target", "chains", "maps", "preorder", "quotient", "witnesses")

    def __init__(self, target, chains_, maps, preorder, quotient, witnesses):
        self.target = target
        self.chains = tuple(chains_)
        self.maps = tuple(maps)
        self.preorder = preorder
        self.quotient = quotient
        self.witnesses = witnesses

    @property
    def poset(self):
        return self.quotient.quotient

    def chain_index(self, elements):
        elements = tuple(elements)
        for i, c in enumerate(self.chains):
            if c.elements == elements:
                return i
        raise KeyError(elements)

    def __repr__(self):
        return f"ChainPoset(|chains|={len(self.chains)}, classes={self.poset.n})"


def L_poset(P):
    'Fundamental poset of the chains of P (integer-sourced maps, reduced).'
    if P.n == 0:
        raise EmptyPoset("chain classes of the empty poset are undefined")
    all_chains = [Chain(P, c) for c in sorted(chains(P), key=lambda c: (len(c), c))]
    n = len(all_chains)
    window = max(2, 2 * height(P))
    dch = chain_poset(window)
    ident = enumerate_adjunctions(dch)[0]
    maps = [window_chain_map(P, c.elements, window) for c in all_chains]
    rel = [0] * n
    witnesses = {}

    lam = lambda_poset(P)
    singles = [i for i, c in enumerate(all_chains) if len(c) == 1]
    for i in singles:
        p = all_chains[i].elements[0]
        for j in singles:
            q = all_chains[j].elements[0]
            if lam.preorder.leq(p, q):
                rel[i] |= 1 << j
                witnesses[(i, j)] = TaxotopyWitness(ident, lam.witnesses[(p, q)].cod_conn)

    multis = [i for i, c in enumerate(all_chains) if len(c) > 1]
    for i in multis:
        for j in multis:
            w = chain_taxotopic(P, all_chains[i].elements, all_chains[j].elements,
                                window=window)
            if w is not None:
                rel[i] |= 1 << j
                witnesses[(i, j)] = w

    pre = Preorder(n, rel)
    quot = posetal_reflection(pre, [c.label() for c in all_chains])
    return ChainPoset(P, all_chains, maps, pre, quot, witnesses)
