"""Shared fixtures and independent brute-force oracles.

The oracles here recompute expectations from first principles (closures by
pairwise scanning, adjunction law over all map pairs, chains by subset
filtering) so the library paths are checked against something they do not
share code with.
"""

import itertools

import pytest

from taxotopy.poset import FinitePoset, bits, catalog


# -- oracles ----------------------------------------------------------------

def oracle_closure(n, pairs):
    'Reflexive-transitive closure as a set of pairs, by naive iteration.'
    rel = {(i, i) for i in range(n)} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def oracle_monotone_maps(S, P):
    'All monotone value tables S -> P by filtering the full function space.'
    out = []
    for values in itertools.product(range(P.n), repeat=S.n):
        if all(P.leq(values[i], values[j])
               for i in range(S.n) for j in range(S.n) if S.leq(i, j)):
            out.append(values)
    return out


def oracle_adjunction_pairs(P):
    'All (lower, upper) monotone endomap pairs satisfying the adjunction law.'
    maps = oracle_monotone_maps(P, P)
    out = []
    for f in maps:
        for g in maps:
            if all(P.leq(f[p], q) == P.leq(p, g[q])
                   for p in range(P.n) for q in range(P.n)):
                out.append((f, g))
    return out


def oracle_chains(P):
    'All nonempty chains by filtering all subsets for pairwise comparability.'
    out = []
    for mask in range(1, 1 << P.n):
        elems = list(bits(mask))
        if all(P.leq(a, b) or P.leq(b, a) for a in elems for b in elems):
            out.append(tuple(sorted(elems, key=lambda e: sum(P.leq(x, e) for x in elems))))
    return out


def oracle_sccs(n, rel_pairs):
    'Strongly connected classes of a relation, by mutual reachability.'
    reach = oracle_closure(n, rel_pairs)
    classes = []
    assigned = {}
    for i in range(n):
        if i in assigned:
            continue
        cls = frozenset(j for j in range(n) if (i, j) in reach and (j, i) in reach)
        classes.append(cls)
        for j in cls:
            assigned[j] = cls
    return classes


# -- fixtures ----------------------------------------------------------------

@pytest.fixture(scope="session")
def diamond():
    return catalog("diamond")


@pytest.fixture(scope="session")
def vee():
    return catalog("V")


@pytest.fixture(scope="session")
def bowtie():
    return catalog("bowtie")
