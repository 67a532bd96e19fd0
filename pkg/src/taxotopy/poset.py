"""Finite posets, monotone maps, and the standard constructions.

A poset is a tuple of labels plus a reflexive/antisymmetric/transitive
relation stored as one machine integer per element: ``up[i]`` has bit ``j``
set iff ``i <= j``.  Elements are the indices ``0..n-1``; labels matter only
at the I/O boundary.  All values are immutable after construction and safe
to share.
"""

import itertools

import numpy as np

from . import bounds
from .errors import (CycleError, EmptyPoset, NotComparable, NotReflexive,
                     NotTransitive, SizeLimit, UnknownLabel, UnknownName)


def bits(mask):
    'Indices of the set bits of mask, ascending.'
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    return mask.bit_count()


class FinitePoset:
    """Immutable finite poset on elements 0..n-1.

    ``up[i]`` is the bitmask of the upper set of i, ``down[i]`` of the lower
    set.  Equality and hashing are structural (labels included).
    """

    __slots__ = ("n", "labels", "up", "down", "_hash")

    def __init__(self, labels, up, _validated=False):
        labels = tuple(labels)
        up = tuple(up)
        n = len(labels)
        if len(set(labels)) != n:
            raise UnknownLabel(f"duplicate labels in {labels}")
        if len(up) != n:
            raise ValueError("labels and relation disagree on size")
        self.n = n
        self.labels = labels
        self.up = up
        self.down = _transpose(up, n)
        self._hash = None
        if not _validated:
            self._validate()

    def _validate(self):
        n, up, down = self.n, self.up, self.down
        full = (1 << n) - 1
        for i in range(n):
            if up[i] & ~full:
                raise ValueError("relation mentions elements out of range")
            if not (up[i] >> i) & 1:
                raise NotReflexive(f"{self.labels[i]} not <= itself")
            if up[i] & down[i] != 1 << i:
                j = next(b for b in bits(up[i] & down[i]) if b != i)
                raise CycleError(f"{self.labels[i]} and {self.labels[j]} mutually related")
        for i in range(n):
            acc = 0
            for j in bits(up[i]):
                acc |= up[j]
            if acc & ~up[i]:
                raise NotTransitive(f"relation not transitive at {self.labels[i]}")

    # -- relation queries --------------------------------------------------

    def leq(self, i, j):
        return bool((self.up[i] >> j) & 1)

    def lt(self, i, j):
        return i != j and self.leq(i, j)

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"no element labelled {label!r}") from None

    def matrix(self):
        'Relation as an n x n boolean numpy array.'
        n = self.n
        out = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in bits(self.up[i]):
                out[i, j] = True
        return out

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return (isinstance(other, FinitePoset)
                and self.labels == other.labels and self.up == other.up)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.labels, self.up))
        return self._hash

    def __repr__(self):
        return f"FinitePoset({list(self.labels)}, covers={self.cover_pairs()})"

    # -- derived structure -------------------------------------------------

    def covers(self):
        'Hasse relation: list of masks, covers_of[i] = elements covering i.'
        n, up = self.n, self.up
        out = []
        for i in range(n):
            strict = up[i] & ~(1 << i)
            cov = strict
            for j in bits(strict):
                cov &= ~(up[j] & ~(1 << j))
            out.append(cov)
        return out

    def cover_pairs(self):
        return [(self.labels[i], self.labels[j])
                for i, cov in enumerate(self.covers()) for j in bits(cov)]

    def maximal_elements(self):
        return [i for i in range(self.n) if self.up[i] == 1 << i]

    def minimal_elements(self):
        return [i for i in range(self.n) if self.down[i] == 1 << i]

    def top(self):
        'Index of the maximum element, or None.'
        for i in range(self.n):
            if self.down[i] == (1 << self.n) - 1:
                return i
        return None

    def bottom(self):
        for i in range(self.n):
            if self.up[i] == (1 << self.n) - 1:
                return i
        return None

    def element_level(self, i):
        'Length (size) of the longest chain ending at i.'
        return _levels(self)[i]

    def subposet(self, elems):
        'Induced subposet on the given element indices (ascending order kept).'
        elems = sorted(elems)
        pos = {e: k for k, e in enumerate(elems)}
        up = []
        for e in elems:
            m = 0
            for f in bits(self.up[e]):
                if f in pos:
                    m |= 1 << pos[f]
            up.append(m)
        sub = FinitePoset(tuple(self.labels[e] for e in elems), up, _validated=True)
        return sub, elems

    def is_total_order(self):
        full = (1 << self.n) - 1
        return all(self.up[i] | self.down[i] == full for i in range(self.n))

    def is_connected(self):
        return len(connected_components(self)) <= 1


def _transpose(up, n):
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i
    return tuple(down)


def _levels(P):
    lev = [0] * P.n
    for i in sorted(range(P.n), key=lambda i: popcount(P.down[i])):
        below = P.down[i] & ~(1 << i)
        lev[i] = 1 + max((lev[j] for j in bits(below)), default=0)
    return lev


class MonotoneMap:
    'Order-preserving map between two finite posets, stored as a value table.'

    __slots__ = ("dom", "cod", "values")

    def __init__(self, dom, cod, values, _validated=False):
        self.dom = dom
        self.cod = cod
        self.values = tuple(values)
        if not _validated:
            if len(self.values) != dom.n:
                raise ValueError("value table has wrong length")
            if any(v < 0 or v >= cod.n for v in self.values):
                raise ValueError("value out of range")
            if not is_monotone(dom, cod, self.values):
                raise ValueError(f"map {self.values} is not monotone")

    def __call__(self, i):
        return self.values[i]

    def compose(self, other):
        'self after other.'
        if other.cod is not self.dom and other.cod != self.dom:
            raise ValueError("composition domains do not match")
        return MonotoneMap(other.dom, self.cod,
                           tuple(self.values[v] for v in other.values), _validated=True)

    def image(self):
        return sorted(set(self.values))

    def __eq__(self, other):
        return (isinstance(other, MonotoneMap) and self.dom == other.dom
                and self.cod == other.cod and self.values == other.values)

    def __hash__(self):
        return hash((id(self.dom), id(self.cod), self.values))

    def __repr__(self):
        vals = ",".join(self.cod.labels[v] for v in self.values)
        return f"<{vals}>"


def is_monotone(dom, cod, values):
    for i in range(dom.n):
        for j in bits(dom.up[i]):
            if not cod.leq(values[i], values[j]):
                return False
    return True


def identity_map(P):
    return MonotoneMap(P, P, range(P.n), _validated=True)


class Preorder:
    'Reflexive transitive relation on 0..n-1; antisymmetry not required.'

    __slots__ = ("n", "rel")

    def __init__(self, n, rel, _validated=False):
        self.n = n
        self.rel = tuple(rel)
        if not _validated:
            for i in range(n):
                if not (self.rel[i] >> i) & 1:
                    raise NotReflexive(f"element {i} not related to itself")
            for i in range(n):
                acc = 0
                for j in bits(self.rel[i]):
                    acc |= self.rel[j]
                if acc & ~self.rel[i]:
                    raise NotTransitive(f"preorder not transitive at {i}")

    def leq(self, i, j):
        return bool((self.rel[i] >> j) & 1)

    def pairs(self):
        return [(i, j) for i in range(self.n) for j in bits(self.rel[i])]


class QuotientResult:
    'Posetal reflection of a preorder: quotient poset plus the class map.'

    __slots__ = ("quotient", "class_of")

    def __init__(self, quotient, class_of):
        self.quotient = quotient
        self.class_of = tuple(class_of)

    def members(self, c):
        return [i for i, k in enumerate(self.class_of) if k == c]


def posetal_reflection(pre, labels=None):
    'Collapse mutually related elements of a preorder to get a poset.'
    n = pre.n
    rel = pre.rel
    relT = _transpose(rel, n)
    class_of = [-1] * n
    reps = []
    for i in range(n):
        if class_of[i] >= 0:
            continue
        c = len(reps)
        reps.append(i)
        for j in bits(rel[i] & relT[i]):
            class_of[j] = c
    m = len(reps)
    qup = []
    for a in range(m):
        mask = 0
        for b in range(m):
            if (rel[reps[a]] >> reps[b]) & 1:
                mask |= 1 << b
        qup.append(mask)
    if labels is None:
        labels = [str(i) for i in range(n)]
    qlabels = []
    for c in range(m):
        members = [labels[i] for i, k in enumerate(class_of) if k == c]
        qlabels.append(members[0] if len(members) == 1 else "{%s}" % ",".join(members))
    quotient = FinitePoset(qlabels, qup)
    return QuotientResult(quotient, class_of)


# -- constructions ---------------------------------------------------------

def from_covers(labels, cover_pairs):
    'Poset from labels and covering pairs; relation is the closure.'
    labels = tuple(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise UnknownLabel(f"duplicate labels in {labels}")
    n = len(labels)
    up = [1 << i for i in range(n)]
    for a, b in cover_pairs:
        if a not in index:
            raise UnknownLabel(f"unknown label {a!r} in cover {a} < {b}")
        if b not in index:
            raise UnknownLabel(f"unknown label {b!r} in cover {a} < {b}")
        up[index[a]] |= 1 << index[b]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = up[i]
            for j in bits(up[i]):
                acc |= up[j]
            if acc != up[i]:
                up[i] = acc
                changed = True
    for i in range(n):
        for j in bits(up[i]):
            if j != i and (up[j] >> i) & 1:
                raise CycleError(f"cycle through {labels[i]} and {labels[j]}")
    return FinitePoset(labels, up, _validated=True)


def _fresh(label, taken):
    while label in taken:
        label += "'"
    return label


def empty_poset():
    return FinitePoset((), ())


def chain_poset(k, prefix=""):
    'Total order 0 < 1 < ... < k-1.'
    labels = [f"{prefix}{i}" for i in range(k)]
    up = [((1 << k) - 1) & ~((1 << i) - 1) for i in range(k)]
    return FinitePoset(labels, up, _validated=True)


def antichain(k):
    return FinitePoset([chr(ord("a") + i) if k <= 26 else f"a{i}" for i in range(k)],
                       [1 << i for i in range(k)], _validated=True)


def catalog(name):
    'Named posets used throughout: one, two, three, n(k), diamond, V, X, bowtie, antichain(k), cone_diamond.'
    name = name.strip()
    if name == "one":
        return chain_poset(1)
    if name == "two":
        return chain_poset(2)
    if name == "three":
        return chain_poset(3)
    if name.startswith("n(") and name.endswith(")"):
        k = _catalog_arg(name)
        return chain_poset(k)
    if name.startswith("antichain(") and name.endswith(")"):
        k = _catalog_arg(name)
        return antichain(k)
    if name == "diamond":
        return from_covers("⊥ a b ⊤".split(),
                           [("⊥", "a"), ("⊥", "b"), ("a", "⊤"), ("b", "⊤")])
    if name == "V":
        return from_covers("v a b".split(), [("v", "a"), ("v", "b")])
    if name == "X":
        return from_covers("a b m c d".split(),
                           [("a", "m"), ("b", "m"), ("m", "c"), ("m", "d")])
    if name == "bowtie":
        return from_covers("a b c d".split(),
                           [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    if name == "cone_diamond":
        return cone(catalog("diamond"))
    raise UnknownName(f"no catalog poset named {name!r}")


def _catalog_arg(name):
    arg = name[name.index("(") + 1:-1]
    try:
        k = int(arg)
    except ValueError:
        raise UnknownName(f"bad size argument in {name!r}") from None
    if k < 1:
        raise UnknownName(f"size argument must be positive in {name!r}")
    return k


def cone(P):
    'Adjoin a bottom and a top: bottom at index 0, P shifted by 1, top last.'
    taken = set(P.labels)
    bot = _fresh("⊥", taken)
    taken.add(bot)
    top = _fresh("⊤", taken)
    n = P.n
    labels = (bot,) + P.labels + (top,)
    m = n + 2
    full = (1 << m) - 1
    up = [full]
    for i in range(n):
        up.append((P.up[i] << 1) | (1 << (m - 1)))
    up.append(1 << (m - 1))
    return FinitePoset(labels, up, _validated=True)


def disjoint_union(P, Q):
    'Coproduct; no relations between the two parts.'
    taken = set(P.labels)
    qlabels = []
    for lab in Q.labels:
        lab = _fresh(lab, taken)
        taken.add(lab)
        qlabels.append(lab)
    labels = P.labels + tuple(qlabels)
    up = list(P.up) + [m << P.n for m in Q.up]
    return FinitePoset(labels, up, _validated=True)


def ordinal_sum(P, Q):
    'Every element of P strictly below every element of Q.'
    D = disjoint_union(P, Q)
    qpart = ((1 << Q.n) - 1) << P.n
    up = [D.up[i] | qpart for i in range(P.n)] + list(D.up[P.n:])
    return FinitePoset(D.labels, up, _validated=True)


def dual(P):
    return FinitePoset(P.labels, P.down, _validated=True)


def add_bottom(P):
    'P with a fresh bottom adjoined (index 0); equals ordinal_sum(one, P).'
    bot = _fresh("⊥", set(P.labels))
    one = FinitePoset((bot,), (1,), _validated=True)
    return ordinal_sum(one, P)


def product_poset(P, Q):
    'Componentwise order on pairs; element (i, j) gets index i * |Q| + j.'
    labels = [f"({a},{b})" for a in P.labels for b in Q.labels]
    up = []
    for i in range(P.n):
        for j in range(Q.n):
            mask = 0
            for i2 in bits(P.up[i]):
                for j2 in bits(Q.up[j]):
                    mask |= 1 << (i2 * Q.n + j2)
            up.append(mask)
    return FinitePoset(labels, up, _validated=True)


# -- chains, components, cutsets -----------------------------------------

def chains(P):
    'All nonempty chains as ascending index tuples.'
    out = []

    def grow(chain, last):
        out.append(tuple(chain))
        above = P.up[last] & ~(1 << last)
        for j in bits(above):
            chain.append(j)
            grow(chain, j)
            chain.pop()

    for i in range(P.n):
        grow([i], i)
    return out


def height(P):
    'Size of the longest chain.'
    if P.n == 0:
        raise EmptyPoset("height of the empty poset is undefined")
    return max(_levels(P))


def maximal_chains(P):
    'Maximal chains = saturated chains from a minimal to a maximal element.'
    cov = P.covers()
    out = []

    def walk(chain, last):
        if cov[last] == 0:
            out.append(tuple(chain))
            return
        for j in bits(cov[last]):
            chain.append(j)
            walk(chain, j)
            chain.pop()

    for i in P.minimal_elements():
        walk([i], i)
    return out


def connected_components(P):
    'Partition of elements into comparability components (list of masks).'
    n = P.n
    seen = 0
    comps = []
    adj = [P.up[i] | P.down[i] for i in range(n)]
    for i in range(n):
        if (seen >> i) & 1:
            continue
        comp = 1 << i
        frontier = adj[i]
        while frontier & ~comp:
            comp |= frontier
            new = 0
            for j in bits(frontier):
                new |= adj[j]
            frontier = new & ~comp
        seen |= comp
        comps.append(comp)
    return comps


def up_set(P, i):
    return sorted(bits(P.up[i]))


def down_set(P, i):
    return sorted(bits(P.down[i]))


def interval(P, i, j):
    'Closed interval [i, j]; requires i <= j.'
    if not P.leq(i, j):
        raise NotComparable(f"{P.labels[i]} is not below {P.labels[j]}")
    return sorted(bits(P.up[i] & P.down[j]))


def is_cutset(P, elems):
    'True iff every maximal chain meets elems.'
    mask = 0
    for e in elems:
        mask |= 1 << e
    for chain in maximal_chains(P):
        if not any((mask >> c) & 1 for c in chain):
            return False
    return True


# -- isomorphism and canonical forms --------------------------------------

def _refined_colors(P):
    'Permutation-invariant element colors: (|down|, |up|, level) refined twice.'
    n = P.n
    lev = _levels(P)
    colors = [(popcount(P.down[i]), popcount(P.up[i]), lev[i]) for i in range(n)]
    colors = _rank(colors)
    for _ in range(2):
        raw = []
        for i in range(n):
            below = tuple(sorted(colors[j] for j in bits(P.down[i] & ~(1 << i))))
            above = tuple(sorted(colors[j] for j in bits(P.up[i] & ~(1 << i))))
            raw.append((colors[i], below, above))
        colors = _rank(raw)
    return colors


def _rank(values):
    order = {v: r for r, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def canonical_key(P):
    """Canonical encoding of the relation, minimal over all permutations.

    Permutations are restricted to respect the refined color classes; within
    that space a branch-and-bound search minimises the step-by-step matrix
    encoding.  Two posets are isomorphic iff their keys are equal.
    """
    n = P.n
    if n == 0:
        return ()
    colors = _refined_colors(P)
    slots = sorted(range(n), key=lambda i: colors[i])
    slot_color = [colors[i] for i in slots]
    candidates = [[i for i in range(n) if colors[i] == c] for c in slot_color]
    up = P.up
    best = [None]
    perm = [0] * n
    used = [False] * n

    def encode_step(k):
        'Bits added when position k is assigned: row k then column k.'
        word = 0
        pk = perm[k]
        for j in range(k + 1):
            word = (word << 1) | ((up[pk] >> perm[j]) & 1)
        for j in range(k):
            word = (word << 1) | ((up[perm[j]] >> pk) & 1)
        return word

    def search(k, prefix):
        if k == n:
            if best[0] is None or tuple(prefix) < best[0]:
                best[0] = tuple(prefix)
            return
        for cand in candidates[k]:
            if used[cand]:
                continue
            perm[k] = cand
            step = encode_step(k)
            if best[0] is not None and prefix + [step] > list(best[0][:k + 1]):
                continue
            used[cand] = True
            search(k + 1, prefix + [step])
            used[cand] = False

    search(0, [])
    return (n,) + best[0]


def is_isomorphic(P, Q, max_size=None):
    'Order isomorphism P -> Q as an index tuple, or None.'
    if P.n != Q.n:
        return None
    bounds.check(P.n, bounds.MAX_ISO_POSET, "poset size for isomorphism", max_size)
    if P.n == 0:
        return ()
    cp, cq = _refined_colors(P), _refined_colors(Q)
    if sorted(cp) != sorted(cq):
        return None
    n = P.n
    targets = [[j for j in range(n) if cq[j] == cp[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(targets[i]))
    mapping = [-1] * n
    used = [False] * n

    def extend(k):
        if k == n:
            return True
        i = order[k]
        for j in targets[i]:
            if used[j]:
                continue
            ok = True
            for k2 in range(k):
                i2 = order[k2]
                if P.leq(i, i2) != Q.leq(j, mapping[i2]) or P.leq(i2, i) != Q.leq(mapping[i2], j):
                    ok = False
                    break
            if ok:
                mapping[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                used[j] = False
        return False

    return tuple(mapping) if extend(0) else None


# -- exhaustive isomorph-free generation -----------------------------------

_GENERATION_CACHE = {}


def all_posets_up_to(n, max_size=None):
    """All posets on exactly n elements, one per isomorphism class.

    Built by extending (n-1)-element representatives with a new maximal
    element over every down-closed subset, then deduplicating by canonical
    key.  Deterministic order (sorted by key).
    """
    bounds.check(n, bounds.MAX_GENERATION, "poset generation size", max_size)
    if n < 1:
        raise SizeLimit("generation needs n >= 1")
    if n in _GENERATION_CACHE:
        return list(_GENERATION_CACHE[n])
    if n == 1:
        result = [chain_poset(1)]
    else:
        found = {}
        for R in all_posets_up_to(n - 1, max_size=max_size):
            for mask in _down_closed_subsets(R):
                ext = _extend_with_max(R, mask)
                key = canonical_key(ext)
                if key not in found:
                    found[key] = ext
        result = [found[k] for k in sorted(found)]
    _GENERATION_CACHE[n] = result
    return list(result)


def corpus(max_n, max_size=None):
    'All posets of sizes 1..max_n, one per isomorphism class.'
    out = []
    for n in range(1, max_n + 1):
        out.extend(all_posets_up_to(n, max_size=max_size))
    return out


def _down_closed_subsets(P):
    n = P.n
    out = []
    for mask in range(1 << n):
        ok = True
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            if P.down[i] & ~mask:
                ok = False
                break
            m ^= low
        if ok:
            out.append(mask)
    return out


def _extend_with_max(P, mask):
    n = P.n
    labels = tuple(str(i) for i in range(n + 1))
    up = [P.up[i] | (1 << n) if (mask >> i) & 1 else P.up[i] for i in range(n)]
    up.append(1 << n)
    return FinitePoset(labels, up, _validated=True)
