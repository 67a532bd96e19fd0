"""Taxotopy invariants of finite posets.

Order-theoretic analogue of homotopy built from monotone Galois
connections: the taxotopy preorder on monotone maps, fundamental posets of
points and chains, and mechanical checks of the structural theorems (cone,
tunnel collapse, disjoint union, van Kampen, rigid subsets).
"""

from .errors import *          # noqa: F401,F403
from .poset import (FinitePoset, MonotoneMap, Preorder, QuotientResult,       # noqa: F401
                    add_bottom, all_posets_up_to, antichain, catalog,
                    chain_poset, chains, cone, connected_components, corpus,
                    disjoint_union, down_set, dual, empty_poset, from_covers,
                    height, identity_map, interval, is_cutset, is_isomorphic,
                    maximal_chains, ordinal_sum, posetal_reflection,
                    product_poset, up_set)
