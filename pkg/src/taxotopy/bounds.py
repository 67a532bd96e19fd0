"""Size budgets.

Everything downstream of adjunction enumeration is at least exponential in
the poset size, so each entry point checks a budget and raises SizeLimit
instead of hanging.  All caps can be overridden per call.
"""

from .errors import SizeLimit

# hard default caps; CLI verbs impose stricter ones
MAX_ADJ_POSET = 12          # enumerate_adjunctions carrier size
MAX_ISO_POSET = 16          # is_isomorphic carrier size
MAX_GENERATION = 7          # all_posets_up_to
MAX_MAP_SPACE = 5_000_000   # |P| ** |S| candidate space for Pos(S, P)

# CLI-facing defaults
CLI_MAX_LAMBDA = 10
CLI_MAX_HEAVY = 7


def check(value, cap, what, override=None):
    'Raise SizeLimit unless value fits under cap (or the explicit override).'
    limit = cap if override is None else override
    if value > limit:
        raise SizeLimit(f"{what} = {value} exceeds limit {limit}")
    return value
