"""Exception hierarchy.

Absence of a value (e.g. a map with no right adjoint) is never an error;
these classes cover invalid inputs, blown size budgets, unmet theorem
hypotheses, and hard falsifications.
"""


class TaxotopyError(Exception):
    pass


# -- input / construction errors ------------------------------------------

class CycleError(TaxotopyError):
    'Transitive closure of the cover relation violates antisymmetry.'


class UnknownLabel(TaxotopyError):
    pass


class UnknownName(TaxotopyError):
    pass


class ParseError(TaxotopyError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}" + (f", col {column}" if column is not None else "") + f": {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class EmptyPoset(TaxotopyError):
    pass


class NotComparable(TaxotopyError):
    pass


class NotReflexive(TaxotopyError):
    pass


class NotTransitive(TaxotopyError):
    pass


class CarrierMismatch(TaxotopyError):
    pass


class ChainTooShort(TaxotopyError):
    pass


class BadHeight(TaxotopyError):
    pass


class NotConnected(TaxotopyError):
    pass


class NotATunnel(TaxotopyError):
    pass


class SymmetryViolation(TaxotopyError):
    'Relation on a square lacks coordinate symmetry, so folding is undefined.'


class AdmissibilityNotIdentity(TaxotopyError):
    'Some adjunction exchanges the two components, so the rigid-pair formula does not apply.'


class NotNullTaxotopic(TaxotopyError):
    pass


class MaxUndefined(TaxotopyError):
    'A retract value max(h(s^down) & Q) does not exist; only chain domains guarantee it.'


# -- cover validation ------------------------------------------------------

class CoverError(TaxotopyError):
    pass


class EmptyBlock(CoverError):
    pass


class NotWeakSub(CoverError):
    pass


class NotIntersectionClosed(CoverError):
    pass


class NotCovering(CoverError):
    pass


class NoRestriction(CoverError):
    pass


class NotCompatible(CoverError):
    pass


class NotChainCompact(CoverError):
    pass


class GlueConflict(CoverError):
    pass


class NotMatching(CoverError):
    pass


# -- budgets and verdicts --------------------------------------------------

class SizeLimit(TaxotopyError):
    'Instance exceeds the configured size budget; pass a larger bound to override.'


class HypothesisFailed(TaxotopyError):
    'A theorem checker refused to run because a stated hypothesis does not hold.'

    def __init__(self, clause, detail=""):
        super().__init__(f"{clause}" + (f": {detail}" if detail else ""))
        self.clause = clause


class TheoremViolation(TaxotopyError):
    """Both sides of a theorem were computed independently and disagree.

    This is a hard failure: either an implementation bug or a genuine
    counterexample.  The message carries the full witness data; nothing is
    repaired silently.
    """


class PropertyViolation(TaxotopyError):
    'A property the theory guarantees unconditionally failed; indicates a bug.'
