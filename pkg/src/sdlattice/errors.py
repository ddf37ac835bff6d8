"""Exception hierarchy.

Every error carries a short machine-readable ``code`` (used by the CLI's JSON
error output) and, where useful, a ``witness`` naming the offending elements.
"""


class LatticeError(Exception):
    code = "error"

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self):
        out = {"code": self.code, "message": str(self)}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


def _jsonable(obj):
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(o) for o in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if hasattr(obj, "item"):
        return obj.item()
    return obj


class NonReflexiveInput(LatticeError):
    code = "non_reflexive"


class InvalidSystem(LatticeError):
    """Raised when a candidate factorization system fails one or more axioms.

    ``diagnostics`` holds the full report; ``witness`` maps each failed axiom
    to one offending pair or triple.
    """

    code = "invalid_system"

    def __init__(self, diagnostics):
        failed = diagnostics.failures()
        super().__init__("violated: " + ", ".join(failed), witness=failed)
        self.diagnostics = diagnostics


class SizeLimitExceeded(LatticeError):
    code = "size_limit"


class NotAPartialOrder(LatticeError):
    code = "not_a_partial_order"


class NotALattice(LatticeError):
    code = "not_a_lattice"


class NotSemidistributive(LatticeError):
    code = "not_semidistributive"


class IsomorphismFailure(LatticeError):
    """Internal consistency failure: a map that theory says is an isomorphism is not."""

    code = "isomorphism_failure"


class ElementNotInSet(LatticeError):
    code = "element_not_in_set"


class NotClosed(LatticeError):
    code = "not_closed"


class NoArrow(LatticeError):
    code = "no_arrow"


class NotAForcingUpset(LatticeError):
    code = "not_a_forcing_upset"


class NotComparable(LatticeError):
    code = "not_comparable"


class NotAnInterval(LatticeError):
    code = "not_an_interval"


class NotTransitiveWarning(UserWarning):
    pass


class DocumentError(LatticeError):
    code = "bad_document"


class KindMismatch(DocumentError):
    code = "kind_mismatch"
