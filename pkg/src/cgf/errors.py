"""Error taxonomy shared by every module.

Each error carries a stable machine-readable ``code`` (used verbatim by the
CLI's structured error JSON) and an optional ``context`` dict with the
offending values.
"""

from __future__ import annotations


class CgfError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message,
                "context": {k: repr(v) for k, v in sorted(self.context.items())}}


class DescriptorMismatch(CgfError):
    code = "descriptor_mismatch"


class NotAUnit(CgfError):
    code = "not_a_unit"


class UnsupportedRing(CgfError):
    code = "unsupported_ring"


class UnsupportedQuotient(CgfError):
    code = "unsupported_quotient"


class DegreeCapExceeded(CgfError):
    code = "degree_cap_exceeded"


class ShapeMismatch(CgfError):
    code = "shape_mismatch"


class SizeLimit(CgfError):
    code = "size_limit"


class SizeBound(CgfError):
    code = "size_bound"


class HalfNotInvertible(CgfError):
    code = "half_not_invertible"


class NotRightInvertible(CgfError):
    code = "not_right_invertible"


class NotInvertible(CgfError):
    code = "not_invertible"


class NotSymplectic(CgfError):
    code = "not_symplectic"


class NotOrthogonal(CgfError):
    code = "not_orthogonal"


class NotClassifiable(CgfError):
    code = "not_classifiable"


class FormViolation(CgfError):
    code = "form_violation"


class BadIndices(CgfError):
    code = "bad_indices"


class WordLimitExceeded(CgfError):
    code = "word_limit_exceeded"


class NoUnitEntry(CgfError):
    code = "no_unit_entry"


class NotLocal(CgfError):
    code = "not_local"


class NotPerpendicular(CgfError):
    code = "not_perpendicular"


class BadPerp(CgfError):
    code = "bad_perp"


class IdealNotComaximal(CgfError):
    code = "ideal_not_comaximal"


class SplitExponentExhausted(CgfError):
    code = "split_exponent_exhausted"


class BadComaximal(CgfError):
    code = "bad_comaximal"


class OverlapMismatch(CgfError):
    code = "overlap_mismatch"


class UnsupportedBase(CgfError):
    code = "unsupported_base"


class ReductionFailed(CgfError):
    code = "reduction_failed"


class UnsupportedPresentation(CgfError):
    code = "unsupported_presentation"


class SearchBudgetExceeded(CgfError):
    code = "search_budget_exceeded"


class ObjectOutOfDomain(CgfError):
    code = "object_out_of_domain"


class WitnessCheckFailed(CgfError):
    code = "witness_check_failed"
