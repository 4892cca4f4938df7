"""Error taxonomy.

Two families matter for the command line tool: validation errors are the
user's fault (bad input, bad parameters, structures that fail a required
property) and map to exit code 2; internal invariant breaches mean the tool
caught itself producing inconsistent mathematics and map to exit code 1.
Every error carries a stable machine-readable ``code``.
"""

from __future__ import annotations


class HCError(Exception):
    """Base class for all tool errors."""

    code = "ERROR"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json(self) -> dict:
        out = {"error": self.code, "message": self.message}
        if self.details:
            out["details"] = self.details
        return out


class ValidationError(HCError):
    """Bad input or a structure failing a required property (exit code 2)."""

    code = "VALIDATION_ERROR"


class InternalInvariantError(HCError):
    """The tool caught itself being inconsistent (exit code 1)."""

    code = "INTERNAL_INVARIANT"


# ---- validation errors (exit 2) ----------------------------------------

class ParseError(ValidationError):
    code = "PARSE_ERROR"


class SchemaError(ValidationError):
    code = "SCHEMA_ERROR"


class NonRationalLiteral(ValidationError):
    code = "NON_RATIONAL_LITERAL"


class BadParameters(ValidationError):
    code = "BAD_PARAMETERS"


class JacobiViolation(ValidationError):
    code = "JACOBI_VIOLATION"


class NotAlmostComplex(ValidationError):
    code = "NOT_ALMOST_COMPLEX"


class NotAnticommuting(ValidationError):
    code = "NOT_ANTICOMMUTING"


class NotIntegrable(ValidationError):
    code = "NOT_INTEGRABLE"


class BadCoframe(ValidationError):
    code = "BAD_COFRAME"


class NotHermitian(ValidationError):
    code = "NOT_HERMITIAN"


class NotPositive(ValidationError):
    code = "NOT_POSITIVE"


class NotAlmostAbelian(ValidationError):
    code = "NOT_ALMOST_ABELIAN"


class NoTrivializingForm(ValidationError):
    code = "NO_TRIVIALIZING_FORM"


class DenNotContained(ValidationError):
    code = "DEN_NOT_CONTAINED"


class AlreadyReal(ValidationError):
    code = "ALREADY_REAL"


class DegreeOutOfRange(ValidationError):
    code = "DEGREE_OUT_OF_RANGE"


class WrongDegree(ValidationError):
    code = "WRONG_DEGREE"


# ---- internal invariant breaches (exit 1) -------------------------------

class Leakage(InternalInvariantError):
    """An operator produced bigraded components it must not have."""

    code = "LEAKAGE"


class MethodDisagreement(InternalInvariantError):
    """Two independent routes to the same predicate disagreed."""

    code = "METHOD_DISAGREEMENT"
