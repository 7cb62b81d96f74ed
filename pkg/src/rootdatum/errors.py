"""Exception hierarchy.

Every domain failure carries a short machine-readable ``code`` so the CLI can
report it in its error JSON.
"""


class RootDatumError(Exception):
    code = "domain_error"


class DimensionMismatch(RootDatumError, ValueError):
    code = "dimension_mismatch"


class TorsionCokernel(RootDatumError):
    code = "torsion_cokernel"


class RankGuard(RootDatumError):
    code = "rank_guard"


class InvalidDatum(RootDatumError, ValueError):
    code = "invalid_datum"


class UnsupportedGroup(RootDatumError, ValueError):
    code = "unsupported_group"


class ConstructionFailure(RootDatumError):
    code = "construction_failure"


class InvalidShift(RootDatumError, ValueError):
    code = "invalid_shift"


class NonDominant(RootDatumError, ValueError):
    code = "non_dominant"


class NotAlgebraic(RootDatumError):
    code = "not_algebraic"


class RelationViolation(RootDatumError):
    code = "relation_violation"


class UnknownPrime(RootDatumError, KeyError):
    code = "unknown_prime"


class ParityMismatch(RootDatumError, ArithmeticError):
    """Sum of c*p^(e/2) terms whose half-exponents have different parity."""

    code = "parity_mismatch"


class FieldTooSmall(RootDatumError):
    code = "field_too_small"


class NotASquare(RootDatumError, ValueError):
    code = "not_a_square"


class FieldMismatch(RootDatumError, ValueError):
    code = "field_mismatch"


class InvalidArgument(RootDatumError, ValueError):
    code = "invalid_argument"
