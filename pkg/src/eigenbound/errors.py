"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI prints it and writes it
into reports, so codes must never change once shipped.
"""


class EigenboundError(Exception):
    code = "error"


class SpectrumError(EigenboundError, ValueError):
    code = "invalid_spectrum"


class NonPositiveEigenvalue(SpectrumError):
    code = "non_positive_eigenvalue"


class UnsortedValues(SpectrumError):
    code = "unsorted_values"


class EmptySpectrum(SpectrumError):
    code = "empty_spectrum"


class NonSimpleGroundState(SpectrumError):
    code = "non_simple_ground_state"


class NonPositiveFactor(EigenboundError, ValueError):
    code = "non_positive_factor"


class InvalidGeometry(EigenboundError, ValueError):
    code = "invalid_geometry"


class DomainError(EigenboundError, ValueError):
    code = "domain_error"


class ConvergenceFailure(EigenboundError, ArithmeticError):
    code = "convergence_failure"


class BracketExhausted(EigenboundError, ArithmeticError):
    code = "bracket_exhausted"


class Overflow(EigenboundError, OverflowError):
    code = "overflow"


class IllConditioned(EigenboundError, ArithmeticError):
    code = "ill_conditioned"


class ParseError(EigenboundError, ValueError):
    code = "parse_error"


class NonManifold(EigenboundError, ValueError):
    code = "non_manifold"


class DegenerateCell(EigenboundError, ValueError):
    code = "degenerate_cell"


class EmptyInterior(EigenboundError, ValueError):
    code = "empty_interior"


class UnsupportedGeometry(EigenboundError, ValueError):
    code = "unsupported_geometry"


class TooManyDofs(EigenboundError, ValueError):
    code = "too_many_dofs"


class SingularMass(EigenboundError, ArithmeticError):
    code = "singular_mass"


class GridTooCoarse(EigenboundError, ValueError):
    code = "grid_too_coarse"


class NotOrthonormal(EigenboundError, ValueError):
    code = "not_orthonormal"


class GateViolation(EigenboundError, ValueError):
    code = "gate_violation"


class DimensionTooLow(EigenboundError, ValueError):
    code = "dimension_too_low"


class MissingCurvature(EigenboundError, ValueError):
    code = "missing_curvature"


class MissingSobolev(EigenboundError, ValueError):
    code = "missing_sobolev"


class OperatorMismatch(EigenboundError, ValueError):
    code = "operator_mismatch"


class InsufficientSpectrum(EigenboundError, ValueError):
    code = "insufficient_spectrum"


class NegativeDiscriminant(EigenboundError, ArithmeticError):
    code = "negative_discriminant"


class NoViolationFound(EigenboundError, ArithmeticError):
    code = "no_violation_found"


class NoAdmissibleValue(EigenboundError, ArithmeticError):
    code = "no_admissible_value"


class ScenarioError(EigenboundError, ValueError):
    code = "invalid_scenario"


class MultiRootWarning(UserWarning):
    """The violation function of a bisection bound changed sign more than once."""


class ExtrapolationOrderWarning(UserWarning):
    """Measured Richardson order fell outside the assumed window."""
