# planelie/core/errors.py
"""
Exception hierarchy. Every error carries a human-readable ``detail`` and the
process exit code the CLI reports for it (2: bad input, 3: degenerate or
unsupported input).
"""
from typing import Optional


class PlanelieError(Exception):
    exit_code: int = 3

    def __init__(self, detail: str, *, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


# --- bad input (exit 2) ---

class InputError(PlanelieError):
    exit_code = 2


class ExpressionSyntaxError(InputError):
    def __init__(self, detail: str, text: str, position: int):
        super().__init__(f"{detail} at position {position}: {text!r}")
        self.text = text
        self.position = position


class UnknownIdentifierError(ExpressionSyntaxError):
    def __init__(self, name: str, text: str, position: int):
        super().__init__(f"unknown identifier {name!r}", text, position)
        self.name = name


class UnboundParameterError(InputError):
    pass


class ConstraintViolationError(InputError):
    pass


class UsageError(InputError):
    pass


class UnknownEntryError(InputError):
    pass


# --- degenerate / unsupported input (exit 3) ---

class PoleError(PlanelieError):
    pass


class DegenerateTensorError(PlanelieError):
    pass


class DimensionMismatchError(PlanelieError):
    pass


class HypothesesNotMetError(PlanelieError):
    pass


class InconsistentInputError(PlanelieError):
    pass


class DependentBasisError(PlanelieError):
    pass


class UnsupportedExpressionError(PlanelieError):
    pass


class NotClosedError(PlanelieError):
    """A bracket of two basis elements is not a constant combination of the basis."""

    def __init__(self, detail: str, pair: tuple[int, int], residual: Optional[str] = None):
        super().__init__(detail)
        self.pair = pair
        self.residual = residual


class NonConstantCoefficientsError(NotClosedError):
    """The bracket lies in the span of the basis only with function coefficients."""
