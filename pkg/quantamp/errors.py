from typing import Optional


class AmpSynthError(Exception):
    """Base class for every error raised by the synthesis toolkit"""


class DomainError(AmpSynthError, ValueError):
    """Argument outside the domain where the model is defined"""


class DimensionError(AmpSynthError, ValueError):
    """Matrix shapes that cannot be combined"""


class ContractError(AmpSynthError, ValueError):
    """Input violates a structural precondition (Hermitian, unitary, realizable)"""


class NotSymplecticError(ContractError):
    """Matrix does not preserve the J metric"""


class SingularityError(AmpSynthError, ArithmeticError):
    """Linear solve against a (numerically) singular matrix"""

    def __init__(self, message: str, eigenvalue: Optional[complex] = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class NoUniqueSolutionError(AmpSynthError, ArithmeticError):
    """Sylvester operator is singular"""


class DecompositionError(AmpSynthError):
    """Factorisation could not be made consistent"""


class SynthesisError(AmpSynthError):
    """A stage of the synthesis pipeline failed"""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"synthesis failed at stage '{stage}': {cause}")
        self.stage = stage
        self.cause = cause


class ArtifactParseError(AmpSynthError):
    """JSON artifact is missing a field or has a malformed one"""

    def __init__(self, field: str, message: str):
        super().__init__(f"field '{field}': {message}")
        self.field = field
