"""Exception hierarchy shared by every esplab module."""


class EsplabError(Exception):
    """Base class for all errors raised by esplab."""


class DimensionError(EsplabError, ValueError):
    """Shapes of matrices, vectors or ensembles do not agree."""


class DomainError(EsplabError, ValueError):
    """An argument holds values outside the admissible domain (NaN, Inf, empty)."""


class ParameterError(EsplabError, ValueError):
    """A system parameter lies outside the declared parameter space."""


class LengthError(EsplabError, ValueError):
    """An input segment is too short for the requested operation."""


class NormalizationError(EsplabError, ValueError):
    """A matrix with zero spectral radius cannot be rescaled to unit radius."""


class NumericError(EsplabError, ArithmeticError):
    """A simulation produced non-finite values."""


class ConfigError(EsplabError):
    """An experiment configuration failed validation.

    ``errors`` holds one message per offending key.
    """

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
