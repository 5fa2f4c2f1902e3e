"""Exception hierarchy shared across the engine.

Two broad families matter to callers: input problems (bad values, bad
files, bad schemas) and computation problems (a fit or a sampler that
could not finish). The CLI maps the former to exit code 2 and the
latter to exit code 1; the HTTP layer maps them to 400 and 422.
"""


class StrategizerError(Exception):
    """Base class for every error raised by this package."""

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = {k: v for k, v in details.items() if v is not None}


class InputError(StrategizerError):
    """A caller-supplied value, file, or request is invalid."""


class DomainError(InputError):
    """A numeric argument lies outside its legal domain."""


class ConstraintViolation(InputError):
    """A probability or weight violates a model constraint."""


class ValidationError(InputError):
    """A record or plan fails its range or shape invariants."""


class EmptyDataset(InputError):
    """No records matched, or a required measurement is missing."""


class ParseError(InputError):
    """A data file could not be parsed; names row and column."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        super().__init__(message, row=row, column=column)
        self.row = row
        self.column = column


class SchemaError(InputError):
    """A structured config or plan file violates its schema."""

    def __init__(self, message: str, path: str | None = None):
        super().__init__(message, path=path)
        self.path = path


class DegenerateScenario(InputError):
    """Scenario targets add zero total quality, so probabilities are undefined."""


class ShapeMismatch(InputError):
    """Per-plan inputs disagree on scenario counts or plan sets."""


class ComputationError(StrategizerError):
    """A numeric procedure failed despite valid inputs."""


class FitError(ComputationError):
    """A utility-curve fit failed for survey-derived inputs.

    Carries the attribute or measure it was fitting in ``details``.
    """


class ConvergenceFailure(ComputationError):
    """No convergence constant satisfied the anchor tolerance in range."""


class SamplingExhausted(ComputationError):
    """Truncated sampling hit its resample limit without an accepted draw."""
