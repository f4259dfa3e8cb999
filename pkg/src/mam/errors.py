"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` that the CLI maps to an
exit status and echoes in JSON reports.
"""


class MamError(Exception):
    code = "error"

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details


class ParseError(MamError):
    code = "parse_error"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, line=line)
        self.line = line


class ValidationError(MamError):
    code = "invalid"


class NotWeaklyHyperbolic(ValidationError):
    code = "not_weakly_hyperbolic"


class PartitionError(ValidationError):
    """Raised by the cyclic partition; ``code`` is one of
    ``not_k2``, ``empty_or_degenerate``, ``even_classes``."""

    def __init__(self, code, message=""):
        super().__init__(message or code)
        self.code = code


class RepeatRequired(ValidationError):
    code = "repeat_required"


class Unsupported(MamError):
    code = "unsupported"


class TooLarge(MamError):
    code = "too_large"


class NoConvergence(MamError):
    code = "no_convergence"


class IllConditioned(MamError):
    code = "ill_conditioned"


class Trapped(MamError):
    code = "trapped"

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
