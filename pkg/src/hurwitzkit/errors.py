"""Exception types shared across the toolkit."""


class HurwitzKitError(Exception):
    """Base class for all toolkit errors."""


class ParseError(HurwitzKitError):
    """Syntax error in word or presentation text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UnknownGeneratorError(HurwitzKitError):
    """A word mentions a generator that is not part of the alphabet in force."""

    def __init__(self, name, context=""):
        self.name = name
        suffix = f" in {context}" if context else ""
        super().__init__(f"unknown generator {name!r}{suffix}")


class ValidationError(HurwitzKitError):
    """A presentation fails a shape check; `details` lists every offender."""

    def __init__(self, message, details=()):
        self.details = tuple(details)
        if self.details:
            message = message + "\n" + "\n".join(f"  - {d}" for d in self.details)
        super().__init__(message)


class CShapeError(ValidationError):
    """Some relator is not of the conjugation shape x_i = w^-1 x_j w."""


class CentralityError(ValidationError):
    """A required centrality relator is missing."""


class TietzeCertificateError(HurwitzKitError):
    """A Tietze step's certificate failed to verify."""

    def __init__(self, step_index, step, message):
        self.step_index = step_index
        self.step = step
        super().__init__(f"step {step_index} ({type(step).__name__}): {message}")


class DegreeError(HurwitzKitError):
    """A word handed to the subgroup rewriter has nonzero degree."""

    def __init__(self, degree, modulus=None):
        self.degree = degree
        self.modulus = modulus
        where = f" (mod {modulus})" if modulus else ""
        super().__init__(f"word has degree {degree}{where}, expected 0")


class InternalInvariantError(HurwitzKitError):
    """A machine-checked invariant failed; indicates a bug, never bad input."""
