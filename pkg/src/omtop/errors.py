"""Exception hierarchy shared by all omtop modules."""


class OmtopError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(OmtopError):
    """Two sign vectors (or a vector and a ground set) have mismatched length."""


class DomainError(OmtopError):
    """An element label or index is not part of the ground set."""


class MembershipError(OmtopError):
    """A sign vector was expected to belong to a covector set but does not."""


class PreconditionError(OmtopError):
    """A documented precondition of an operation is violated."""


class InputFormatError(OmtopError):
    """A text input (arrangement or covector file) is malformed.

    Carries optional file/line context for CLI error messages.
    """

    def __init__(self, message, *, source=None, line=None):
        self.source = source
        self.line = line
        prefix = ""
        if source is not None:
            prefix = f"{source}:"
            if line is not None:
                prefix += f"{line}:"
            prefix += " "
        elif line is not None:
            prefix = f"line {line}: "
        super().__init__(prefix + message)


class ResourceExhausted(OmtopError):
    """A configured cap or search budget was exceeded."""
