"""Exception hierarchy shared by the library and the CLI."""


class DGLociError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 2


class InputError(DGLociError):
    """Malformed input text, with an optional line/column position."""

    exit_code = 1

    def __init__(self, message, line=None, column=None, section=None):
        self.line = line
        self.column = column
        self.section = section
        where = []
        if section:
            where.append(f"[{section}]")
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = " ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.message = message


class RingMismatchError(DGLociError):
    """Operands live in different polynomial rings."""


class UnsupportedError(DGLociError):
    """The input is valid but outside what the library can compute."""

    exit_code = 2


class ResourceError(DGLociError):
    """A configured size bound was exceeded (coefficient growth, window)."""

    exit_code = 3


class TheoremViolation(DGLociError):
    """A computed quantity contradicts a proven statement; always a bug."""

    exit_code = 4
