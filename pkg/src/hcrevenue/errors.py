"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed edge-list or Newick input.

    ``lineno`` is 1-based when the error can be pinned to a line, else None.
    """

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class CapExceeded(ValueError):
    """Instance is larger than an exhaustive solver is allowed to handle."""
