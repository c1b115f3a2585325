"""Error taxonomy shared across the package.

Validation-style errors subclass ValueError so plain try/except ValueError
still works; capacity and budget errors are RuntimeErrors because they mean
"the request is well-formed but too big", not "the request is wrong".
"""


class ValidationError(ValueError):
    """Malformed or out-of-domain input (bad arguments, bad files, bad ids)."""


class ParseError(ValidationError):
    """Unparseable input document; message carries the offending line number."""


class NoPathError(ValidationError):
    """Queried endpoints are not connected."""


class BackendError(ValidationError):
    """Requested simulation backend is invalid for the given graph."""


class CapacityError(RuntimeError):
    """Requested object would exceed hard size limits (node counts etc.)."""


class BudgetError(RuntimeError):
    """Exact computation exceeded its configured work budget."""
