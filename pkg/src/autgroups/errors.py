"""Exception hierarchy.

Every domain error carries a machine-readable ``kind`` so the CLI can report
it and exit with the domain-error code without string matching.
"""


class AutgroupsError(Exception):
    kind = "error"


class NotInvertibleError(AutgroupsError):
    kind = "not-invertible"


class NotReversibleError(AutgroupsError):
    kind = "not-reversible"


class AlphabetMismatchError(AutgroupsError):
    kind = "alphabet-mismatch"


class UnknownSymbolError(AutgroupsError):
    kind = "unknown-symbol"


class ResourceCapError(AutgroupsError):
    """A state-count or element-count cap was exceeded."""

    kind = "cap-exceeded"

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class FormatError(AutgroupsError):
    """Malformed machine/acceptor file or word syntax."""

    kind = "format"


class StructureError(AutgroupsError):
    """An automatic structure violated its contract (e.g. no successor)."""

    kind = "structure"
