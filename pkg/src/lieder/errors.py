"""Exception hierarchy.

The CLI maps :class:`InputError` subclasses to exit code 2 and
:class:`CapExceeded` to exit code 3.
"""


class LiederError(Exception):
    pass


class InputError(LiederError):
    """Bad user input: malformed files, violated preconditions, unknown names."""


class ParseError(InputError):
    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class ValidationFailed(InputError):
    def __init__(self, message: str, failing_triples=()):
        self.failing_triples = tuple(failing_triples)
        super().__init__(message)


class UnknownName(InputError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class PreconditionViolated(InputError):
    pass


class NotNilpotent(PreconditionViolated):
    pass


class DivisibilityViolated(PreconditionViolated):
    pass


class InvalidM(PreconditionViolated):
    pass


class SummandsNotMarked(PreconditionViolated):
    pass


class NotADerivation(PreconditionViolated):
    pass


class GenericDimUnstable(InputError):
    pass


class CapExceeded(LiederError):
    def __init__(self, tuples: int, cap: int):
        self.tuples = tuples
        self.cap = cap
        super().__init__(
            f"{tuples} basis tuples exceed the cap of {cap}; "
            "raise the cap (LIEDER_TUPLE_CAP) or lower the order")


class WitnessVerificationFailed(LiederError):
    pass


class InternalInconsistency(LiederError):
    """A computed object failed its own re-check. Indicates a bug."""
