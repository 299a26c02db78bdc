from typing import Optional


class CharMonoidError(Exception):
    """Root of every error raised by the library. `exit_code` is what the CLI returns."""
    exit_code = 3


class InputError(CharMonoidError):
    exit_code = 1


class SpecSyntaxError(InputError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownConstructorError(InputError):
    pass


class InvalidCycleError(InputError):
    pass


class NotPrimePowerError(InputError):
    pass


class NotSubgroupError(InputError):
    pass


class NotNormalError(InputError):
    pass


class DimensionMismatchError(InputError):
    def __init__(self, expected: int, got: int, what: str = "vector"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} has dimension {got}, expected {expected}")


class InadmissibleOrderError(InputError):
    def __init__(self, message: str, violated: Optional[list] = None):
        self.violated = violated or []
        super().__init__(message)


class PreconditionError(InputError):
    pass


class DataFileError(InputError):
    pass


class SchemaVersionError(DataFileError):
    pass


class DigestMismatchError(DataFileError):
    pass


class ResourceCapError(CharMonoidError):
    exit_code = 2


class SizeCapExceeded(ResourceCapError):
    def __init__(self, order: int, cap: int, what: str = "group"):
        self.order = order
        self.cap = cap
        super().__init__(f"{what} of order {order} exceeds the size cap {cap}")


class InvariantViolation(CharMonoidError):
    exit_code = 3


class LiftAmbiguityError(InvariantViolation):
    pass


class PrimeSearchError(InvariantViolation):
    pass


class EigenspaceSplitError(InvariantViolation):
    pass


class RankDeficiencyError(InvariantViolation):
    pass


class OrderMismatchError(InvariantViolation):
    pass
