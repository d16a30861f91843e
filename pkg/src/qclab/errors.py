"""Exception hierarchy shared by all qclab modules.

The CLI maps these onto exit codes: usage problems are caught by the
argument parser itself, ``DomainError`` subclasses exit with 3, and
``CapacityError`` with 4.
"""


class QclabError(Exception):
    """Base class for all errors raised by this package."""


class CapacityError(QclabError):
    """A requested register or workload exceeds the desk-scale cap."""


class DomainError(QclabError):
    """Inputs are outside the mathematical domain of an operation."""


class ContractViolationError(QclabError):
    """A user-supplied callable broke its declared contract."""


class InternalInvariantError(QclabError):
    """An internal consistency check failed; indicates a bug."""


class CodecError(DomainError):
    """Text or code sequence outside the 30-symbol alphabet."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class KeyExhaustedError(DomainError):
    """Pad key shorter than the message; a pad is never reused."""


class KeygenError(DomainError):
    """RSA key generation received unusable parameters."""


class PrimalityError(KeygenError):
    """A number required to be prime is composite."""


class BlockingError(DomainError):
    """A message block does not fit under the RSA modulus."""


class NotCoprimeError(DomainError):
    """gcd(a, n) != 1 where coprimality is required.

    Carries the offending gcd so callers can use it as a factor.
    """

    def __init__(self, a, n, common):
        super().__init__(f"gcd({a}, {n}) = {common} != 1")
        self.a = a
        self.n = n
        self.common = common


class WorkCapError(DomainError):
    """A classical search was refused because it exceeds the work cap."""


class InsufficientDataError(DomainError):
    """A statistical estimate was requested from an empty cell."""


class UnsupportedStrategyError(DomainError):
    """No closed form exists for this pair-source strategy."""


class NoInformationError(DomainError):
    """A measurement outcome carries no usable period information."""


class AttackFailureError(DomainError):
    """A cryptanalytic attack exhausted its retry budget."""
