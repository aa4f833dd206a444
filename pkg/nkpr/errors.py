"""Exception hierarchy shared by every layer.

Domain code raises these; only the CLI turns them into exit codes.
"""
from __future__ import annotations


class NkprError(Exception):
    """Base class for all nkpr errors."""

    exit_code = 1


class DomainError(NkprError):
    """A computation was asked something its inputs cannot answer."""

    exit_code = 1


class DimensionMismatchError(DomainError):
    pass


class NotHermitianError(DomainError):
    pass


class ValidationError(DomainError):
    """A value violates the invariants of its type (density operator, channel, ...)."""


class WeightNormalizationError(DomainError):
    pass


class FunctionDomainError(DomainError):
    """A matrix function is undefined at one of the eigenvalues."""


class MixedLatticeError(DomainError):
    pass


class NonOrthogonalFamilyError(DomainError):
    pass


class EmptyModelError(DomainError):
    pass


class ZeroLikelihoodError(DomainError):
    pass


class UnknownSymbolError(DomainError):
    pass


class RankDeficientBasisError(DomainError):
    pass


class ZeroTraceError(DomainError):
    pass


class ChannelSpecError(DomainError):
    pass


class PeriodicityError(DomainError):
    pass


class UsageError(NkprError):
    """Command line could not be understood."""

    exit_code = 2


class InputFileError(NkprError):
    """An input file is missing or unreadable."""

    exit_code = 3


class MalformedDocumentError(InputFileError):
    """An input file is not valid JSON or has the wrong shape."""
