"""Exception types shared across the engine."""


class DualAffineError(Exception):
    """Base class for engine errors."""


class DomainError(DualAffineError, ValueError):
    """An argument lies outside the domain of an operation.

    Raised for mismatched codomains, non-carrier generators, alphabet
    mismatches and invalid morphisms.
    """


class CapabilityError(DualAffineError):
    """The bound base instance lacks a construction the operation needs.

    The rose instance, for example, has no coequalizers.
    """
