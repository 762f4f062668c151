"""Exception hierarchy.  Everything a caller can provoke with bad mathematical
input derives from :class:`DomainError`; the command line maps it to exit
status 1."""
from __future__ import annotations


class DomainError(ValueError):
    pass


class CatalogError(DomainError):
    pass


class DecompositionError(DomainError):
    pass


class DimensionCapError(DecompositionError):
    pass


class OperatorDataError(DomainError):
    pass


class ExceptionalOperatorError(OperatorDataError):
    """The direction is the zero weight of g1: the operator is not of the
    form D(lambda, theta, k) and is not synthesised."""


class CoefficientError(DomainError):
    pass


class NonExtremalDirectionError(OperatorDataError):
    """The direction is a nonzero g1 weight outside the Weyl orbit of the
    highest weight."""
