"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RankMetricError(Exception):
    """Base class for all errors raised by :mod:`rankmetric`."""


class NotPrime(RankMetricError, ValueError):
    pass


class FieldTooLarge(RankMetricError, ValueError):
    pass


class NoPolynomialInTable(RankMetricError, LookupError):
    pass


class InverseOfZero(RankMetricError, ZeroDivisionError):
    pass


class NotABasis(RankMetricError, ValueError):
    pass


class CoordinateNotInSubfield(RankMetricError, ArithmeticError):
    """Expansion produced a coordinate outside the base field (a bug)."""


class MixedTowers(RankMetricError, ValueError):
    pass


class DimensionOutOfRange(RankMetricError, ValueError):
    pass


class EnumerationTooLarge(RankMetricError):
    """An exhaustive search would exceed the configured enumeration cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: {size} items exceeds enumeration cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class GaussianOverflow(RankMetricError, OverflowError):
    pass


class RankDeficientGenerator(RankMetricError, ValueError):
    pass


class DegenerateCode(RankMetricError, ValueError):
    pass


class DualDimensionZero(RankMetricError, ValueError):
    pass


class HierarchyInvariantViolation(RankMetricError, AssertionError):
    pass


class RankDeficientB(RankMetricError, ValueError):
    pass


class InconsistentSyndrome(RankMetricError, AssertionError):
    pass


class BadParameters(RankMetricError, ValueError):
    pass


class ClassificationContradiction(RankMetricError, AssertionError):
    pass


class NotMRD(RankMetricError, AssertionError):
    """A construction that should meet the Singleton bound does not (a bug)."""


class LeakageMismatch(RankMetricError, AssertionError):
    """Two routes to the same leakage dimension disagreed (a bug)."""
