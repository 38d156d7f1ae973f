"""
Exception hierarchy for the toolkit.

Everything a caller can cause (bad shapes, infeasible targets, malformed files)
derives from HypergraphError. TheoremViolationError is kept apart: it means a
proven inequality failed on a concrete instance, which is a library bug.
"""

from typing import Optional


class HypergraphError(Exception):
    """Base class for domain errors (CLI exit status 1, HTTP 422)."""


class NotFoundError(HypergraphError):
    """An edge or vertex that was asked for does not exist."""


class ShapeError(HypergraphError):
    """The graph has the wrong number of classes or uniformity for the operation."""


class InvalidSelectorError(HypergraphError):
    """A class subset selector names bad indices or leaves too few classes."""


class OutOfRangeError(HypergraphError):
    """A numeric argument lies outside its admissible range."""


class ScaleError(HypergraphError):
    """A blow-up scale does not clear the weight denominators."""

    def __init__(self, message: str, minimal_scale: Optional[object] = None):
        super().__init__(message)
        self.minimal_scale = minimal_scale


class InfeasibleTargetError(HypergraphError):
    """No construction in the supported family reaches the requested densities."""


class ExactnessError(HypergraphError):
    """An exact construction was requested but the weights would be irrational."""

    def __init__(self, message: str, quadratic: str = ""):
        super().__init__(message)
        self.quadratic = quadratic


class OutOfRegimeError(HypergraphError):
    """Densities with sum below r, where the extremal construction is undefined."""


class BudgetExceededError(HypergraphError):
    """An exhaustive scan would enumerate more instances than allowed."""

    def __init__(self, message: str, required_budget: int = 0):
        super().__init__(message)
        self.required_budget = required_budget


class LiftValidationError(HypergraphError):
    """The input of a lift is not a simple r-graph."""


class InstanceParseError(HypergraphError):
    """Base class for instance file problems; carries a location string."""

    def __init__(self, message: str, context: str = ""):
        super().__init__(f"{message} (at {context})" if context else message)
        self.context = context


class MalformedJsonError(InstanceParseError):
    pass


class SchemaError(InstanceParseError):
    pass


class BadRationalError(InstanceParseError):
    pass


class InvalidWeightError(InstanceParseError):
    pass


class NonPartiteEdgeError(InstanceParseError):
    pass


class DuplicateEdgeError(InstanceParseError):
    pass


class TheoremViolationError(RuntimeError):
    """A proven claim failed on a concrete instance (CLI exit status 2)."""
