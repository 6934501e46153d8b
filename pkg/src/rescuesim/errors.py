"""Exception hierarchy shared by the simulation modules."""

from __future__ import annotations


class RescueSimError(Exception):
    """Base class for all errors raised by rescuesim."""


class ConfigurationError(RescueSimError, ValueError):
    """Invalid parameters or scenario contents."""


class DomainError(RescueSimError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnreachableError(RescueSimError):
    """No path exists between the requested locations."""


class PlacementError(RescueSimError, ValueError):
    """A point that must lie on the water is outside it."""


class TrajectoryFormatError(RescueSimError, ValueError):
    """A trajectory file is malformed or violates its constraints."""


class ScenarioValidationError(ConfigurationError):
    """Scenario failed validation; ``errors`` lists every problem found."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("\n".join(self.errors))
