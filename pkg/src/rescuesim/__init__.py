"""Monte-Carlo response-time simulation for boat-based and UAV-assisted water rescue."""

from .errors import (
    ConfigurationError,
    DomainError,
    PlacementError,
    RescueSimError,
    ScenarioValidationError,
    TrajectoryFormatError,
    UnreachableError,
)
from .mcs import ResultSet, RunOutcome, run_mcs, summarize
from .scenario import Scenario, load_scenario
from .sro import simulate_sro
from .uas import UasConfig, simulate_uas

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "DomainError",
    "PlacementError",
    "RescueSimError",
    "ResultSet",
    "RunOutcome",
    "Scenario",
    "ScenarioValidationError",
    "TrajectoryFormatError",
    "UasConfig",
    "UnreachableError",
    "load_scenario",
    "run_mcs",
    "simulate_sro",
    "simulate_uas",
    "summarize",
]
