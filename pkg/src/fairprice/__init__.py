"""Fairness-based pricing: monopoly markups, cost passthrough, and a New
Keynesian model where customers judge prices against a fair markup."""

__version__ = "0.1.0"

from .fairness import BeliefSpec, FairnessSpec
from .monopoly import MonopolyOutcome, MonopolyScenario, Regime, solve_markup
from .steady import NKParams, SteadyState, steady_state
from .nklinear import IRFSeries, ShockKind, monetary_irf, technology_irf
from .textbook import TextbookParams, textbook_irf
from .firmpath import FirmPathProblem, PassthroughPath, calibrate, simulate_passthrough

__all__ = [
    "BeliefSpec", "FairnessSpec",
    "MonopolyOutcome", "MonopolyScenario", "Regime", "solve_markup",
    "NKParams", "SteadyState", "steady_state",
    "IRFSeries", "ShockKind", "monetary_irf", "technology_irf",
    "TextbookParams", "textbook_irf",
    "FirmPathProblem", "PassthroughPath", "calibrate", "simulate_passthrough",
    "__version__",
]
