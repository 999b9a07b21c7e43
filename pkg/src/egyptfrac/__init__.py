"""Egyptian fraction identities for 4/n: exact oracles, a family registry, coverage and tables."""
from __future__ import annotations

from .egyptian import DecompRecord, UnitFractionSum, UnitTerm, solve_three, solve_two, verify_sum
from .families import REGISTRY_VERSION, DomainError, evaluate

__version__ = "0.1.0"

__all__ = [
    "DecompRecord", "UnitFractionSum", "UnitTerm", "solve_two", "solve_three", "verify_sum",
    "REGISTRY_VERSION", "DomainError", "evaluate", "__version__",
]
