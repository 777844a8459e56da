"""Steklov spectra, Cheeger constants, and recurrence diagnostics on
weighted graphs."""

from ._core import (
    BudgetError,
    ConvergenceError,
    Graph,
    InputError,
    Window,
    exhaust,
    run_cli,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "ConvergenceError",
    "Graph",
    "InputError",
    "Window",
    "exhaust",
    "run_cli",
    "verify",
]
