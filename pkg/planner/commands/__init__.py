"""
CLI commands for the planner.

One module per subcommand:
- check (validation and eagerness)
- solve (shortest solution plan)
- verify (plan against problem)
- allen-table, lowerbound, bpmn (experiments and compilation)
"""

from .base import BaseCommand, CommandResult, EXIT_BUDGET, EXIT_FAILURE, EXIT_INPUT, EXIT_OK
from .registry import CommandRegistry, build_registry, get_registry

__all__ = [
    "BaseCommand",
    "CommandResult",
    "CommandRegistry",
    "build_registry",
    "get_registry",
    "EXIT_OK",
    "EXIT_FAILURE",
    "EXIT_INPUT",
    "EXIT_BUDGET",
]
