"""
Command registry for the planner CLI.

The registry:
- Stores all available commands
- Provides command lookup by name
- Builds the argparse sub-parsers
- Executes commands safely
"""

import argparse
import logging
from typing import Dict, List, Optional

from .base import EXIT_INPUT, BaseCommand, CommandResult, FAIL

logger = logging.getLogger(__name__)


class CommandRegistry:
    """Central registry for all CLI commands."""

    def __init__(self):
        self._commands: Dict[str, BaseCommand] = {}

    def register(self, command: BaseCommand) -> None:
        """
        Register a command.

        Raises:
            ValueError: If a command with the same name is already registered
        """
        name = command.get_name()
        if name in self._commands:
            raise ValueError(f"Command '{name}' is already registered")
        self._commands[name] = command
        logger.debug("registered command: %s", name)

    def get_command(self, name: str) -> Optional[BaseCommand]:
        return self._commands.get(name)

    def list_commands(self) -> List[str]:
        return list(self._commands.keys())

    def has_command(self, name: str) -> bool:
        return name in self._commands

    def add_subparsers(self, parser: argparse.ArgumentParser) -> None:
        """Attach one sub-parser per registered command, in registration order."""
        sub = parser.add_subparsers(dest="command", metavar="COMMAND")
        sub.required = True
        for command in self._commands.values():
            child = sub.add_parser(command.get_name(), help=command.get_description(),
                                   description=command.get_description())
            command.configure(child)

    def execute(self, name: str, args: argparse.Namespace) -> CommandResult:
        """
        Execute a command by name.

        Returns:
            CommandResult; an unknown name yields exit code 2
        """
        command = self.get_command(name)
        if command is None:
            message = f"Command '{name}' not found. Available commands: {', '.join(self.list_commands())}"
            return CommandResult(EXIT_INPUT, {"error": message}).add(FAIL, message)
        logger.debug("running %s", name)
        return command.safe_run(args)


def build_registry() -> CommandRegistry:
    """Registry holding every planner command."""
    from .allen_table import AllenTableCommand
    from .bpmn import BpmnCommand
    from .check import CheckCommand
    from .lowerbound import LowerboundCommand
    from .solve import SolveCommand
    from .verify import VerifyCommand

    registry = CommandRegistry()
    for command in (CheckCommand(), SolveCommand(), VerifyCommand(), AllenTableCommand(),
                    LowerboundCommand(), BpmnCommand()):
        registry.register(command)
    return registry


_global_registry: Optional[CommandRegistry] = None


def get_registry() -> CommandRegistry:
    """Get the global command registry instance."""
    global _global_registry
    if _global_registry is None:
        _global_registry = build_registry()
    return _global_registry
