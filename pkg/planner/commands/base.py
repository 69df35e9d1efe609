"""
Base command interface for the planner CLI.

All commands inherit from BaseCommand and implement:
- configure(): Register arguments on the command's sub-parser
- run(): Execute against parsed arguments
- get_description(): One-line help text
"""

import argparse
import logging
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..dsl import load_problem
from ..errors import (
    CommandError,
    InvalidPlanError,
    MalformedTreeError,
    NonEagerProblemError,
    PlanFileError,
    PlannerError,
    ProblemSyntaxError,
    ProblemValidationError,
)
from ..models import PlanningProblem
from ..oracle import validate_problem

logger = logging.getLogger(__name__)

# Exit-code contract
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

OK = "✓"
FAIL = "✗"
WARN = "⚠"

INPUT_ERRORS = (
    ProblemSyntaxError,
    ProblemValidationError,
    PlanFileError,
    InvalidPlanError,
    MalformedTreeError,
    OSError,
)


@dataclass
class CommandResult:
    """Result from command execution."""

    exit_code: int
    data: Any = None
    text: Optional[str] = None
    report: List[str] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.exit_code == EXIT_OK

    def add(self, glyph: str, message: str) -> "CommandResult":
        self.report.append(f"{glyph} {message}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {"exit_code": self.exit_code, "data": self.data, "report": list(self.report)}


def _command_name(class_name: str) -> str:
    base = class_name[: -len("Command")] if class_name.endswith("Command") else class_name
    return re.sub(r"(?<!^)(?=[A-Z])", "-", base).lower()


class BaseCommand(ABC):
    """Abstract base class for all CLI commands."""

    def __init__(self):
        self.name = _command_name(self.__class__.__name__)

    @abstractmethod
    def configure(self, parser: argparse.ArgumentParser) -> None:
        """
        Register the command's arguments.

        Args:
            parser: Sub-parser created for this command
        """
        pass

    @abstractmethod
    def run(self, args: argparse.Namespace) -> CommandResult:
        """
        Execute the command.

        Args:
            args: Parsed arguments (global and command-specific)

        Returns:
            CommandResult with exit code, JSON payload and report lines

        Raises:
            CommandError: For failures that carry their own exit code
        """
        pass

    @abstractmethod
    def get_description(self) -> str:
        pass

    def get_name(self) -> str:
        return self.name

    def safe_run(self, args: argparse.Namespace) -> CommandResult:
        """
        Execute with errors mapped onto exit codes.

        Returns:
            CommandResult (never raises for planner or I/O errors)
        """
        try:
            return self.run(args)
        except CommandError as e:
            return CommandResult(e.exit_code, {"error": str(e)}).add(FAIL, str(e))
        except NonEagerProblemError as e:
            result = CommandResult(
                EXIT_FAILURE, {"status": "refused", "rules": [r.to_dict() for r in e.reports]}
            )
            for r in e.reports:
                if not r.eager:
                    result.add(FAIL, r.describe())
            return result
        except INPUT_ERRORS as e:
            violations = getattr(e, "violations", None) or []
            data = {"error": str(e), "error_type": type(e).__name__}
            if violations:
                data["violations"] = [v.to_dict() for v in violations]
            result = CommandResult(EXIT_INPUT, data)
            for v in violations or [e]:
                result.add(FAIL, str(v))
            return result
        except PlannerError as e:
            logger.error("%s failed: %s", self.name, e)
            return CommandResult(EXIT_FAILURE, {"error": str(e), "error_type": type(e).__name__}).add(FAIL, str(e))


def read_problem(path: str) -> PlanningProblem:
    """
    Parse and validate a problem file.

    Raises:
        ProblemSyntaxError: On a parse error
        ProblemValidationError: If the problem is not well formed
    """
    problem = load_problem(path)
    violations = validate_problem(problem)
    if violations:
        raise ProblemValidationError(violations)
    return problem
