"""
File-based storage for plans.

A plan file is JSON:
    {"horizon": 3,
     "timelines": {"x": [{"value": "v0", "duration": 2}, {"value": "v1", "duration": 1}]}}

Files are written with sorted keys and a trailing newline, so saving the
same plan twice gives byte-identical files.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .errors import PlanFileError
from .models import Plan, Timeline, Token

logger = logging.getLogger(__name__)


class TokenEntry(BaseModel):
    """One token of a stored timeline."""
    value: str = Field(..., min_length=1)
    duration: int = Field(..., ge=1)

    model_config = ConfigDict(extra="forbid")


class PlanFile(BaseModel):
    """Stored plan: one token list per variable, all summing to horizon."""
    horizon: int = Field(..., ge=0)
    timelines: Dict[str, List[TokenEntry]]

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _same_horizon(self) -> "PlanFile":
        for var, tokens in self.timelines.items():
            total = sum(t.duration for t in tokens)
            if total != self.horizon:
                raise ValueError(f"timeline {var} spans {total}, horizon is {self.horizon}")
        return self

    @classmethod
    def from_plan(cls, plan: Plan) -> "PlanFile":
        return cls.model_validate(plan.to_dict())

    def to_plan(self) -> Plan:
        timelines = tuple(
            Timeline(var, tuple(Token(var, t.value, t.duration) for t in self.timelines[var]))
            for var in sorted(self.timelines)
        )
        return Plan(timelines, self.horizon)


def plan_from_dict(data: Any) -> Plan:
    """
    Raises:
        PlanFileError: If the data does not match the plan-file schema
    """
    try:
        return PlanFile.model_validate(data).to_plan()
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ()))
        raise PlanFileError(f"{where or 'plan'}: {first.get('msg')}") from e


def dump_plan(plan: Plan) -> str:
    return json.dumps(PlanFile.from_plan(plan).model_dump(), indent=2, sort_keys=True) + "\n"


def load_plan(source: Union[str, Path]) -> Plan:
    """
    Load a plan file.

    Args:
        source: Path of a JSON plan file

    Returns:
        Plan with timelines sorted by variable name

    Raises:
        PlanFileError: If the file is not JSON or not a well-formed plan
    """
    try:
        data = json.loads(Path(source).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise PlanFileError(f"{source}: not JSON ({e.msg} at line {e.lineno})") from e
    plan = plan_from_dict(data)
    logger.debug("loaded plan %s: %d timelines, horizon %d", source, len(plan.timelines), plan.horizon)
    return plan


def save_plan(plan: Plan, destination: Union[str, Path]) -> Path:
    """Write a plan file, creating parent directories; returns the path written."""
    path = Path(destination)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_plan(plan), encoding="utf-8")
    logger.info("saved plan to %s", path)
    return path
