"""
SESE block trees.

A tree is nested JSON:
    {"id": "b1", "type": "FLOW", "label": "root",
     "before": {...}, "after": {...}}

Children by kind: FLOW before/after, PARALLEL left/right, LOOP body,
XOR high/low, TASK none.
"""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors import MalformedTreeError


class BlockKind(str, Enum):
    TASK = "TASK"
    FLOW = "FLOW"
    PARALLEL = "PARALLEL"
    LOOP = "LOOP"
    XOR = "XOR"


ROLES: Dict[BlockKind, Tuple[str, ...]] = {
    BlockKind.TASK: (),
    BlockKind.FLOW: ("before", "after"),
    BlockKind.PARALLEL: ("left", "right"),
    BlockKind.LOOP: ("body",),
    BlockKind.XOR: ("high", "low"),
}

ALL_ROLES = ("before", "after", "left", "right", "body", "high", "low")


class SeseBlock(BaseModel):
    """One node of a SESE decomposition tree."""

    id: str = Field(..., min_length=1, description="Unique block id")
    type: BlockKind = Field(..., description="Block kind")
    label: Optional[str] = Field(None, description="Human-facing name")
    before: Optional["SeseBlock"] = None
    after: Optional["SeseBlock"] = None
    left: Optional["SeseBlock"] = None
    right: Optional["SeseBlock"] = None
    body: Optional["SeseBlock"] = None
    high: Optional["SeseBlock"] = None
    low: Optional["SeseBlock"] = None

    model_config = ConfigDict(extra="forbid", frozen=True)

    @model_validator(mode="after")
    def _children_match_kind(self) -> "SeseBlock":
        wanted = ROLES[self.type]
        for role in ALL_ROLES:
            present = getattr(self, role) is not None
            if role in wanted and not present:
                raise ValueError(f"{self.type.value} block {self.id} needs a '{role}' child")
            if role not in wanted and present:
                raise ValueError(f"{self.type.value} block {self.id} cannot have a '{role}' child")
        return self

    # ------------------------------------------------------------------
    # Convenience constructors
    # ------------------------------------------------------------------

    @classmethod
    def task(cls, id: str, label: Optional[str] = None) -> "SeseBlock":
        return cls(id=id, type=BlockKind.TASK, label=label)

    @classmethod
    def flow(cls, id: str, before: "SeseBlock", after: "SeseBlock", label: Optional[str] = None) -> "SeseBlock":
        return cls(id=id, type=BlockKind.FLOW, before=before, after=after, label=label)

    @classmethod
    def parallel(cls, id: str, left: "SeseBlock", right: "SeseBlock", label: Optional[str] = None) -> "SeseBlock":
        return cls(id=id, type=BlockKind.PARALLEL, left=left, right=right, label=label)

    @classmethod
    def loop(cls, id: str, body: "SeseBlock", label: Optional[str] = None) -> "SeseBlock":
        return cls(id=id, type=BlockKind.LOOP, body=body, label=label)

    @classmethod
    def xor(cls, id: str, high: "SeseBlock", low: "SeseBlock", label: Optional[str] = None) -> "SeseBlock":
        return cls(id=id, type=BlockKind.XOR, high=high, low=low, label=label)

    # ------------------------------------------------------------------
    # Traversal
    # ------------------------------------------------------------------

    def child(self, role: str) -> "SeseBlock":
        block = getattr(self, role)
        if block is None:
            raise KeyError(f"block {self.id} has no '{role}' child")
        return block

    def children(self) -> List["SeseBlock"]:
        return [getattr(self, role) for role in ROLES[self.type]]

    def walk(self) -> Iterator["SeseBlock"]:
        """Blocks in preorder."""
        yield self
        for c in self.children():
            yield from c.walk()

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)


SeseBlock.model_rebuild()


def check_tree(root: SeseBlock) -> SeseBlock:
    """
    Raises:
        MalformedTreeError: If two blocks share an id
    """
    seen = set()
    for block in root.walk():
        if block.id in seen:
            raise MalformedTreeError(f"duplicate block id '{block.id}'")
        seen.add(block.id)
    return root


def tree_from_dict(data: Dict[str, Any]) -> SeseBlock:
    """
    Raises:
        MalformedTreeError: If the data is not a well-formed tree
    """
    try:
        root = SeseBlock.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ()))
        raise MalformedTreeError(f"{where or 'tree'}: {first.get('msg')}") from e
    return check_tree(root)


def load_tree(source: Union[str, Path]) -> SeseBlock:
    """
    Read a tree file.

    Raises:
        MalformedTreeError: If the file is not JSON or not a well-formed tree
    """
    try:
        data = json.loads(Path(source).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise MalformedTreeError(f"{source}: not JSON ({e.msg} at line {e.lineno})") from e
    return tree_from_dict(data)


def dump_tree(root: SeseBlock) -> str:
    return json.dumps(root.to_dict(), indent=2) + "\n"
