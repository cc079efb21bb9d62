"""The ``Cover`` record shared by the constructions, the solver and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Path


@dataclass
class Cover:
    paths: list[Path]
    mode: str = "vertex"
    r: int | None = None
    targets: list | None = None  # None means every vertex / every edge
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.paths)

    @property
    def size(self) -> int:
        return len(self.paths)
