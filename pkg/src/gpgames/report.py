"""Report records shared by the CLI and the verification sweeps."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields


@dataclass
class Report:
    """One solved or verified instance.

    ``winner`` names players by turn order: "A" moves first, "B" second.
    Property checks that involve no game carry ``game="property"`` and no winner.
    """

    instance: str
    game: str
    winner: str | None
    nodes: int = 0
    elapsed_ms: int = 0
    pv: list[int] = field(default_factory=list)
    theorem_tag: str | None = None
    agreement: bool | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["theorem_tag"] is None:
            del d["theorem_tag"]
        if d["agreement"] is None:
            del d["agreement"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown report fields: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))
