"""Verification report containers and canonical JSON rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckEntry:
    name: str
    ok: bool
    details: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    title: str
    entries: list = field(default_factory=list)

    def add(self, name: str, ok: bool, **details) -> None:
        self.entries.append(CheckEntry(name, ok, details))

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if not e.ok]

    def to_json_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checked": len(self.entries),
            "failed": len(self.failures()),
            "checks": [
                {"name": e.name, "ok": e.ok, **e.details} for e in self.entries
            ],
        }


@dataclass
class DiscrepancyReport:
    """Term-by-term diff of a computed object against a transcription."""

    title: str
    flagged_tokens: list = field(default_factory=list)
    diffs: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.diffs

    def to_json_dict(self) -> dict:
        return {
            "title": self.title,
            "clean": self.clean,
            "flagged_tokens": list(self.flagged_tokens),
            "diffs": list(self.diffs),
        }


def canonical_json(obj: Any) -> str:
    """Stable byte-for-byte JSON: sorted keys, fixed separators, newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
