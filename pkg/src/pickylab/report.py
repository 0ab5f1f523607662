"""Check results shared by the verification modules and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .perm import Perm, fmt_perm

PASSING = ("holds", "vacuous-pass", "pass", "finding")


@dataclass
class Check:
    name: str
    target: str
    verdict: str
    witness: Any = None
    certificate: Any = None
    notes: list[str] = field(default_factory=list)
    details: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict in PASSING

    def to_json(self) -> dict:
        out = {"name": self.name, "target": self.target, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.certificate is not None:
            out["certificate"] = jsonable(self.certificate)
        out["notes"] = list(self.notes)
        if self.details:
            out["details"] = jsonable(self.details)
        return out


def jsonable(obj):
    """Convert nested results to plain JSON types (deterministically)."""
    from .cyclotomic import CycNum, PPart

    if isinstance(obj, (str, bool)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (CycNum, PPart)):
        return str(obj)
    if isinstance(obj, Perm):
        return fmt_perm(obj)
    if isinstance(obj, Check):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        if isinstance(obj, (set, frozenset)):
            items.sort(key=repr)
        return items
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    return str(obj)


def combine(name: str, target: str, parts: list[Check], notes: list[str] | None = None) -> Check:
    """One check summarizing several: fails if any part fails."""
    if not parts:
        verdict = "vacuous-pass"
    elif all(p.ok for p in parts):
        verdict = "holds"
    else:
        verdict = "fails"
    return Check(name, target, verdict, notes=notes or [], details=[p.to_json() for p in parts])
