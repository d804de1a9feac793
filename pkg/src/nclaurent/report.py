"""Aggregated pass/fail results for identity checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional


def _ser(v: Any) -> Any:
    if hasattr(v, "to_json"):
        return {"text": str(v), "json": v.to_json()}
    return str(v)


@dataclass
class Entry:
    check: str
    lo: Optional[int] = None
    hi: Optional[int] = None
    passed: bool = True
    count: int = 0
    skipped: bool = False
    counterexample: Optional[dict] = None
    note: str = ""

    def touch(self, n: Optional[int]) -> None:
        self.count += 1
        if n is None:
            return
        self.lo = n if self.lo is None else min(self.lo, n)
        self.hi = n if self.hi is None else max(self.hi, n)

    @property
    def index_range(self) -> str:
        if self.lo is None:
            return "-"
        return str(self.lo) if self.lo == self.hi else f"{self.lo}..{self.hi}"

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "range": [self.lo, self.hi],
            "passed": self.passed,
            "skipped": self.skipped,
            "count": self.count,
            "counterexample": self.counterexample,
            "note": self.note,
        }


@dataclass
class VerifyReport:
    """Checks keyed by name; ``overall`` is the conjunction of all entries.

    Only the first counterexample of each check is kept.
    """

    entries: dict[str, Entry] = field(default_factory=dict)

    def _entry(self, check: str) -> Entry:
        if check not in self.entries:
            self.entries[check] = Entry(check)
        return self.entries[check]

    def expect(self, check: str, n: Optional[int], ok: bool, **witness: Any) -> bool:
        e = self._entry(check)
        e.touch(n)
        if not ok and e.passed:
            e.passed = False
            e.counterexample = {"n": n, **{k: _ser(v) for k, v in witness.items()}}
        return ok

    def expect_equal(self, check: str, n: Optional[int], lhs: Any, rhs: Any) -> bool:
        ok = lhs == rhs
        if ok:
            return self.expect(check, n, True)
        return self.expect(check, n, False, lhs=lhs, rhs=rhs)

    def declare(self, check: str, note: str = "") -> Entry:
        """Register a check that may end up with no instances (vacuous pass)."""
        e = self._entry(check)
        if note:
            e.note = note
        return e

    def skip(self, check: str, reason: str) -> None:
        e = self._entry(check)
        e.skipped = True
        e.note = reason

    def merge(self, other: "VerifyReport", prefix: str = "") -> "VerifyReport":
        for name, e in other.entries.items():
            key = prefix + name
            if key in self.entries:
                mine = self.entries[key]
                if mine.passed and not e.passed:
                    mine.passed, mine.counterexample = False, e.counterexample
                for n in (e.lo, e.hi):
                    if n is not None:
                        mine.lo = n if mine.lo is None else min(mine.lo, n)
                        mine.hi = n if mine.hi is None else max(mine.hi, n)
                mine.count += e.count
                mine.skipped = mine.skipped or e.skipped
            else:
                self.entries[key] = Entry(**{**e.__dict__, "check": key})
        return self

    @property
    def overall(self) -> bool:
        return all(e.passed for e in self.entries.values())

    def __bool__(self):
        return self.overall

    def failures(self) -> list[Entry]:
        return [e for e in self.entries.values() if not e.passed]

    def first_failure(self, check: str) -> Optional[int]:
        e = self.entries.get(check)
        if e is None or e.passed:
            return None
        return e.counterexample.get("n") if e.counterexample else None

    def to_text(self) -> str:
        width = max((len(k) for k in self.entries), default=5)
        lines = []
        for e in self.entries.values():
            status = "SKIP" if e.skipped else ("PASS" if e.passed else "FAIL")
            line = f"{status}  {e.check:<{width}}  n={e.index_range:<9} x{e.count}"
            if e.note:
                line += f"  ({e.note})"
            lines.append(line)
            if not e.passed and e.counterexample:
                for k, v in e.counterexample.items():
                    text = v["text"] if isinstance(v, dict) else v
                    lines.append(f"      {k}: {text}")
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {"overall": self.overall, "entries": [e.to_dict() for e in self.entries.values()]},
            indent=2,
        )
