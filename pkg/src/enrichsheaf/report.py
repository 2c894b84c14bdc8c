"""Structured verification reports with a text and a key=value rendering."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

PASS, FAIL, NOT_CHECKED, INFO = "pass", "fail", "not-checked", "info"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""
    anchor: str = ""


@dataclass
class Report:
    command: str
    source: str
    checks: list[Check] = field(default_factory=list)
    values: list[tuple[str, str]] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)

    def check(self, name: str, ok: bool, detail: str = "", anchor: str = "") -> bool:
        self.checks.append(Check(name, PASS if ok else FAIL, detail, anchor))
        return ok

    def not_checked(self, name: str, reason: str, anchor: str = "") -> None:
        self.checks.append(Check(name, NOT_CHECKED, reason, anchor))

    def info(self, name: str, detail: str) -> None:
        self.checks.append(Check(name, INFO, detail))

    def value(self, key: str, val) -> None:
        self.values.append((key, str(val)))

    def note(self, line: str) -> None:
        self.lines.append(line)

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)
        self.values.extend(other.values)
        self.lines.extend(other.lines)

    def count(self, status: str) -> int:
        return sum(c.status == status for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.count(FAIL) == 0 and self.count(NOT_CHECKED) == 0

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def render(self, fmt: str = "text") -> str:
        return self.machine() if fmt == "machine" else self.text()

    def text(self) -> str:
        out = [f"command: {self.command} {self.source}"]
        out.extend(self.lines)
        for c in self.checks:
            line = f"[{c.status}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            if c.anchor:
                line += f"  (anchor: {c.anchor})"
            out.append(line)
        for k, v in self.values:
            out.append(f"{k}: {v}")
        out.append(
            f"summary: {self.count(PASS)} passed, {self.count(FAIL)} failed, "
            f"{self.count(NOT_CHECKED)} not checked, {self.count(INFO)} informational"
        )
        return "\n".join(out) + "\n"

    def machine(self) -> str:
        out = [f"command={self.command}", f"source={_quote(self.source)}"]
        seen: dict[str, int] = {}
        for c in self.checks:
            key = _slug(c.name)
            seen[key] = seen.get(key, 0) + 1
            if seen[key] > 1:
                key = f"{key}.{seen[key]}"
            out.append(f"check.{key}.status={c.status}")
            if c.detail:
                out.append(f"check.{key}.detail={_quote(c.detail)}")
            if c.anchor:
                out.append(f"check.{key}.anchor={c.anchor}")
        for k, v in self.values:
            out.append(f"value.{_slug(k)}={_quote(v)}")
        out.append(f"summary.passed={self.count(PASS)}")
        out.append(f"summary.failed={self.count(FAIL)}")
        out.append(f"summary.not_checked={self.count(NOT_CHECKED)}")
        out.append(f"summary.ok={'true' if self.ok else 'false'}")
        return "\n".join(out) + "\n"


def _slug(s: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", s).strip("_").lower()


def _quote(s: str) -> str:
    return s.replace("\\", "\\\\").replace("\n", "\\n")
