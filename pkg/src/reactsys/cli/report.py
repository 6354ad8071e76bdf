"""Line-delimited ``key: value`` reports."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    command: str
    verdict: bool | None = None
    fields: list[tuple[str, str]] = field(default_factory=list)
    elapsed: float | None = None

    def add(self, key: str, value) -> None:
        self.fields.append((key, str(value)))

    def add_states(self, key: str, sys, states) -> None:
        """A list of states, ``;``-separated, each in brace notation."""
        self.add(key, ";".join(sys.format(s) for s in states) if states else "-")

    def render(self) -> str:
        lines = []
        if self.verdict is not None:
            lines.append(f"verdict: {'YES' if self.verdict else 'NO'}")
        lines.append(f"command: {self.command}")
        lines.extend(f"{k}: {v}" for k, v in self.fields)
        if self.elapsed is not None:
            lines.append(f"time: {self.elapsed:.4f}s")
        return "\n".join(lines) + "\n"
