"""Criterion result lines collected by the acceptance suite, printed at session end."""

LINES: list[str] = []
