"""DIMACS CNF and QDIMACS text, both directions."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParseError
from .encode import EncodedProblem


def emit_dimacs(p: EncodedProblem) -> str:
    """DIMACS for a CNF problem, QDIMACS (``a`` then ``e`` block) for a QBF."""
    lines = [f"c mode {p.mode}"]
    for name in p.groups:
        vs = p.groups[name]
        if vs and name != "aux":
            lines.append(f"c group {name} {vs[0]}-{vs[-1]}")
    goals = [i for i, d in enumerate(p.definitional) if not d]
    if p.state_groups and len(goals) < len(p.clauses):
        lines.append("c goal " + " ".join(_ranges(goals)))
    lines.append(f"p cnf {p.num_vars} {len(p.clauses)}")
    if p.kind == "qbf":
        uni = set(p.universal)
        lines.append("a " + " ".join(map(str, sorted(uni))) + " 0")
        rest = [v for v in range(1, p.num_vars + 1) if v not in uni]
        if rest:
            lines.append("e " + " ".join(map(str, rest)) + " 0")
    lines.extend(" ".join(map(str, c + [0])) for c in p.clauses)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ParsedDimacs:
    kind: str  # header word: cnf or dnf
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    # None without a prefix; otherwise the universal block (possibly empty)
    universal: frozenset[int] | None


def parse_dimacs(text: str, kinds=("cnf",)) -> ParsedDimacs:
    """Parse DIMACS/QDIMACS-style text.

    Accepts an optional ``a ... 0`` line followed by an optional ``e ... 0``
    line; an ``exists`` block before a ``forall`` block, or any further
    alternation, is rejected. Variables missing from a prefix are treated as
    existential.
    """
    header = None
    blocks: list[tuple[str, list[int]]] = []
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise ParseError("duplicate header", lineno, 1)
            parts = line.split()
            if len(parts) != 4 or parts[1] not in kinds:
                raise ParseError(f"expected header 'p {'|'.join(kinds)} <vars> <clauses>'", lineno, 1)
            try:
                header = (parts[1], int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("header counts must be integers", lineno, 1) from None
            if header[1] < 0 or header[2] < 0:
                raise ParseError("header counts must be non-negative", lineno, 1)
            continue
        if header is None:
            raise ParseError("content before the 'p' header", lineno, 1)
        if line[0] in "ae" and (len(line) == 1 or line[1].isspace()):
            if clauses or current:
                raise ParseError("quantifier line after clauses", lineno, 1)
            nums = _ints(line[1:], lineno, raw)
            if not nums or nums[-1] != 0 or 0 in nums[:-1]:
                raise ParseError("quantifier line must end with a single 0", lineno, 1)
            for v in nums[:-1]:
                if not 1 <= v <= header[1]:
                    raise ParseError(f"variable {v} out of range 1..{header[1]}", lineno, _col(raw, str(v)))
            if blocks and blocks[-1][0] == line[0]:
                blocks[-1][1].extend(nums[:-1])
            else:
                blocks.append((line[0], nums[:-1]))
            continue
        for v in _ints(line, lineno, raw):
            if v == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(v) > header[1]:
                raise ParseError(f"literal {v} out of range 1..{header[1]}", lineno, _col(raw, str(v)))
            else:
                current.append(v)
    if header is None:
        raise ParseError("missing 'p' header", 1, 1)
    if current:
        raise ParseError("last clause is not terminated by 0", len(text.splitlines()), 1)
    if len(clauses) != header[2]:
        raise ParseError(f"header announces {header[2]} clauses, found {len(clauses)}")
    kinds_seen = [k for k, _ in blocks]
    if kinds_seen not in ([], ["e"], ["a"], ["a", "e"]):
        if kinds_seen[0] == "e":
            raise ParseError("exists-forall prefix not supported; only forall-exists")
        raise ParseError("more than one quantifier alternation")
    quantified = [v for _, vs in blocks for v in vs]
    if len(set(quantified)) != len(quantified):
        raise ParseError("a variable is quantified twice")
    universal = None
    if "a" in kinds_seen:
        universal = frozenset(blocks[0][1])
    return ParsedDimacs(header[0], header[1], tuple(clauses), universal)


def _ranges(xs):
    out, i = [], 0
    while i < len(xs):
        j = i
        while j + 1 < len(xs) and xs[j + 1] == xs[j] + 1:
            j += 1
        out.append(str(xs[i]) if i == j else f"{xs[i]}-{xs[j]}")
        i = j + 1
    return out


def _comment_layout(text: str):
    """State groups and goal clause indices from our own ``c group`` / ``c goal`` comments."""
    groups: dict[str, list[int]] = {}
    goals: set[int] | None = None
    for line in text.splitlines():
        parts = line.split()
        try:
            if parts[:2] == ["c", "group"] and len(parts) == 4 and ":" not in parts[2]:
                lo, hi = map(int, parts[3].split("-"))
                groups[parts[2]] = list(range(lo, hi + 1))
            elif parts[:2] == ["c", "goal"]:
                goals = set()
                for tok in parts[2:]:
                    lo, _, hi = tok.partition("-")
                    goals.update(range(int(lo), int(hi or lo) + 1))
        except ValueError:
            return {}, None
    return groups, goals


def _ints(s, lineno, raw):
    out = []
    for tok in s.split():
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"unexpected token {tok!r}", lineno, _col(raw, tok)) from None
    return out


def _col(raw, tok):
    pos = raw.find(tok)
    return pos + 1 if pos >= 0 else 1


def problem_from_dimacs(text: str) -> EncodedProblem:
    """Wrap a DIMACS/QDIMACS file as a problem.

    Files written by :func:`emit_dimacs` keep their state groups and the split
    between gate definitions and goal clauses, so they are solved exactly as
    the encoded problem would be. Other files have no state groups.
    """
    parsed = parse_dimacs(text)
    clauses = [list(c) for c in parsed.clauses]
    qbf = parsed.universal is not None
    groups, goals = _comment_layout(text)
    n = parsed.num_vars
    if goals is None or not groups or any(v > n for vs in groups.values() for v in vs) \
            or any(i >= len(clauses) for i in goals):
        groups, goals = {}, set(range(len(clauses)))
    return EncodedProblem(
        mode="qdimacs" if qbf else "dimacs",
        kind="qbf" if qbf else "cnf",
        num_vars=n,
        clauses=clauses,
        definitional=[i not in goals for i in range(len(clauses))],
        groups=groups,
        state_groups=tuple(groups),
        universal=sorted(parsed.universal or ()),
    )
