"""The reaction-system text format and formula input.

System format::

    # comment
    system <name>
    entities a b c
    reaction a b | - | c

Each reaction side is a space-separated entity list, ``-`` for the empty
set. Formulas use DIMACS-style text with a ``p cnf`` or ``p dnf`` header and
an optional ``a ... 0`` / ``e ... 0`` forall-exists prefix.
"""

from __future__ import annotations

from ..core import EntityTable, Reaction, ReactionSystem
from ..errors import EmptyProductError, ParseError, UsageError
from ..formula import Formula
from ..logic.dimacs import parse_dimacs

_RESERVED = ("-", "|")


def _column(raw: str, token: str, start: int = 0) -> int:
    pos = raw.find(token, start)
    return pos + 1 if pos >= 0 else 1


def parse_system(text: str) -> ReactionSystem:
    name = None
    table = None
    reactions: list[Reaction] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "system":
            if name is not None:
                raise ParseError("duplicate 'system' line", lineno, 1)
            if table is not None:
                raise ParseError("'system' must come before 'entities'", lineno, 1)
            if not rest or len(rest.split()) != 1:
                raise ParseError("expected 'system <name>'", lineno, 1)
            name = rest
        elif keyword == "entities":
            if table is not None:
                raise ParseError("duplicate 'entities' line", lineno, 1)
            names = rest.split()
            for tok in names:
                if tok in _RESERVED:
                    raise ParseError(f"{tok!r} cannot be an entity name", lineno, _column(raw, tok, len("entities")))
            seen = set()
            for tok in names:
                if tok in seen:
                    raise ParseError(f"duplicate entity name {tok!r}", lineno, _column(raw, tok, len("entities")))
                seen.add(tok)
            table = EntityTable(tuple(names))
        elif keyword == "reaction":
            if table is None:
                raise ParseError("'reaction' before 'entities'", lineno, 1)
            sides = rest.split("|")
            if len(sides) != 3:
                raise ParseError("expected 'reaction <R> | <I> | <P>'", lineno, 1)
            masks = []
            offset = raw.find("reaction") + len("reaction")
            for side in sides:
                toks = side.split()
                if not toks:
                    raise ParseError("empty reaction side; write '-' for the empty set", lineno, offset + 1)
                mask = 0
                if toks != ["-"]:
                    for tok in toks:
                        if tok not in table.index:
                            raise ParseError(f"unknown entity {tok!r}", lineno, _column(raw, tok, offset))
                        mask |= 1 << table.index[tok]
                masks.append(mask)
                offset += len(side) + 1
            try:
                reactions.append(Reaction(*masks))
            except EmptyProductError:
                raise ParseError("empty product set", lineno, _column(raw, "|", raw.rfind("|"))) from None
        else:
            raise ParseError(f"unknown line keyword {keyword!r}", lineno, _column(raw, keyword))
    if table is None:
        raise ParseError("missing 'entities' line")
    return ReactionSystem(table, tuple(reactions), name or "rs")


def emit_system(sys: ReactionSystem) -> str:
    """Canonical text: system line, entities line, one line per reaction."""
    for n in sys.entities.names:
        if n in _RESERVED:
            raise UsageError(f"entity name {n!r} cannot be written in the system format")

    def side(mask):
        return " ".join(sys.entities.members(mask)) if mask else "-"

    lines = [f"system {sys.name}", " ".join(("entities",) + sys.entities.names).rstrip()]
    for r in sys.reactions:
        lines.append(f"reaction {side(r.reactants)} | {side(r.inhibitors)} | {side(r.products)}")
    return "\n".join(lines) + "\n"


def parse_formula(text: str) -> Formula:
    parsed = parse_dimacs(text, kinds=("cnf", "dnf"))
    return Formula(parsed.kind, parsed.num_vars, parsed.clauses, parsed.universal)


def emit_formula(phi: Formula) -> str:
    lines = [f"p {phi.kind} {phi.num_vars} {phi.num_clauses}"]
    if phi.universal is not None:
        lines.append("a " + " ".join(map(str, sorted(phi.universal))) + " 0")
        if phi.existential:
            lines.append("e " + " ".join(map(str, sorted(phi.existential))) + " 0")
    lines.extend(" ".join(map(str, c + (0,))) for c in phi.clauses)
    return "\n".join(lines) + "\n"


def parse_state(sys: ReactionSystem, text: str) -> int:
    """``{a,b}``, ``a,b`` or ``a b``; ``{}`` or ``-`` for the empty state."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    names = [tok for tok in body.replace(",", " ").split() if tok != "-"]
    try:
        return sys.state(names)
    except UsageError as exc:
        raise ParseError(str(exc)) from None
