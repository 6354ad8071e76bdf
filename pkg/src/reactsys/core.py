"""Reaction-system data model and the result function.

States are plain ``int`` bitmasks over the background set: bit ``i`` is set
iff entity ``i`` (declaration order) is present. Reactions store their three
entity sets the same way, so enabledness is two mask tests.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import ClassMismatchError, EmptyProductError, UsageError

__all__ = [
    "EntityTable",
    "Reaction",
    "ReactionSystem",
    "ResourceClass",
    "enabled",
    "result",
    "result_single",
    "normalize_singleton_products",
    "classify",
    "complement_conjugate",
    "count_evaluations",
    "bits_of",
    "popcount",
]


def bits_of(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class EntityTable:
    names: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        lookup = {}
        for pos, name in enumerate(names):
            if not isinstance(name, str) or not name or any(c.isspace() for c in name):
                raise UsageError(f"invalid entity name {name!r}")
            if name in lookup:
                raise UsageError(f"duplicate entity name {name!r}")
            lookup[name] = pos
        object.__setattr__(self, "index", lookup)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    @property
    def full(self) -> int:
        """Bitmask of the whole background set."""
        return (1 << len(self.names)) - 1

    def mask(self, names: Iterable[str]) -> int:
        bits = 0
        for name in names:
            try:
                bits |= 1 << self.index[name]
            except KeyError:
                raise UsageError(f"unknown entity {name!r}") from None
        return bits

    def members(self, mask: int) -> list[str]:
        return [self.names[i] for i in bits_of(mask)]

    def format(self, mask: int) -> str:
        """Brace notation in declaration order, e.g. ``{a,b}``."""
        return "{" + ",".join(self.members(mask)) + "}"


@dataclass(frozen=True)
class Reaction:
    """A reaction ``(R, I, P)``; each side is an entity bitmask."""

    reactants: int
    inhibitors: int
    products: int

    def __post_init__(self):
        if self.products == 0:
            raise EmptyProductError("reaction products must be nonempty")
        if min(self.reactants, self.inhibitors, self.products) < 0:
            raise UsageError("entity masks must be non-negative")

    def enabled_by(self, state: int) -> bool:
        return state & self.reactants == self.reactants and not state & self.inhibitors


@dataclass(frozen=True)
class ResourceClass:
    max_reactants: int
    max_inhibitors: int

    @property
    def is_reactantless(self) -> bool:
        return self.max_reactants == 0

    @property
    def is_inhibitorless(self) -> bool:
        return self.max_inhibitors == 0

    def __str__(self):
        return f"RS({self.max_reactants},{self.max_inhibitors})"


@dataclass(frozen=True)
class ReactionSystem:
    entities: EntityTable
    reactions: tuple[Reaction, ...] = ()
    name: str = "rs"

    def __post_init__(self):
        object.__setattr__(self, "reactions", tuple(self.reactions))
        full = self.entities.full
        for j, r in enumerate(self.reactions):
            if (r.reactants | r.inhibitors | r.products) & ~full:
                raise UsageError(f"reaction {j} references an entity index >= {len(self.entities)}")

    @classmethod
    def build(
        cls,
        entities: Sequence[str],
        reactions: Iterable[tuple[Iterable[str], Iterable[str], Iterable[str]]] = (),
        name: str = "rs",
    ) -> "ReactionSystem":
        """Construct from entity names; each reaction is ``(R, I, P)`` name lists."""
        table = entities if isinstance(entities, EntityTable) else EntityTable(tuple(entities))
        built = [Reaction(table.mask(r), table.mask(i), table.mask(p)) for r, i, p in reactions]
        return cls(table, tuple(built), name)

    @property
    def size(self) -> int:
        return len(self.entities)

    @property
    def full(self) -> int:
        return self.entities.full

    def state(self, names: Iterable[str] = ()) -> int:
        return self.entities.mask(names)

    def format(self, state: int) -> str:
        return self.entities.format(state)

    def with_reactions(self, reactions: Iterable[Reaction], name: str | None = None) -> "ReactionSystem":
        return ReactionSystem(self.entities, tuple(reactions), self.name if name is None else name)

    def check_state(self, state: int) -> None:
        if not isinstance(state, int) or state < 0 or state >> self.size:
            raise UsageError(f"state {state!r} does not fit a background of {self.size} entities")


# Result-evaluation accounting. Used to compare polynomial procedures against
# exhaustive search; inactive unless a counter is installed.
_evaluations: contextvars.ContextVar[list[int] | None] = contextvars.ContextVar("_evaluations", default=None)


@contextlib.contextmanager
def count_evaluations():
    """Count result-function evaluations made inside the block.

    Yields a one-element list whose item is the running total.
    """
    box = [0]
    token = _evaluations.set(box)
    try:
        yield box
    finally:
        _evaluations.reset(token)


def _tally(n: int = 1) -> None:
    box = _evaluations.get()
    if box is not None:
        box[0] += n


def _check_index(sys: ReactionSystem, j: int) -> None:
    if not 0 <= j < len(sys.reactions):
        raise UsageError(f"reaction index {j} out of range (system has {len(sys.reactions)})")


def enabled(sys: ReactionSystem, j: int, state: int) -> bool:
    _check_index(sys, j)
    sys.check_state(state)
    return sys.reactions[j].enabled_by(state)


def result_single(sys: ReactionSystem, j: int, state: int) -> int:
    _check_index(sys, j)
    sys.check_state(state)
    r = sys.reactions[j]
    return r.products if r.enabled_by(state) else 0


def result(sys: ReactionSystem, state: int) -> int:
    """Union of the products of every reaction enabled in ``state``."""
    sys.check_state(state)
    _tally()
    out = 0
    for r in sys.reactions:
        if state & r.reactants == r.reactants and not state & r.inhibitors:
            out |= r.products
    return out


def normalize_singleton_products(sys: ReactionSystem) -> ReactionSystem:
    split = [
        Reaction(r.reactants, r.inhibitors, 1 << p)
        for r in sys.reactions
        for p in bits_of(r.products)
    ]
    return sys.with_reactions(split)


def classify(sys: ReactionSystem) -> ResourceClass:
    return ResourceClass(
        max((popcount(r.reactants) for r in sys.reactions), default=0),
        max((popcount(r.inhibitors) for r in sys.reactions), default=0),
    )


def complement_conjugate(sys: ReactionSystem) -> ReactionSystem:
    """Turn a reactantless system into the inhibitorless one computing ``T -> res(S \\ T)``."""
    if any(r.reactants for r in sys.reactions):
        raise ClassMismatchError("complement_conjugate needs a reactantless system")
    return sys.with_reactions(Reaction(r.inhibitors, 0, r.products) for r in sys.reactions)


def require_inhibitorless(sys: ReactionSystem, what: str) -> None:
    if any(r.inhibitors for r in sys.reactions):
        raise ClassMismatchError(f"{what} needs an inhibitorless system")


def require_reactantless(sys: ReactionSystem, what: str) -> None:
    if any(r.reactants for r in sys.reactions):
        raise ClassMismatchError(f"{what} needs a reactantless system")


def require_same_background(a: ReactionSystem, b: ReactionSystem) -> None:
    if a.entities.names != b.entities.names:
        raise UsageError("systems must share the same background set (same entities, same order)")
