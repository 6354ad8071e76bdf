"""Brute-force dynamics: orbits, fixed points, attractors, transition graphs.

Everything here enumerates the state space directly and is the reference
against which the polynomial procedures, the reductions and the SAT/QBF
encodings are checked. Whole-space work goes through :func:`result_table`,
which evaluates the result function on all ``2**|S|`` states with numpy,
optionally split into contiguous high-bit partitions run on worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import (
    ReactionSystem,
    _tally,
    popcount,
    require_inhibitorless,
    require_same_background,
    result,
)
from .errors import CapabilityError, PreconditionError, UsageError

DEFAULT_CAP = 22

SHARED_MODES = (
    "common-fixpoint",
    "common-attractor",
    "common-fixge",
    "share-all-fixpoints",
    "share-all-attractors",
    "share-all-fixge",
    "res-eq",
)


def check_cap(size: int, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if size > cap:
        raise CapabilityError(
            f"background has {size} entities, above the brute-force cap of {cap}; "
            f"raise it with cap=... (CLI: --cap) or use the SAT/QBF path (--mode sat)"
        )


def _grouped(sys: ReactionSystem) -> list[tuple[int, int, int]]:
    # reactions sharing (R, I) fire together, so OR their products once
    merged: dict[tuple[int, int], int] = {}
    for r in sys.reactions:
        if r.reactants & r.inhibitors:
            continue
        key = (r.reactants, r.inhibitors)
        merged[key] = merged.get(key, 0) | r.products
    return [(rm, im, pm) for (rm, im), pm in merged.items()]


def _table_chunk(groups, start: int, stop: int) -> np.ndarray:
    states = np.arange(start, stop, dtype=np.int64)
    out = np.zeros_like(states)
    for rm, im, pm in groups:
        if rm and im:
            en = ((states & rm) == rm) & ((states & im) == 0)
        elif rm:
            en = (states & rm) == rm
        elif im:
            en = (states & im) == 0
        else:
            out |= pm
            continue
        out[en] |= pm
    return out


def result_table(
    sys: ReactionSystem, cap: int | None = None, workers: int = 1, partitions: int | None = None
) -> np.ndarray:
    """``table[T] == result(sys, T)`` for every state ``T`` (int64 array).

    ``partitions`` contiguous blocks of the state space (split on high-order
    bits) are evaluated independently and concatenated in order, so the table
    does not depend on how the work is divided.
    """
    n = sys.size
    check_cap(n, cap)
    total = 1 << n
    groups = _grouped(sys)
    parts = max(1, min(partitions or workers, total))
    bounds = [total * k // parts for k in range(parts + 1)]
    spans = list(zip(bounds[:-1], bounds[1:]))
    if workers > 1 and parts > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda span: _table_chunk(groups, *span), spans))
    else:
        chunks = [_table_chunk(groups, a, b) for a, b in spans]
    _tally(total)
    return np.concatenate(chunks)


@dataclass(frozen=True)
class OrbitReport:
    sequence: tuple[int, ...]
    tail_length: int | None
    cycle_length: int | None

    @property
    def truncated(self) -> bool:
        return self.cycle_length is None


def orbit(sys: ReactionSystem, state: int, max_steps: int) -> OrbitReport:
    """Iterate ``result`` from ``state`` until a state repeats.

    ``max_steps`` bounds the number of result applications; if it runs out
    first the report is truncated (tail and cycle lengths unset).
    """
    if max_steps < 1:
        raise UsageError("max_steps must be at least 1")
    sys.check_state(state)
    seen = {state: 0}
    seq = [state]
    cur = state
    for _ in range(max_steps):
        cur = result(sys, cur)
        if cur in seen:
            tail = seen[cur]
            return OrbitReport(tuple(seq), tail, len(seq) - tail)
        seen[cur] = len(seq)
        seq.append(cur)
    return OrbitReport(tuple(seq), None, None)


def is_fixed_point(sys: ReactionSystem, state: int) -> bool:
    return result(sys, state) == state


def preimages(sys: ReactionSystem, state: int, cap: int | None = None) -> list[int]:
    sys.check_state(state)
    table = result_table(sys, cap)
    return np.flatnonzero(table == state).tolist()


def is_attractor(sys: ReactionSystem, state: int, cap: int | None = None) -> bool:
    sys.check_state(state)
    if not is_fixed_point(sys, state):
        return False
    return any(u != state for u in preimages(sys, state, cap))


@dataclass(frozen=True)
class FixedPointReport:
    """Every fixed point, split into attractors and non-attractors.

    ``witnesses`` maps each attractor to its smallest preimage other than
    itself.
    """

    fixed_points: tuple[int, ...]
    attractors: tuple[int, ...]
    non_attractors: tuple[int, ...]
    witnesses: dict[int, int] = field(default_factory=dict)


def _classify_table(table: np.ndarray):
    ids = np.arange(table.size, dtype=np.int64)
    fixed = np.flatnonzero(table == ids)
    moving = np.flatnonzero(table != ids)
    targets, first = np.unique(table[moving], return_index=True)
    witness_of = dict(zip(targets.tolist(), moving[first].tolist()))
    return fixed.tolist(), witness_of


def fixed_point_report(table: np.ndarray) -> FixedPointReport:
    fixed, witness_of = _classify_table(table)
    att = [t for t in fixed if t in witness_of]
    non = [t for t in fixed if t not in witness_of]
    witnesses = {t: witness_of[t] for t in att}
    for t, u in witnesses.items():
        # retained witnesses are re-checked against the table they came from
        assert u != t and table[u] == t and table[t] == t
    return FixedPointReport(tuple(fixed), tuple(att), tuple(non), witnesses)


def enumerate_fixed_points(
    sys: ReactionSystem, cap: int | None = None, workers: int = 1, partitions: int | None = None
) -> FixedPointReport:
    return fixed_point_report(result_table(sys, cap, workers, partitions))


@dataclass(frozen=True)
class SharedVerdict:
    mode: str
    answer: bool
    # witness for the existential modes when YES, counterexample for the
    # universal modes when NO
    state: int | None = None


def _masks(table: np.ndarray):
    n = table.size
    fixed = table == np.arange(n, dtype=np.int64)
    _, witness_of = _classify_table(table)
    reached = np.zeros(n, dtype=bool)
    if witness_of:
        reached[np.fromiter(witness_of.keys(), dtype=np.int64)] = True
    att = fixed & reached
    return fixed, att, fixed & ~reached


def shared_analysis(
    a: ReactionSystem, b: ReactionSystem, mode: str, cap: int | None = None, workers: int = 1
) -> SharedVerdict:
    if mode not in SHARED_MODES:
        raise UsageError(f"unknown mode {mode!r}; expected one of {', '.join(SHARED_MODES)}")
    require_same_background(a, b)
    ta = result_table(a, cap, workers)
    tb = result_table(b, cap, workers)
    if mode == "res-eq":
        diff = np.flatnonzero(ta != tb)
        return SharedVerdict(mode, diff.size == 0, int(diff[0]) if diff.size else None)
    kind, which = _MODE_PARTS[mode]
    ma, mb = _masks(ta)[which], _masks(tb)[which]
    if kind == "common":
        hits = np.flatnonzero(ma & mb)
        return SharedVerdict(mode, hits.size > 0, int(hits[0]) if hits.size else None)
    bad = np.flatnonzero(ma != mb)
    return SharedVerdict(mode, bad.size == 0, int(bad[0]) if bad.size else None)


# mode -> (quantifier, index into the (fixed, attractor, fixge) masks)
_MODE_PARTS = {
    "common-fixpoint": ("common", 0),
    "common-attractor": ("common", 1),
    "common-fixge": ("common", 2),
    "share-all-fixpoints": ("share", 0),
    "share-all-attractors": ("share", 1),
    "share-all-fixge": ("share", 2),
}


def local_attractor_check(sys: ReactionSystem, state: int) -> bool:
    """Whether fixed point ``state`` is reached from a one-element neighbour.

    For inhibitorless systems a fixed point reached from some proper subset
    (superset) is also reached from ``T \\ {x}`` (``T | {x}``), so |S| result
    evaluations decide attraction from below or above.
    """
    require_inhibitorless(sys, "local_attractor_check")
    sys.check_state(state)
    if result(sys, state) != state:
        raise PreconditionError(f"{sys.format(state)} is not a fixed point")
    for x in range(sys.size):
        bit = 1 << x
        if result(sys, state ^ bit) == state:
            return True
    return False


def _submasks_ascending(mask: int):
    # enumerate subsets of mask in ascending numeric order
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def transition_graph(
    sys: ReactionSystem, restrict: int | None = None, cap: int | None = None
) -> list[tuple[int, int]]:
    """One edge ``T -> result(T)`` per state, ascending by ``T``.

    With ``restrict``, only subsets of ``restrict`` are nodes and each target
    is projected onto ``restrict``.
    """
    if restrict is None:
        table = result_table(sys, cap)
        return list(enumerate(table.tolist()))
    sys.check_state(restrict)
    check_cap(popcount(restrict), cap)
    return [(t, result(sys, t) & restrict) for t in _submasks_ascending(restrict)]
