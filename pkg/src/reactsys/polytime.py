"""Polynomial-time decision procedures for the constrained classes.

Inhibitorless systems compute monotone maps and reactantless systems compute
antitone maps of the subset lattice; every procedure here relies on that to
look only at a linear number of critical states.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ReactionSystem,
    bits_of,
    complement_conjugate,
    popcount,
    require_inhibitorless,
    require_reactantless,
    require_same_background,
    result,
)
from .errors import PreconditionError


def _iterate_to_fixpoint(sys: ReactionSystem, start: int, increasing: bool) -> tuple[int, int]:
    cur = start
    steps = 0
    while True:
        nxt = result(sys, cur)
        steps += 1
        if nxt == cur:
            return cur, steps
        # Knaster-Tarski chains are monotone; anything else means the class check lied
        if increasing:
            assert cur & ~nxt == 0, "lfp chain is not increasing"
        else:
            assert nxt & ~cur == 0, "gfp chain is not decreasing"
        if steps > sys.size + 1:
            raise AssertionError("fixed-point iteration exceeded |S|+1 steps")
        cur = nxt


def lfp_monotone(sys: ReactionSystem) -> int:
    """Least fixed point of an inhibitorless system, by iteration from the empty state."""
    return lfp_with_steps(sys)[0]


def lfp_with_steps(sys: ReactionSystem) -> tuple[int, int]:
    """Like :func:`lfp_monotone`, also returning the number of result evaluations."""
    require_inhibitorless(sys, "lfp_monotone")
    return _iterate_to_fixpoint(sys, 0, increasing=True)


def gfp_monotone(sys: ReactionSystem) -> int:
    return gfp_with_steps(sys)[0]


def gfp_with_steps(sys: ReactionSystem) -> tuple[int, int]:
    require_inhibitorless(sys, "gfp_monotone")
    return _iterate_to_fixpoint(sys, sys.full, increasing=False)


def pointwise_leq_monotone(a: ReactionSystem, b: ReactionSystem) -> bool:
    """``res_A(T) <= res_B(T)`` for all T, checked on the reactant sets of A only."""
    require_inhibitorless(a, "pointwise_leq_monotone")
    require_inhibitorless(b, "pointwise_leq_monotone")
    require_same_background(a, b)
    for r in a.reactions:
        if result(a, r.reactants) & ~result(b, r.reactants):
            return False
    return True


def res_eq_inhibitorless(a: ReactionSystem, b: ReactionSystem) -> bool:
    return pointwise_leq_monotone(a, b) and pointwise_leq_monotone(b, a)


def pointwise_leq_antitone(a: ReactionSystem, b: ReactionSystem) -> bool:
    """Reactantless counterpart: compare on the complements ``S \\ I_a``."""
    require_reactantless(a, "pointwise_leq_antitone")
    require_reactantless(b, "pointwise_leq_antitone")
    require_same_background(a, b)
    full = a.full
    for r in a.reactions:
        top = full & ~r.inhibitors
        if result(a, top) & ~result(b, top):
            return False
    return True


def res_eq_reactantless(a: ReactionSystem, b: ReactionSystem) -> bool:
    return pointwise_leq_antitone(a, b) and pointwise_leq_antitone(b, a)


def is_empty_function(sys: ReactionSystem) -> bool:
    return all(r.reactants & r.inhibitors for r in sys.reactions)


@dataclass(frozen=True)
class BijectivityVerdict:
    bijective: bool
    failed_condition: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.bijective


def bijective_inhibitorless(sys: ReactionSystem) -> BijectivityVerdict:
    """Three-condition injectivity test for monotone result functions.

    1. ``res({}) = {}`` and every singleton maps to a singleton;
    2. the singleton images are pairwise distinct;
    3. each reactant set maps to the union of its members' images.
    """
    require_inhibitorless(sys, "bijective_inhibitorless")
    fmt = sys.format
    empty_image = result(sys, 0)
    if empty_image:
        return BijectivityVerdict(False, 1, f"res({{}}) = {fmt(empty_image)}")
    image = []
    for x in range(sys.size):
        img = result(sys, 1 << x)
        if popcount(img) != 1:
            return BijectivityVerdict(False, 1, f"res({fmt(1 << x)}) = {fmt(img)} is not a singleton")
        image.append(img)
    owner: dict[int, int] = {}
    for x, img in enumerate(image):
        if img in owner:
            return BijectivityVerdict(
                False, 2, f"res({fmt(1 << owner[img])}) = res({fmt(1 << x)}) = {fmt(img)}"
            )
        owner[img] = x
    for j, r in enumerate(sys.reactions):
        union = 0
        for x in bits_of(r.reactants):
            union |= image[x]
        got = result(sys, r.reactants)
        if got != union:
            return BijectivityVerdict(
                False, 3, f"reaction {j}: res({fmt(r.reactants)}) = {fmt(got)}, singletons give {fmt(union)}"
            )
    return BijectivityVerdict(True)


def bijective_reactantless(sys: ReactionSystem) -> BijectivityVerdict:
    """Bijectivity of an antitone result function.

    ``res`` is injective iff ``T -> res(S \\ T)`` is, and that map is the
    result function of the inhibitorless complement conjugate.
    """
    require_reactantless(sys, "bijective_reactantless")
    return bijective_inhibitorless(complement_conjugate(sys))


def additive_reduction(sys: ReactionSystem) -> ReactionSystem:
    """Drop every reaction with two or more reactants from a bijective inhibitorless system."""
    verdict = bijective_inhibitorless(sys)
    if not verdict:
        raise PreconditionError(f"result function is not bijective: {verdict.reason}")
    reduced = sys.with_reactions(r for r in sys.reactions if popcount(r.reactants) <= 1)
    if not res_eq_inhibitorless(sys, reduced):
        raise AssertionError("additive reduction changed the result function")
    return reduced
