"""Hardness gadgets: compile a formula into reaction system(s).

Each ``reduce_*`` function emits the gadget exactly as constructed in the
corresponding hardness proof, reaction groups in proof order and, inside a
group, clause index then variable index ascending. Entity names:

    x<i>, nx<i>   variable i true / false
    xp<i>         primed copy of a universal variable
    c<j>          clause j
    h<i>          per-variable heart
    club, diamond, spade, heart

Background order is V, V-bar, primed, C, hearts, then suits in the order
above, restricted to whichever sets a gadget uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import EntityTable, Reaction, ReactionSystem
from .errors import FormulaError
from .formula import Formula

SUITS = ("club", "diamond", "spade", "heart")


@dataclass(frozen=True)
class ReductionOutput:
    """What a construction emits.

    ``formula_side`` names the formula property the target problem's YES
    answer is equivalent to: ``sat``, ``valid`` (DNF tautology),
    ``forall-exists`` or ``not-forall-exists``. ``also`` lists further
    problems the same systems decide with the same equivalence.
    """

    construction: str
    formula: Formula
    a: ReactionSystem
    b: ReactionSystem | None
    target_problem: str
    formula_side: str
    distinguished_state: int | None = None
    decoder: dict[int, str] = field(default_factory=dict)
    also: tuple[str, ...] = ()

    @property
    def systems(self) -> tuple[ReactionSystem, ...]:
        return (self.a,) if self.b is None else (self.a, self.b)

    def decode(self, state: int) -> frozenset[int]:
        """Variables set to true by a gadget state (decoder entity present)."""
        idx = self.a.entities.index
        return frozenset(v for v, name in self.decoder.items() if state >> idx[name] & 1)


class _Gadget:
    """Entity bookkeeping shared by the constructions."""

    def __init__(self, phi: Formula, *, primed=(), clauses=False, hearts=False, suits=()):
        self.phi = phi
        n = phi.num_vars
        names = [f"x{i}" for i in range(1, n + 1)] + [f"nx{i}" for i in range(1, n + 1)]
        names += [f"xp{i}" for i in sorted(primed)]
        if clauses:
            names += [f"c{j}" for j in range(1, phi.num_clauses + 1)]
        if hearts:
            names += [f"h{i}" for i in range(1, n + 1)]
        names += [s for s in SUITS if s in suits]
        self.table = EntityTable(tuple(names))
        self.reactions: list[Reaction] = []

    def m(self, *names) -> int:
        return self.table.mask(names)

    def x(self, i):
        return self.m(f"x{i}")

    def nx(self, i):
        return self.m(f"nx{i}")

    def c(self, j):
        """Clause entity for 0-based clause index ``j``."""
        return self.m(f"c{j + 1}")

    def h(self, i):
        return self.m(f"h{i}")

    def xp(self, i):
        return self.m(f"xp{i}")

    def vars_mask(self, variables, negated=False) -> int:
        out = 0
        for v in variables:
            out |= self.nx(v) if negated else self.x(v)
        return out

    @property
    def n(self):
        return self.phi.num_vars

    @property
    def variables(self):
        return range(1, self.phi.num_vars + 1)

    @property
    def clause_ids(self):
        return range(self.phi.num_clauses)

    def all_clauses(self) -> int:
        return self.m(*(f"c{j}" for j in range(1, self.phi.num_clauses + 1)))

    def all_hearts(self) -> int:
        return self.m(*(f"h{i}" for i in self.variables))

    def add(self, reactants, inhibitors, products):
        self.reactions.append(Reaction(reactants, inhibitors, products))

    def system(self, reactions=None, name="A") -> ReactionSystem:
        return ReactionSystem(self.table, tuple(self.reactions if reactions is None else reactions), name)


def _check(phi: Formula, kind: str, quantified: bool = False) -> None:
    if phi.kind != kind:
        raise FormulaError(f"construction needs a {kind.upper()} formula, got {phi.kind.upper()}")
    if phi.num_clauses == 0:
        raise FormulaError("formula has no clauses")
    if any(len(c) == 0 for c in phi.clauses):
        raise FormulaError("formula contains an empty clause")
    if quantified and phi.universal is None:
        raise FormulaError("construction needs a forall-exists formula")
    if not quantified and phi.universal is not None:
        raise FormulaError("construction takes an unquantified formula")


def _default_decoder(g: _Gadget) -> dict[int, str]:
    return {i: f"x{i}" for i in g.variables}


def reduce_sat_to_inhibitorless_given_attractor(phi: Formula) -> ReductionOutput:
    """CNF -> (A, C): C is a fixed point attractor of inhibitorless A iff phi is satisfiable."""
    _check(phi, "cnf")
    g = _Gadget(phi, clauses=True, suits=("spade",))
    spade = g.m("spade")
    for j in g.clause_ids:
        for x in sorted(phi.pos(j)):
            g.add(g.x(x), 0, g.c(j))
    for j in g.clause_ids:
        for x in sorted(phi.neg(j)):
            g.add(g.nx(x), 0, g.c(j))
    for i in g.variables:
        g.add(g.x(i) | g.nx(i), 0, spade)
    for i in g.variables:
        for j in g.clause_ids:
            g.add(g.x(i) | g.c(j), 0, spade)
    for i in g.variables:
        for j in g.clause_ids:
            g.add(g.nx(i) | g.c(j), 0, spade)
    for j in g.clause_ids:
        g.add(g.c(j), 0, g.c(j))
    g.add(spade, 0, spade)
    return ReductionOutput(
        "sat-to-inhibitorless-given-attractor", phi, g.system(), None,
        "given-state-attractor", "sat", g.all_clauses(), _default_decoder(g),
    )


def reduce_sat_to_reactantless_given_attractor(phi: Formula) -> ReductionOutput:
    """CNF -> (A, C + club) for reactantless A."""
    _check(phi, "cnf")
    g = _Gadget(phi, clauses=True, suits=("club", "diamond", "spade"))
    club, diamond, spade = g.m("club"), g.m("diamond"), g.m("spade")
    for j in g.clause_ids:
        for x in sorted(phi.pos(j)):
            g.add(0, g.nx(x) | club | spade, g.c(j))
    for j in g.clause_ids:
        for x in sorted(phi.neg(j)):
            g.add(0, g.x(x) | club | spade, g.c(j))
    for i in g.variables:
        g.add(0, g.x(i) | g.nx(i) | club | spade, spade)
    for j in g.clause_ids:
        g.add(0, g.c(j), spade)
    clauses = g.all_clauses()
    g.add(0, g.table.full & ~(clauses | club), clauses)
    g.add(0, diamond | spade, club)
    g.add(0, club | spade, club)
    g.add(0, club | diamond, club | diamond | spade)
    return ReductionOutput(
        "sat-to-reactantless-given-attractor", phi, g.system(), None,
        "given-state-attractor", "sat", clauses | club, _default_decoder(g),
    )


def reduce_sat_to_reactantless_fixpoint(phi: Formula, variant: str = "exists") -> ReductionOutput:
    """CNF -> reactantless A with a fixed point (``exists``) or a fixed point
    attractor (``exists-attractor``) iff phi is satisfiable."""
    _check(phi, "cnf")
    if variant not in ("exists", "exists-attractor"):
        raise FormulaError(f"unknown variant {variant!r}")
    g = _Gadget(phi, suits=("club", "spade"))
    club, spade = g.m("club"), g.m("spade")
    for j in g.clause_ids:
        g.add(0, g.vars_mask(phi.neg(j), negated=True) | g.vars_mask(phi.pos(j)), spade)
    for i in g.variables:
        g.add(0, g.x(i), g.nx(i))
    for i in g.variables:
        g.add(0, g.nx(i), g.x(i))
    g.add(0, club, club | spade if variant == "exists" else club)
    g.add(0, spade, club)
    problem = "exists-fixpoint" if variant == "exists" else "exists-attractor"
    also = ("common-fixpoint",) if variant == "exists" else ("common-attractor",)
    return ReductionOutput(
        f"sat-to-reactantless-fixpoint:{variant}", phi, g.system(), None,
        problem, "sat", None, _default_decoder(g), also,
    )


def reduce_qbf_to_reactantless(phi: Formula, variant: str = "fixge") -> ReductionOutput:
    """forall-exists CNF -> reactantless gadget.

    ``fixge``: A has a fixed point that is not an attractor iff the formula
    is not valid. ``shared-attractors``: A and B share all fixed point
    attractors iff the formula is valid.
    """
    _check(phi, "cnf", quantified=True)
    if variant not in ("fixge", "shared-attractors"):
        raise FormulaError(f"unknown variant {variant!r}")
    g = _Gadget(phi, clauses=True, hearts=True, suits=("club", "diamond", "spade"))
    club, diamond, spade = g.m("club"), g.m("diamond"), g.m("spade")
    cs = club | spade
    v1 = sorted(phi.universal)
    groups: dict[str, list[Reaction]] = {}

    def group(key, reactants, inhibitors, products):
        groups.setdefault(key, []).append(Reaction(reactants, inhibitors, products))

    for j in g.clause_ids:
        for x in sorted(phi.pos(j)):
            group("clause-pos", 0, g.nx(x) | cs, g.c(j))
    for j in g.clause_ids:
        for x in sorted(phi.neg(j)):
            group("clause-neg", 0, g.x(x) | cs, g.c(j))
    for j in g.clause_ids:
        group("unsat", 0, g.vars_mask(phi.neg(j), negated=True) | g.vars_mask(phi.pos(j)) | cs, spade)
    for i in g.variables:
        group("heart-x", 0, g.x(i) | cs, g.h(i))
    for i in g.variables:
        group("heart-nx", 0, g.nx(i) | cs, g.h(i))
    for i in g.variables:
        group("undefined", 0, g.x(i) | g.nx(i) | cs, spade)
    for j in g.clause_ids:
        group("clause-missing", 0, g.c(j), spade)
    for i in g.variables:
        group("heart-missing", 0, g.h(i), spade)
    for x in v1:
        group("flip-to-x", 0, g.nx(x), g.x(x))
    for x in v1:
        group("flip-to-nx", 0, g.x(x), g.nx(x))
    keep = g.all_clauses() | g.all_hearts() | club | g.vars_mask(v1) | g.vars_mask(v1, negated=True)
    group("sustain", 0, g.table.full & ~keep, g.all_clauses() | g.all_hearts())
    group("suit-1", 0, diamond | spade, club)
    group("suit-2", 0, club | spade, club)
    group("suit-3", 0, club | diamond, club | diamond | spade)

    order = ["clause-pos", "clause-neg", "unsat", "heart-x", "heart-nx", "undefined", "clause-missing",
             "heart-missing", "flip-to-x", "flip-to-nx", "sustain", "suit-1", "suit-2", "suit-3"]
    a = g.system([r for key in order for r in groups.get(key, [])], "A")
    if variant == "fixge":
        return ReductionOutput(
            "qbf-to-reactantless:fixge", phi, a, None, "exists-fixge", "not-forall-exists",
            None, _default_decoder(g), ("common-fixge",),
        )
    b_order = ["clause-missing", "heart-missing", "flip-to-x", "flip-to-nx", "sustain", "suit-1",
               "suit-2", "suit-3"]
    b_reactions = [r for key in b_order for r in groups.get(key, [])]
    # Without this reaction no T_U has a preimage in B. It fires only when
    # club and spade are absent, so it never touches a fixed point (all of
    # which contain club) and makes T_U reachable from T_U - club + diamond.
    v2 = sorted(phi.existential)
    b_reactions.append(
        Reaction(0, cs | g.vars_mask(v2) | g.vars_mask(v2, negated=True), g.all_clauses() | g.all_hearts())
    )
    b = g.system(b_reactions, "B")
    return ReductionOutput(
        "qbf-to-reactantless:shared-attractors", phi, a, b, "share-all-attractors", "forall-exists",
        None, _default_decoder(g),
    )


def reduce_validity_to_reactantless_shared_fixpoints(psi: Formula) -> ReductionOutput:
    """DNF -> reactantless (A, B) sharing all fixed points iff psi is a tautology."""
    _check(psi, "dnf")
    g = _Gadget(psi, suits=("club", "heart"))
    club, heart = g.m("club"), g.m("heart")
    flips = [Reaction(0, g.x(i), g.nx(i)) for i in g.variables]
    flips += [Reaction(0, g.nx(i), g.x(i)) for i in g.variables]
    for j in g.clause_ids:
        g.add(0, g.vars_mask(psi.neg(j)) | g.vars_mask(psi.pos(j), negated=True) | club, heart)
    g.reactions += flips
    g.add(0, heart, heart | club)
    a = g.system(name="A")
    b = g.system(flips + [Reaction(0, club, heart), Reaction(0, heart, heart | club)], "B")
    return ReductionOutput(
        "validity-to-reactantless-shared-fixpoints", psi, a, b, "share-all-fixpoints", "valid",
        None, _default_decoder(g), ("share-all-fixge",),
    )


def reduce_sat_to_inhibitorless_common_fixpoint(phi: Formula, variant: str = "fixpoint") -> ReductionOutput:
    """CNF -> inhibitorless (A, B) with a common fixed point (``fixpoint``) or a
    common fixed point attractor (``attractor``) iff phi is satisfiable."""
    _check(phi, "cnf")
    if variant not in ("fixpoint", "attractor"):
        raise FormulaError(f"unknown variant {variant!r}")
    g = _Gadget(phi, hearts=True, suits=("spade",))
    spade, hs = g.m("spade"), g.all_hearts()
    for j in g.clause_ids:
        g.add(g.vars_mask(phi.neg(j)) | g.vars_mask(phi.pos(j), negated=True) | hs, 0, spade)
    for i in g.variables:
        g.add(g.x(i) | hs, 0, g.h(i) | g.x(i))
    for i in g.variables:
        g.add(g.nx(i) | hs, 0, g.h(i) | g.nx(i))
    for i in g.variables:
        g.add(g.x(i) | g.nx(i) | hs, 0, spade)
    if variant == "fixpoint":
        g.add(spade | hs, 0, spade)
    a = g.system(name="A")
    b_reactions = [Reaction(0, 0, hs)]
    b_reactions += [Reaction(g.x(i), 0, g.x(i)) for i in g.variables]
    b_reactions += [Reaction(g.nx(i), 0, g.nx(i)) for i in g.variables]
    b = g.system(b_reactions, "B")
    problem = "common-fixpoint" if variant == "fixpoint" else "common-attractor"
    return ReductionOutput(
        f"sat-to-inhibitorless-common-fixpoint:{variant}", phi, a, b, problem, "sat",
        None, _default_decoder(g),
    )


def reduce_validity_to_inhibitorless_shared_fixpoints(psi: Formula) -> ReductionOutput:
    """DNF -> inhibitorless (A, B) sharing all fixed points iff psi is a tautology."""
    _check(psi, "dnf")
    g = _Gadget(psi, hearts=True, suits=("heart",))
    heart, hs = g.m("heart"), g.all_hearts()
    common = [Reaction(g.x(i) | hs, 0, g.h(i) | g.x(i)) for i in g.variables]
    common += [Reaction(g.nx(i) | hs, 0, g.h(i) | g.nx(i)) for i in g.variables]
    common += [Reaction(g.x(i) | g.nx(i) | hs, 0, heart) for i in g.variables]
    for j in g.clause_ids:
        g.add(g.vars_mask(psi.neg(j), negated=True) | g.vars_mask(psi.pos(j)) | hs | heart, 0, heart)
    g.reactions += common
    a = g.system(name="A")
    b = g.system([Reaction(heart | hs, 0, heart)] + common, "B")
    return ReductionOutput(
        "validity-to-inhibitorless-shared-fixpoints", psi, a, b, "share-all-fixpoints", "valid",
        None, _default_decoder(g), ("share-all-fixge",),
    )


def reduce_qbf_to_inhibitorless_shared_attractors(phi: Formula) -> ReductionOutput:
    """forall-exists CNF -> inhibitorless (A, B) sharing all fixed point
    attractors iff the formula is valid; A alone has a fixed point that is
    not an attractor iff it is not valid."""
    _check(phi, "cnf", quantified=True)
    v1 = sorted(phi.universal)
    g = _Gadget(phi, primed=v1, clauses=True, hearts=True, suits=("club", "spade"))
    club, spade = g.m("club"), g.m("spade")
    ch = g.all_clauses() | g.all_hearts()
    for j in g.clause_ids:
        for x in sorted(phi.pos(j)):
            g.add(g.x(x), 0, g.c(j))
    for j in g.clause_ids:
        for x in sorted(phi.neg(j)):
            g.add(g.nx(x), 0, g.c(j))
    for j in g.clause_ids:
        g.add(g.vars_mask(phi.neg(j)) | g.vars_mask(phi.pos(j), negated=True), 0, spade)
    for i in g.variables:
        g.add(g.x(i), 0, g.h(i))
    for i in g.variables:
        g.add(g.nx(i), 0, g.h(i))
    for i in g.variables:
        g.add(g.x(i) | g.nx(i), 0, club)
    for x in v1:
        g.add(g.x(x), 0, g.xp(x))
    sustain = [Reaction(ch, 0, ch)] + [Reaction(ch | g.xp(x), 0, g.xp(x)) for x in v1]
    g.reactions += sustain
    for i in g.variables:
        g.add(ch | g.x(i), 0, club)
    for i in g.variables:
        g.add(ch | g.nx(i), 0, club)
    keep_club = Reaction(club, 0, club)
    g.reactions.append(keep_club)
    g.add(spade, 0, club)
    a = g.system(name="A")
    b = g.system(sustain + [keep_club], "B")
    decoder = {i: (f"xp{i}" if i in phi.universal else f"x{i}") for i in g.variables}
    return ReductionOutput(
        "qbf-to-inhibitorless-shared-attractors", phi, a, b, "share-all-attractors", "forall-exists",
        None, decoder,
    )


def reduce_validity_to_res_eq(psi: Formula) -> ReductionOutput:
    """DNF -> general (A, B) with equal result functions iff psi is a tautology."""
    _check(psi, "dnf")
    n = psi.num_vars
    table = EntityTable(tuple(f"x{i}" for i in range(1, n + 1)) + ("heart",))
    heart = table.mask(["heart"])

    def vm(vs):
        return table.mask(f"x{v}" for v in vs)

    a = ReactionSystem(table, tuple(Reaction(vm(psi.pos(j)), vm(psi.neg(j)), heart)
                                    for j in range(psi.num_clauses)), "A")
    b = ReactionSystem(table, (Reaction(0, 0, heart),), "B")
    return ReductionOutput(
        "validity-to-res-eq", psi, a, b, "res-eq", "valid", None, {i: f"x{i}" for i in range(1, n + 1)},
    )


CONSTRUCTIONS = {
    "sat-to-inhibitorless-given-attractor": (reduce_sat_to_inhibitorless_given_attractor, None),
    "sat-to-reactantless-given-attractor": (reduce_sat_to_reactantless_given_attractor, None),
    "sat-to-reactantless-fixpoint": (reduce_sat_to_reactantless_fixpoint, ("exists", "exists-attractor")),
    "qbf-to-reactantless": (reduce_qbf_to_reactantless, ("fixge", "shared-attractors")),
    "validity-to-reactantless-shared-fixpoints": (reduce_validity_to_reactantless_shared_fixpoints, None),
    "sat-to-inhibitorless-common-fixpoint": (reduce_sat_to_inhibitorless_common_fixpoint, ("fixpoint", "attractor")),
    "validity-to-inhibitorless-shared-fixpoints": (reduce_validity_to_inhibitorless_shared_fixpoints, None),
    "qbf-to-inhibitorless-shared-attractors": (reduce_qbf_to_inhibitorless_shared_attractors, None),
    "validity-to-res-eq": (reduce_validity_to_res_eq, None),
}


def reduce(name: str, phi: Formula, variant: str | None = None) -> ReductionOutput:
    try:
        fn, variants = CONSTRUCTIONS[name]
    except KeyError:
        raise FormulaError(f"unknown construction {name!r}") from None
    if variants is None:
        if variant is not None:
            raise FormulaError(f"construction {name!r} has no variants")
        return fn(phi)
    return fn(phi, variant or variants[0])
