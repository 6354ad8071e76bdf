"""Propositional and two-level QBF encodings of the dynamics decision problems.

Variables are numbered in a fixed layout: state groups first (``t``, then
``u``-style groups), then one enabledness group ``e:<sys>:<state>`` per
encoded result map, then the matching result groups ``r:<sys>:<state>``,
then gate auxiliaries. Every auxiliary is defined by biconditional clauses,
so it is a function of the state variables; those clauses are tagged
*definitional* and the remaining *goal* clauses carry the actual question.

The Sigma-2/Pi-2 problems are posed as ``forall X exists Y`` formulas. A
prenex ``exists forall`` form would need a third block for the auxiliaries
of the universally chosen state, so ``exists-fixge`` (and ``common-fixge``)
is encoded as its negation and answers YES when the QBF is false.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import ReactionSystem, bits_of, require_same_background
from ..errors import UsageError

CNF_MODES = (
    "exists-fixpoint",
    "given-state-attractor",
    "exists-attractor",
    "common-fixpoint",
    "common-attractor",
    "res-eq-counterexample",
    "shared-fixpoints-counterexample",
)
QBF_MODES = ("exists-fixge", "shared-attractors", "common-fixge", "shared-fixge")
MODES = CNF_MODES + QBF_MODES
TWO_SYSTEM_MODES = (
    "common-fixpoint",
    "common-attractor",
    "res-eq-counterexample",
    "shared-fixpoints-counterexample",
    "shared-attractors",
    "common-fixge",
    "shared-fixge",
)


def encode_result_map(sys: ReactionSystem, t_vars, r_vars, e_vars) -> list[list[int]]:
    """Clauses making ``r_vars`` the result of the state in ``t_vars``.

    ``e_j <-> AND(t_i for i in R_j, -t_i for i in I_j)`` and
    ``r_i <-> OR(e_j for j with i in P_j)``.
    """
    if len(t_vars) != sys.size or len(r_vars) != sys.size or len(e_vars) != len(sys.reactions):
        raise UsageError("group sizes do not match the system")
    out: list[list[int]] = []
    producers: list[list[int]] = [[] for _ in range(sys.size)]
    for j, r in enumerate(sys.reactions):
        e = e_vars[j]
        conds = [t_vars[i] for i in bits_of(r.reactants)] + [-t_vars[i] for i in bits_of(r.inhibitors)]
        out.extend([-e, c] for c in conds)
        out.append([e] + [-c for c in conds])
        for i in bits_of(r.products):
            producers[i].append(e)
    for i, es in enumerate(producers):
        out.append([-r_vars[i]] + es)
        out.extend([r_vars[i], -e] for e in es)
    return out


@dataclass
class EncodedProblem:
    """A CNF (``kind='cnf'``) or ``forall-exists`` QBF (``kind='qbf'``)."""

    mode: str
    kind: str
    num_vars: int
    clauses: list[list[int]]
    definitional: list[bool]
    groups: dict[str, list[int]]
    # which groups hold states (decodable), in layout order
    state_groups: tuple[str, ...]
    universal: list[int] = field(default_factory=list)
    # whether a satisfiable CNF / true QBF means the question's answer is YES
    yes_if_true: bool = True
    systems: tuple[ReactionSystem, ...] = ()
    given_state: int | None = None

    @property
    def primary(self) -> list[int]:
        return [v for g in self.state_groups for v in self.groups[g]]

    @property
    def existential(self) -> list[int]:
        uni = set(self.universal)
        return [v for v in range(1, self.num_vars + 1) if v not in uni]


class _Builder:
    def __init__(self):
        self.num_vars = 0
        self.groups: dict[str, list[int]] = {}
        self.clauses: list[list[int]] = []
        self.definitional: list[bool] = []

    def group(self, name, size):
        vs = list(range(self.num_vars + 1, self.num_vars + size + 1))
        self.num_vars += size
        self.groups[name] = vs
        return vs

    def aux(self):
        self.num_vars += 1
        self.groups.setdefault("aux", []).append(self.num_vars)
        return self.num_vars

    def define(self, clauses):
        for c in clauses:
            self.clauses.append(list(c))
            self.definitional.append(True)

    def goal(self, *clauses):
        for c in clauses:
            self.clauses.append(list(c))
            self.definitional.append(False)

    def true(self):
        g = self.aux()
        self.define([[g]])
        return g

    def and_(self, lits):
        lits = list(lits)
        if not lits:
            return self.true()
        if len(lits) == 1:
            return lits[0]
        g = self.aux()
        self.define([[-g, l] for l in lits] + [[g] + [-l for l in lits]])
        return g

    def or_(self, lits):
        lits = list(lits)
        if not lits:
            return -self.true()
        if len(lits) == 1:
            return lits[0]
        g = self.aux()
        self.define([[g, -l] for l in lits] + [[-g] + lits])
        return g

    def xor(self, a, b):
        g = self.aux()
        self.define([[-g, a, b], [-g, -a, -b], [g, -a, b], [g, a, -b]])
        return g

    def equal(self, xs, ys):
        """Gate true iff the two variable vectors agree."""
        return -self.or_([self.xor(x, y) for x, y in zip(xs, ys)])

    def differ(self, xs, ys):
        return self.or_([self.xor(x, y) for x, y in zip(xs, ys)])


class _Plan:
    """Allocates state groups, then all e groups, then all r groups."""

    def __init__(self, builder: _Builder, systems: dict[str, ReactionSystem]):
        self.b = builder
        self.systems = systems
        self.maps: list[tuple[str, str]] = []
        self.res: dict[tuple[str, str], list[int]] = {}

    def need(self, sys_key, state):
        self.maps.append((sys_key, state))

    def allocate(self):
        for key, st in self.maps:
            self.b.group(f"e:{key}:{st}", len(self.systems[key].reactions))
        for key, st in self.maps:
            self.res[key, st] = self.b.group(f"r:{key}:{st}", self.systems[key].size)
        for key, st in self.maps:
            self.b.define(encode_result_map(
                self.systems[key], self.b.groups[st], self.res[key, st], self.b.groups[f"e:{key}:{st}"]
            ))


def encode_problem(
    mode: str,
    a: ReactionSystem,
    b: ReactionSystem | None = None,
    given_state: int | None = None,
    reach: str = "direct",
) -> EncodedProblem:
    """Encode ``mode`` for system ``a`` (and ``b`` for two-system modes).

    ``reach`` selects how ``U != T`` is expressed inside reachability:
    ``direct`` compares U with T; ``result`` uses ``res(T) != U``, which is
    equivalent whenever T is a fixed point (always the case where it is used).
    """
    if mode not in MODES:
        raise UsageError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    if reach not in ("direct", "result"):
        raise UsageError("reach must be 'direct' or 'result'")
    two = mode in TWO_SYSTEM_MODES
    if two and b is None:
        raise UsageError(f"mode {mode} needs two systems")
    if not two and b is not None:
        raise UsageError(f"mode {mode} takes one system")
    if two:
        require_same_background(a, b)
    if mode == "given-state-attractor":
        if given_state is None:
            raise UsageError("mode given-state-attractor needs a state")
        a.check_state(given_state)
    elif given_state is not None:
        raise UsageError(f"mode {mode} takes no given state")

    n = a.size
    bld = _Builder()
    plan = _Plan(bld, {"A": a, "B": b} if two else {"A": a})
    state_names = _STATE_GROUPS[mode]
    for name in state_names:
        bld.group(name, n)
    for key, st in _MAPS[mode]:
        plan.need(key, st)
    plan.allocate()
    g = bld.groups
    res = plan.res

    def fix(key):
        return bld.equal(res[key, "t"], g["t"])

    def reach_(key, u):
        hits = bld.equal(res[key, u], g["t"])
        if reach == "direct":
            moved = bld.differ(g[u], g["t"])
        else:
            moved = bld.differ(res[key, "t"], g[u])
        return bld.and_([hits, moved])

    yes_if_true = True
    universal: list[int] = []
    if mode == "exists-fixpoint":
        bld.goal([fix("A")])
    elif mode in ("given-state-attractor", "exists-attractor"):
        if mode == "given-state-attractor":
            bld.goal(*([v] if given_state >> i & 1 else [-v] for i, v in enumerate(g["t"])))
        bld.goal([fix("A")], [reach_("A", "u")])
    elif mode == "common-fixpoint":
        bld.goal([fix("A")], [fix("B")])
    elif mode == "common-attractor":
        bld.goal([fix("A")], [fix("B")], [reach_("A", "ua")], [reach_("B", "ub")])
    elif mode == "res-eq-counterexample":
        bld.goal([bld.differ(res["A", "t"], res["B", "t"])])
        yes_if_true = False
    elif mode == "shared-fixpoints-counterexample":
        bld.goal([bld.xor(fix("A"), fix("B"))])
        yes_if_true = False
    elif mode == "exists-fixge":
        # forall T exists U: not fix(T) or U reaches T
        bld.goal([-fix("A"), reach_("A", "u")])
        universal = g["t"]
        yes_if_true = False
    elif mode == "common-fixge":
        bld.goal([-fix("A"), -fix("B"), reach_("A", "ua"), reach_("B", "ub")])
        universal = g["t"]
        yes_if_true = False
    elif mode == "shared-attractors":
        # forall T, U exists U'_A, U'_B: (att_A via U -> att_B via U'_B) and symmetric
        fa, fb = fix("A"), fix("B")
        att_a = bld.and_([fa, reach_("A", "u")])
        att_b = bld.and_([fb, reach_("B", "u")])
        bld.goal([-att_a, bld.and_([fb, reach_("B", "vb")])])
        bld.goal([-att_b, bld.and_([fa, reach_("A", "va")])])
        universal = g["t"] + g["u"]
    elif mode == "shared-fixge":
        # forall T, U_A, U_B exists U'_A, U'_B:
        # (not fix_A or U'_A reaches T in A or (fix_B and U_B does not reach T in B)) and symmetric
        fa, fb = fix("A"), fix("B")
        bld.goal([-fa, reach_("A", "va"), bld.and_([fb, -reach_("B", "ub")])])
        bld.goal([-fb, reach_("B", "vb"), bld.and_([fa, -reach_("A", "ua")])])
        universal = g["t"] + g["ua"] + g["ub"]

    return EncodedProblem(
        mode=mode,
        kind="qbf" if mode in QBF_MODES else "cnf",
        num_vars=bld.num_vars,
        clauses=bld.clauses,
        definitional=bld.definitional,
        groups=bld.groups,
        state_groups=tuple(state_names),
        universal=list(universal),
        yes_if_true=yes_if_true,
        systems=(a, b) if two else (a,),
        given_state=given_state,
    )


_STATE_GROUPS = {
    "exists-fixpoint": ("t",),
    "given-state-attractor": ("t", "u"),
    "exists-attractor": ("t", "u"),
    "common-fixpoint": ("t",),
    "common-attractor": ("t", "ua", "ub"),
    "res-eq-counterexample": ("t",),
    "shared-fixpoints-counterexample": ("t",),
    "exists-fixge": ("t", "u"),
    "common-fixge": ("t", "ua", "ub"),
    "shared-attractors": ("t", "u", "va", "vb"),
    "shared-fixge": ("t", "ua", "ub", "va", "vb"),
}

_MAPS = {
    "exists-fixpoint": [("A", "t")],
    "given-state-attractor": [("A", "t"), ("A", "u")],
    "exists-attractor": [("A", "t"), ("A", "u")],
    "common-fixpoint": [("A", "t"), ("B", "t")],
    "common-attractor": [("A", "t"), ("B", "t"), ("A", "ua"), ("B", "ub")],
    "res-eq-counterexample": [("A", "t"), ("B", "t")],
    "shared-fixpoints-counterexample": [("A", "t"), ("B", "t")],
    "exists-fixge": [("A", "t"), ("A", "u")],
    "common-fixge": [("A", "t"), ("B", "t"), ("A", "ua"), ("B", "ub")],
    "shared-attractors": [("A", "t"), ("B", "t"), ("A", "u"), ("B", "u"), ("A", "va"), ("B", "vb")],
    "shared-fixge": [
        ("A", "t"), ("B", "t"), ("A", "ua"), ("B", "ub"), ("A", "va"), ("B", "vb"),
    ],
}


def decode_witness(p: EncodedProblem, model) -> dict[str, int]:
    """State values of the state groups present in ``model``.

    ``model`` is indexable by variable (a list with index 0 unused, or a
    dict); groups with any variable missing from it are skipped.
    """
    out = {}
    for name in p.state_groups:
        vs = p.groups[name]
        try:
            bits = [bool(model[v]) for v in vs]
        except (KeyError, IndexError):
            continue
        out[name] = sum(1 << i for i, bit in enumerate(bits) if bit)
    return out
