"""Internal solving, verdict mapping and witness re-checks."""

from __future__ import annotations

from dataclasses import dataclass

from ..core import result
from ..dynamics import DEFAULT_CAP, is_attractor
from ..errors import CapabilityError, RecheckError
from .encode import EncodedProblem, decode_witness, encode_problem
from .qbf import solve_forall_exists
from .sat import solve_cnf

DEFAULT_CNF_CAP = 40
DEFAULT_QBF_CAP = 24


@dataclass(frozen=True)
class Solution:
    """``satisfiable`` is SAT for a CNF and truth for a QBF.

    ``model`` is a satisfying assignment (CNF), or the universal assignment
    defeating every existential choice (false QBF); otherwise None.
    """

    satisfiable: bool
    model: dict[int, bool] | None = None


def search_variables(p: EncodedProblem) -> int:
    """Variables the search is really over: the state groups, or every variable
    of a formula read from a file."""
    return len(p.primary) if p.state_groups else p.num_vars


def solve_brute(p: EncodedProblem, cap: int | None = None) -> Solution:
    """Exact verdict with the internal CDCL / CEGAR solvers.

    The CNF cap bounds :func:`search_variables` (gate auxiliaries are
    functions of those and do not widen the search); the QBF cap bounds the
    universal block.
    """
    if p.kind == "cnf":
        cap = DEFAULT_CNF_CAP if cap is None else cap
        count = search_variables(p)
        if count > cap:
            raise CapabilityError(f"CNF search over {count} variables exceeds the cap of {cap}")
        model = solve_cnf(p.num_vars, p.clauses, p.primary or None)
        if model is None:
            return Solution(False)
        return Solution(True, {v: model[v] for v in range(1, p.num_vars + 1)})
    cap = DEFAULT_QBF_CAP if cap is None else cap
    if len(p.universal) > cap:
        raise CapabilityError(f"QBF outer block of {len(p.universal)} variables exceeds the cap of {cap}")
    res = solve_forall_exists(
        p.num_vars, p.clauses, p.universal,
        p.definitional if p.state_groups else None, p.primary,
    )
    return Solution(res.value, res.counterexample)


@dataclass(frozen=True)
class Decision:
    mode: str
    answer: bool
    # decoded witness (YES on existential modes) or counterexample (NO on universal ones)
    states: dict[str, int]
    solution: Solution

    @property
    def state(self) -> int | None:
        return self.states.get("t")


def decide(p: EncodedProblem, solution: Solution) -> Decision:
    """Map a solver outcome to the question's answer and re-check any witness."""
    answer = solution.satisfiable == p.yes_if_true
    states = decode_witness(p, solution.model) if solution.model is not None else {}
    if states:
        recheck(p, answer, states)
    return Decision(p.mode, answer, states, solution)


def solve_problem(mode, a, b=None, given_state=None, cap=None, reach="direct") -> Decision:
    p = encode_problem(mode, a, b, given_state, reach)
    return decide(p, solve_brute(p, cap))


def _attractor(sys, state) -> bool:
    if sys.size <= DEFAULT_CAP:
        return is_attractor(sys, state)
    p = encode_problem("given-state-attractor", sys, given_state=state)
    return solve_cnf(p.num_vars, p.clauses, p.primary) is not None


def _fixed(sys, state) -> bool:
    return result(sys, state) == state


def _fixge(sys, state) -> bool:
    return _fixed(sys, state) and not _attractor(sys, state)


def _reaches(sys, u, t) -> bool:
    return u != t and result(sys, u) == t


def recheck(p: EncodedProblem, answer: bool, states: dict[str, int]) -> None:
    """Validate a decoded witness by direct evaluation; raise RecheckError if it fails."""
    a = p.systems[0]
    b = p.systems[1] if len(p.systems) > 1 else None
    t = states["t"]
    mode = p.mode
    if mode == "exists-fixpoint":
        ok = _fixed(a, t)
    elif mode == "given-state-attractor":
        ok = t == p.given_state and _fixed(a, t) and _reaches(a, states["u"], t)
    elif mode == "exists-attractor":
        ok = _fixed(a, t) and _reaches(a, states["u"], t)
    elif mode == "common-fixpoint":
        ok = _fixed(a, t) and _fixed(b, t)
    elif mode == "common-attractor":
        ok = _fixed(a, t) and _fixed(b, t) and _reaches(a, states["ua"], t) and _reaches(b, states["ub"], t)
    elif mode == "res-eq-counterexample":
        ok = result(a, t) != result(b, t)
    elif mode == "shared-fixpoints-counterexample":
        ok = _fixed(a, t) != _fixed(b, t)
    elif mode == "exists-fixge":
        ok = _fixge(a, t)
    elif mode == "common-fixge":
        ok = _fixge(a, t) and _fixge(b, t)
    elif mode == "shared-attractors":
        u = states["u"]
        ok = (_fixed(a, t) and _reaches(a, u, t) and not (_fixed(b, t) and _attractor(b, t))) or (
            _fixed(b, t) and _reaches(b, u, t) and not (_fixed(a, t) and _attractor(a, t))
        )
    elif mode == "shared-fixge":
        ok = _fixge(a, t) != _fixge(b, t)
    else:
        return
    if not ok:
        verdict = "YES" if answer else "NO"
        raise RecheckError(f"{mode}: decoded witness {a.format(t)} for verdict {verdict} failed re-check")
