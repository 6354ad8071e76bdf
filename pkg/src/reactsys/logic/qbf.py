"""Two-level QBF ``forall X exists Y: matrix`` by counterexample-guided refinement.

An abstraction solver proposes X; an inner SAT call looks for a Y. When one
is found, the abstraction learns that X must also defeat that particular
choice of primary Y variables. Auxiliary variables that the matrix defines
(Tseitin gates) are copied fresh in every refinement, so the learned
constraint stays exact: ``defs(X, Y*, aux') and not goal(X, Y*, aux')``.
Without that split every existential variable is treated as primary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .sat import CDCLSolver


@dataclass(frozen=True)
class QBFResult:
    value: bool
    # universal assignment defeating every Y, when ``value`` is False
    counterexample: dict[int, bool] | None = None
    refinements: int = 0


def solve_forall_exists(
    num_vars: int,
    clauses: Sequence[Sequence[int]],
    universal: Sequence[int],
    definitional: Sequence[bool] | None = None,
    primary: Sequence[int] | None = None,
) -> QBFResult:
    universal = sorted(set(universal))
    uni = set(universal)
    if definitional is None:
        definitional = [False] * len(clauses)
        prim = set(range(1, num_vars + 1)) - uni
    else:
        prim = set(primary or ()) - uni
    inner = CDCLSolver(num_vars, clauses, sorted(prim) + sorted(set(range(1, num_vars + 1)) - prim))
    abstraction = CDCLSolver(0)
    ids = abstraction.new_vars(len(universal))
    outer = dict(zip(universal, ids))
    refinements = 0
    while True:
        cand = abstraction.solve()
        if cand is None:
            return QBFResult(True, None, refinements)
        x = {v: cand[outer[v]] for v in universal}
        model = inner.solve([v if x[v] else -v for v in universal])
        if model is None:
            return QBFResult(False, x, refinements)
        refinements += 1
        _refine(abstraction, outer, clauses, definitional, prim, model)


def _refine(abstraction, outer, clauses, definitional, prim, model):
    fresh: dict[int, int] = {}

    def image(lit):
        """Abstraction literal, or True/False for a constant."""
        var = abs(lit)
        if var in outer:
            return outer[var] if lit > 0 else -outer[var]
        if var in prim:
            return model[var] == (lit > 0)
        if var not in fresh:
            fresh[var] = abstraction.new_vars(1)[0]
        return fresh[var] if lit > 0 else -fresh[var]

    selectors = []
    for clause, is_def in zip(clauses, definitional):
        lits = []
        satisfied = False
        for lit in clause:
            img = image(lit)
            if img is True:
                satisfied = True
                break
            if img is not False:
                lits.append(img)
        if satisfied:
            continue
        if is_def:
            abstraction.add_clause(lits)
        else:
            # this goal clause must fail: each remaining literal false
            s = abstraction.new_vars(1)[0]
            for lit in lits:
                abstraction.add_clause([-s, -lit])
            selectors.append(s)
    abstraction.add_clause(selectors)
