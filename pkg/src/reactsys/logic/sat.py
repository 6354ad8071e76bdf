"""A small CDCL SAT solver: two watched literals, first-UIP learning, phase saving.

Decisions follow a static variable order (the encoders number state
variables first, so search branches on states before auxiliaries).
Learned clauses persist across :meth:`CDCLSolver.solve` calls, which may pass
assumption literals.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import UsageError


def _slot(lit: int) -> int:
    return 2 * lit if lit > 0 else -2 * lit + 1


class CDCLSolver:
    def __init__(self, num_vars: int, clauses: Iterable[Sequence[int]] = (), order: Sequence[int] | None = None):
        self.num_vars = 0
        self.clauses: list[list[int]] = []
        self.watches: list[list[int]] = [[], []]
        self.units: list[int] = []
        self.unsat = False
        self.order: list[int] = []
        self.phase: list[bool] = [False]
        self.new_vars(num_vars)
        if order is not None:
            listed = [v for v in order if 1 <= v <= num_vars]
            rest = [v for v in range(1, num_vars + 1) if v not in set(listed)]
            self.order = listed + rest
        for clause in clauses:
            self.add_clause(clause)

    def new_vars(self, count: int) -> range:
        first = self.num_vars + 1
        self.num_vars += count
        self.watches.extend([] for _ in range(2 * count))
        self.phase.extend(False for _ in range(count))
        self.order.extend(range(first, self.num_vars + 1))
        return range(first, self.num_vars + 1)

    def add_clause(self, clause: Sequence[int]) -> None:
        lits: list[int] = []
        for lit in clause:
            if lit == 0 or abs(lit) > self.num_vars:
                raise UsageError(f"literal {lit} out of range 1..{self.num_vars}")
            if -lit in lits:
                return
            if lit not in lits:
                lits.append(lit)
        if not lits:
            self.unsat = True
        elif len(lits) == 1:
            self.units.append(lits[0])
        else:
            self._attach(lits)

    def _attach(self, lits: list[int]) -> int:
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.watches[_slot(lits[0])].append(ci)
        self.watches[_slot(lits[1])].append(ci)
        return ci

    def solve(self, assumptions: Sequence[int] = ()) -> list[bool] | None:
        """A model as ``model[v]`` for ``v`` in ``1..num_vars`` (index 0 unused), or None."""
        if self.unsat:
            return None
        n = self.num_vars
        val = [0] * (n + 1)
        level = [0] * (n + 1)
        reason = [-1] * (n + 1)
        trail: list[int] = []
        trail_lim: list[int] = []
        clauses, watches, phase = self.clauses, self.watches, self.phase
        qhead = 0

        def value(lit):
            v = val[lit] if lit > 0 else -val[-lit]
            return v

        def enqueue(lit, why):
            var = abs(lit)
            val[var] = 1 if lit > 0 else -1
            level[var] = len(trail_lim)
            reason[var] = why
            trail.append(lit)

        def propagate():
            nonlocal qhead
            while qhead < len(trail):
                false_lit = -trail[qhead]
                qhead += 1
                ws = watches[_slot(false_lit)]
                i = j = 0
                while i < len(ws):
                    ci = ws[i]
                    i += 1
                    c = clauses[ci]
                    if c[0] == false_lit:
                        c[0], c[1] = c[1], c[0]
                    if value(c[0]) == 1:
                        ws[j] = ci
                        j += 1
                        continue
                    for k in range(2, len(c)):
                        if value(c[k]) != -1:
                            c[1], c[k] = c[k], c[1]
                            watches[_slot(c[1])].append(ci)
                            break
                    else:
                        ws[j] = ci
                        j += 1
                        if value(c[0]) == -1:
                            ws[j:] = ws[i:]
                            return ci
                        enqueue(c[0], ci)
                        continue
                del ws[j:]
            return None

        def backtrack(lvl):
            nonlocal qhead
            if len(trail_lim) <= lvl:
                return
            stop = trail_lim[lvl]
            for lit in trail[stop:]:
                var = abs(lit)
                phase[var] = lit > 0
                val[var] = 0
                reason[var] = -1
            del trail[stop:]
            del trail_lim[lvl:]
            qhead = len(trail)

        def analyze(confl):
            seen = set()
            learnt = [0]
            counter = 0
            cur = len(trail_lim)
            idx = len(trail) - 1
            c = clauses[confl]
            start = 0
            while True:
                for q in c[start:]:
                    var = abs(q)
                    if var not in seen and level[var] > 0:
                        seen.add(var)
                        if level[var] == cur:
                            counter += 1
                        else:
                            learnt.append(q)
                while abs(trail[idx]) not in seen:
                    idx -= 1
                p = trail[idx]
                idx -= 1
                counter -= 1
                if counter == 0:
                    break
                c = clauses[reason[abs(p)]]
                start = 1
            learnt[0] = -p
            if len(learnt) == 1:
                return learnt, 0
            best = max(range(1, len(learnt)), key=lambda k: level[abs(learnt[k])])
            learnt[1], learnt[best] = learnt[best], learnt[1]
            return learnt, level[abs(learnt[1])]

        for lit in self.units:
            v = value(lit)
            if v == -1:
                self.unsat = True
                return None
            if v == 0:
                enqueue(lit, -1)

        order = self.order
        while True:
            confl = propagate()
            if confl is not None:
                if not trail_lim:
                    self.unsat = True
                    return None
                learnt, bt = analyze(confl)
                backtrack(bt)
                if len(learnt) == 1:
                    self.units.append(learnt[0])
                    enqueue(learnt[0], -1)
                else:
                    enqueue(learnt[0], self._attach(learnt))
                continue
            depth = len(trail_lim)
            if depth < len(assumptions):
                a = assumptions[depth]
                if value(a) == -1:
                    return None
                trail_lim.append(len(trail))
                if value(a) == 0:
                    enqueue(a, -1)
                continue
            for var in order:
                if val[var] == 0:
                    break
            else:
                return [False] + [val[v] > 0 for v in range(1, n + 1)]
            trail_lim.append(len(trail))
            enqueue(var if phase[var] else -var, -1)


def solve_cnf(num_vars: int, clauses: Iterable[Sequence[int]], order: Sequence[int] | None = None) -> list[bool] | None:
    return CDCLSolver(num_vars, clauses, order).solve()
