"""CNF/DNF formulas with an optional forall-exists prefix, plus brute-force deciders.

The deciders enumerate truth assignments directly and share no code with the
reaction-system side; they are the formula half of every reduction check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import FormulaError


@dataclass(frozen=True)
class Formula:
    """Clauses are tuples of signed 1-based variable indices.

    For CNF each clause is a disjunction and the formula their conjunction;
    for DNF each clause is a conjunction and the formula their disjunction.
    ``universal`` holds the variables of the outer forall block (the rest are
    existential) and is ``None`` for unquantified formulas.
    """

    kind: str
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    universal: frozenset[int] | None = None

    def __post_init__(self):
        if self.kind not in ("cnf", "dnf"):
            raise FormulaError(f"unknown formula kind {self.kind!r}")
        if self.num_vars < 0:
            raise FormulaError("num_vars must be non-negative")
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for j, clause in enumerate(clauses):
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise FormulaError(f"clause {j + 1}: literal {lit} out of range 1..{self.num_vars}")
        if self.universal is not None:
            uni = frozenset(self.universal)
            if any(not 1 <= v <= self.num_vars for v in uni):
                raise FormulaError("quantifier prefix names a variable out of range")
            object.__setattr__(self, "universal", uni)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def existential(self) -> frozenset[int]:
        return frozenset(range(1, self.num_vars + 1)) - (self.universal or frozenset())

    def pos(self, j: int) -> frozenset[int]:
        """Variables occurring non-negated in clause ``j`` (0-based)."""
        return frozenset(lit for lit in self.clauses[j] if lit > 0)

    def neg(self, j: int) -> frozenset[int]:
        """Variables occurring negated in clause ``j`` (0-based)."""
        return frozenset(-lit for lit in self.clauses[j] if lit < 0)

    def evaluate(self, true_vars) -> bool:
        """Truth value under the assignment making exactly ``true_vars`` true."""
        true_vars = set(true_vars)

        def lit_true(lit):
            return (lit in true_vars) if lit > 0 else (-lit not in true_vars)

        if self.kind == "cnf":
            return all(any(lit_true(l) for l in c) for c in self.clauses)
        return any(all(lit_true(l) for l in c) for c in self.clauses)

    def __str__(self):
        inner, outer = (" | ", " & ") if self.kind == "cnf" else (" & ", " | ")
        text = outer.join(
            "(" + inner.join(("x" if l > 0 else "~x") + str(abs(l)) for l in c) + ")" for c in self.clauses
        )
        if self.universal is not None:
            text = (
                f"forall {sorted(self.universal)} exists {sorted(self.existential)}: " + text
            )
        return text


def _assignments(variables):
    variables = sorted(variables)
    for bits in itertools.product((False, True), repeat=len(variables)):
        yield {v for v, b in zip(variables, bits) if b}


def brute_satisfying(phi: Formula) -> set[int] | None:
    """First satisfying assignment (as the set of true variables), or None."""
    for true_vars in _assignments(range(1, phi.num_vars + 1)):
        if phi.evaluate(true_vars):
            return true_vars
    return None


def brute_sat(phi: Formula) -> bool:
    return brute_satisfying(phi) is not None


def brute_falsifying(phi: Formula) -> set[int] | None:
    for true_vars in _assignments(range(1, phi.num_vars + 1)):
        if not phi.evaluate(true_vars):
            return true_vars
    return None


def brute_valid(phi: Formula) -> bool:
    return brute_falsifying(phi) is None


def brute_forall_exists(phi: Formula) -> bool:
    """Validity of ``forall universal exists rest: phi``."""
    if phi.universal is None:
        raise FormulaError("formula has no quantifier prefix")
    return all(
        any(phi.evaluate(outer | inner) for inner in _assignments(phi.existential))
        for outer in _assignments(phi.universal)
    )
