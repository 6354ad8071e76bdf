import itertools
import random
import shutil
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_answer, random_system
from reactsys.core import ReactionSystem, result
from reactsys.errors import CapabilityError, ParseError, RecheckError, SolverError, UsageError
from reactsys.formula import Formula, brute_forall_exists
from reactsys.logic import (
    CDCLSolver,
    MODES,
    decide,
    emit_dimacs,
    encode_problem,
    encode_result_map,
    parse_dimacs,
    parse_solver_output,
    problem_from_dimacs,
    recheck,
    solve_brute,
    solve_cnf,
    solve_external,
    solve_forall_exists,
    solve_problem,
)
from reactsys.logic.encode import TWO_SYSTEM_MODES
from reactsys.logic.solve import Solution
from reactsys.reductions import reduce_validity_to_res_eq

CONST = ReactionSystem.build(["p"], [([], [], ["p"])])


def identity(names):
    return ReactionSystem.build(names, [([x], [], [x]) for x in names])


def brute_cnf(n, clauses, fixed=()):
    for bits in itertools.product((False, True), repeat=n):
        val = dict(zip(range(1, n + 1), bits))
        if all(val[abs(l)] == (l > 0) for l in fixed) and all(any(val[abs(l)] == (l > 0) for l in c) for c in clauses):
            return val
    return None


def random_cnf(rng, n, m, width=3):
    return [[v if rng.random() < 0.5 else -v for v in rng.sample(range(1, n + 1), rng.randint(1, min(width, n)))]
            for _ in range(m)]


def models_of(clauses, n, fixed):
    """All assignments to vars 1..n extending ``fixed`` that satisfy ``clauses``."""
    free = [v for v in range(1, n + 1) if v not in fixed]
    for bits in itertools.product((False, True), repeat=len(free)):
        val = {**fixed, **dict(zip(free, bits))}
        if all(any(val[abs(l)] == (l > 0) for l in c) for c in clauses):
            yield val


class TestSat:
    def test_trivial(self):
        assert solve_cnf(0, []) == [False]
        assert solve_cnf(1, [[1, -1]]) is not None
        assert solve_cnf(1, [[1], [-1]]) is None
        assert solve_cnf(2, [[]]) is None

    def test_pigeonhole_unsat(self):
        # 4 pigeons, 3 holes
        var = lambda p, h: p * 3 + h + 1  # noqa: E731
        clauses = [[var(p, h) for h in range(3)] for p in range(4)]
        clauses += [[-var(p, h), -var(q, h)] for h in range(3) for p in range(4) for q in range(p + 1, 4)]
        assert solve_cnf(12, clauses) is None

    @settings(max_examples=300)
    @given(st.integers(1, 9), st.integers(0, 40), st.integers(0, 2**32 - 1))
    def test_against_brute_force(self, n, m, seed):
        rng = random.Random(seed)
        clauses = random_cnf(rng, n, m)
        model = solve_cnf(n, clauses)
        assert (model is None) == (brute_cnf(n, clauses) is None)
        if model is not None:
            assert all(any(model[abs(l)] == (l > 0) for l in c) for c in clauses)

    @settings(max_examples=150)
    @given(st.integers(2, 8), st.integers(0, 2**32 - 1))
    def test_incremental_assumptions(self, n, seed):
        rng = random.Random(seed)
        clauses = random_cnf(rng, n, rng.randint(1, 4 * n))
        s = CDCLSolver(n, clauses)
        for _ in range(5):
            assumptions = [v if rng.random() < 0.5 else -v for v in rng.sample(range(1, n + 1), rng.randint(0, n))]
            model = s.solve(assumptions)
            assert (model is None) == (brute_cnf(n, clauses, assumptions) is None)
            if model is not None:
                assert all(model[abs(l)] == (l > 0) for l in assumptions)


class TestQbf:
    def test_examples(self):
        # forall x1 exists x2: (x1 or x2) and (-x1 or -x2)
        assert solve_forall_exists(2, [[1, 2], [-1, -2]], [1]).value
        res = solve_forall_exists(2, [[1]], [1])
        assert not res.value and res.counterexample == {1: False}
        assert solve_forall_exists(1, [], [1]).value

    @settings(max_examples=200)
    @given(st.integers(2, 6), st.integers(0, 2**32 - 1))
    def test_against_brute_force(self, n, seed):
        rng = random.Random(seed)
        clauses = random_cnf(rng, n, rng.randint(1, 3 * n))
        uni = sorted(rng.sample(range(1, n + 1), rng.randint(1, n - 1)))
        res = solve_forall_exists(n, clauses, uni)
        phi = Formula("cnf", n, [tuple(c) for c in clauses], frozenset(uni))
        assert res.value == brute_forall_exists(phi)
        if not res.value:
            assert not any(models_of(clauses, n, res.counterexample))


class TestResultMap:
    def models(self, rs):
        n, k = rs.size, len(rs.reactions)
        t, r, e = list(range(1, n + 1)), list(range(n + 1, 2 * n + 1)), list(range(2 * n + 1, 2 * n + k + 1))
        clauses = encode_result_map(rs, t, r, e)
        out = {}
        for state in range(1 << n):
            fixed = {v: bool(state >> i & 1) for i, v in enumerate(t)}
            out[state] = [sum(1 << i for i, v in enumerate(r) if m[v]) for m in models_of(clauses, 2 * n + k, fixed)]
        return out

    def test_examples(self):
        assert self.models(CONST) == {0: [1], 1: [1]}
        rs = ReactionSystem.build(["a", "b", "c"], [(["a"], ["b"], ["c"])])
        got = self.models(rs)
        assert got[rs.state(["a"])] == [rs.state(["c"])]
        assert got[rs.state(["a", "b"])] == [0]

    def test_size_mismatch(self):
        with pytest.raises(UsageError):
            encode_result_map(CONST, [1], [2], [])

    @settings(max_examples=60)
    @given(st.integers(1, 6), st.integers(0, 2**32 - 1))
    def test_unique_consistent_result(self, n, seed):
        rng = random.Random(seed)
        rs = random_system(rng, n, rng.randint(0, 4))
        got = self.models(rs)
        assert all(got[t] == [result(rs, t)] for t in range(1 << n))


def random_pair(rng, mode, n):
    a = random_system(rng, n, rng.randint(0, 6), density=rng.choice((0.2, 0.35)))
    if mode not in TWO_SYSTEM_MODES:
        return a, None
    if rng.random() < 0.3:
        return a, a.with_reactions(a.reactions[::-1])
    return a, random_system(rng, n, rng.randint(0, 6), name="B")


class TestEncodings:
    def test_spec_examples(self):
        d = solve_problem("exists-fixpoint", CONST)
        assert d.answer and d.state == 1
        out = reduce_validity_to_res_eq(Formula("dnf", 2, [(1, 2)]))
        d = solve_problem("res-eq-counterexample", out.a, out.b)
        assert not d.answer and d.state == 0
        d = solve_problem("exists-fixge", identity(["a"]))
        assert d.answer and d.solution.satisfiable is False

    def test_layout(self):
        a = random_system(random.Random(1), 4, 3)
        p = encode_problem("common-attractor", a, a)
        order = list(p.groups)
        assert order[:3] == ["t", "ua", "ub"]
        assert order.index("e:A:t") < order.index("r:A:t") and order[-1] == "aux"
        assert p.primary == list(range(1, 13))
        flat = [v for g in p.groups.values() for v in g]
        assert sorted(flat) == list(range(1, p.num_vars + 1))
        assert all(1 <= abs(l) <= p.num_vars for c in p.clauses for l in c)

    def test_usage_errors(self):
        with pytest.raises(UsageError):
            encode_problem("bogus", CONST)
        with pytest.raises(UsageError):
            encode_problem("common-fixpoint", CONST)
        with pytest.raises(UsageError):
            encode_problem("exists-fixpoint", CONST, CONST)
        with pytest.raises(UsageError):
            encode_problem("given-state-attractor", CONST)
        with pytest.raises(UsageError):
            encode_problem("exists-fixpoint", CONST, given_state=0)
        with pytest.raises(UsageError):
            encode_problem("exists-fixpoint", CONST, reach="other")

    @pytest.mark.parametrize("mode", MODES)
    @pytest.mark.parametrize("reach", ["direct", "result"])
    def test_against_enumeration(self, mode, reach):
        rng = random.Random(hash((mode, reach)) & 0xFFFF)
        for _ in range(40):
            n = rng.randint(1, 5)
            a, b = random_pair(rng, mode, n)
            given_state = rng.getrandbits(n) if mode == "given-state-attractor" else None
            d = solve_problem(mode, a, b, given_state, reach=reach)
            assert d.answer == naive_answer(mode, a, b, given_state), (mode, reach)

    def test_cnf_witnesses_decode(self):
        rng = random.Random(4)
        for _ in range(30):
            a = random_system(rng, 5, 6)
            d = solve_problem("exists-attractor", a)
            if d.answer:
                t, u = d.states["t"], d.states["u"]
                assert u != t and result(a, u) == t == result(a, t)

    def test_counterexample_of_false_qbf_is_a_fixge(self):
        d = solve_problem("exists-fixge", identity(["a", "b"]))
        t = d.state
        assert d.answer and result(identity(["a", "b"]), t) == t


class TestBruteSolve:
    def test_trivial_problems(self):
        p = problem_from_dimacs("p cnf 0 0\n")
        assert solve_brute(p) == Solution(True, {})
        p = problem_from_dimacs("p cnf 1 1\n1 -1 0\n")
        assert solve_brute(p).satisfiable

    def test_caps(self):
        big = identity([f"e{i}" for i in range(41)])
        with pytest.raises(CapabilityError):
            solve_brute(encode_problem("exists-fixpoint", big))
        solve_brute(encode_problem("exists-fixpoint", identity(["a", "b"])), cap=2)
        with pytest.raises(CapabilityError):
            solve_brute(encode_problem("exists-fixpoint", identity(["a", "b", "c"])), cap=2)
        with pytest.raises(CapabilityError):
            solve_brute(encode_problem("exists-fixge", identity(["a", "b", "c"])), cap=2)

    def test_cap_counts_search_variables_only(self):
        # 30 entities: 30 state variables, many more gate variables
        rs = random_system(random.Random(2), 30, 20)
        p = encode_problem("exists-fixpoint", rs)
        assert p.num_vars > 40
        d = decide(p, solve_brute(p))
        assert d.answer == (d.state is not None)

    def test_recheck_rejects_forged_witness(self):
        p = encode_problem("exists-fixpoint", CONST)
        with pytest.raises(RecheckError):
            recheck(p, True, {"t": 0})
        forged = {v: False for v in range(1, p.num_vars + 1)}
        with pytest.raises(RecheckError):
            decide(p, Solution(True, forged))


class TestDimacs:
    def test_cnf_round_trip(self):
        rs = random_system(random.Random(3), 4, 5)
        p = encode_problem("exists-fixpoint", rs)
        text = emit_dimacs(p)
        assert text.startswith("c mode exists-fixpoint\nc group t 1-4\n")
        parsed = parse_dimacs(text)
        assert parsed.num_vars == p.num_vars and [list(c) for c in parsed.clauses] == p.clauses
        assert parsed.universal is None

    def test_qdimacs_round_trip(self):
        p = encode_problem("exists-fixge", identity(["a", "b"]))
        text = emit_dimacs(p)
        assert "\na 1 2 0\ne " in text
        q = problem_from_dimacs(text)
        assert q.kind == "qbf" and q.universal == p.universal
        assert solve_brute(q).satisfiable == solve_brute(p).satisfiable

    def test_layout_survives_the_file(self):
        a = random_system(random.Random(8), 4, 4)
        p = encode_problem("shared-attractors", a, a.with_reactions(a.reactions[:2]))
        q = problem_from_dimacs(emit_dimacs(p))
        assert q.state_groups == p.state_groups and q.primary == p.primary
        assert q.definitional == p.definitional
        small = encode_problem("exists-fixge", identity(["a", "b"]))
        plain = problem_from_dimacs("\n".join(l for l in emit_dimacs(small).splitlines() if not l.startswith("c")))
        assert plain.state_groups == () and not any(plain.definitional)
        assert solve_brute(plain).satisfiable == solve_brute(small).satisfiable is False

    def test_parse_errors(self):
        with pytest.raises(ParseError, match="exists-forall"):
            parse_dimacs("p cnf 2 1\ne 1 0\na 2 0\n1 2 0\n")
        with pytest.raises(ParseError, match="alternation"):
            parse_dimacs("p cnf 3 1\na 1 0\ne 2 0\na 3 0\n1 0\n")
        with pytest.raises(ParseError, match="announces"):
            parse_dimacs("p cnf 1 2\n1 0\n")
        with pytest.raises(ParseError) as err:
            parse_dimacs("p cnf 1 1\n1 x 0\n")
        assert (err.value.line, err.value.column) == (2, 3)
        with pytest.raises(ParseError):
            parse_dimacs("p cnf 1 1\n2 0\n")
        with pytest.raises(ParseError):
            parse_dimacs("p dnf 1 1\n1 0\n")
        with pytest.raises(ParseError):
            parse_dimacs("1 0\n")


SHIM = f"{sys.executable} -m reactsys solve {{input}}"


class TestExternal:
    @pytest.mark.parametrize("mode", MODES)
    def test_shim_matches_internal(self, mode):
        rng = random.Random(hash(mode) & 0xFFFF)
        for _ in range(3):
            a, b = random_pair(rng, mode, rng.randint(1, 4))
            given_state = rng.getrandbits(a.size) if mode == "given-state-attractor" else None
            p = encode_problem(mode, a, b, given_state)
            ext = decide(p, solve_external(p, SHIM, timeout=60))
            assert ext.answer == decide(p, solve_brute(p)).answer == naive_answer(mode, a, b, given_state)

    def test_path_appended_without_placeholder(self):
        p = encode_problem("exists-fixpoint", CONST)
        sol = solve_external(p, f"{sys.executable} -m reactsys solve")
        assert sol.satisfiable

    def test_polarity_for_counterexample_modes(self):
        a = identity(["a"])
        p = encode_problem("res-eq-counterexample", a, a)
        assert decide(p, parse_solver_output("s UNSATISFIABLE\n", p)).answer
        p = encode_problem("exists-fixge", a)
        assert decide(p, parse_solver_output("s cnf 0\n", p)).answer
        assert not decide(p, parse_solver_output("s cnf 1\n", p)).answer

    def test_malformed_output(self):
        p = encode_problem("exists-fixpoint", CONST)
        with pytest.raises(SolverError):
            parse_solver_output("nothing here\n", p)
        with pytest.raises(SolverError):
            parse_solver_output("s MAYBE\n", p)
        with pytest.raises(SolverError):
            parse_solver_output("s SATISFIABLE\nv 1 q 0\n", p)
        with pytest.raises(SolverError):
            parse_solver_output("s SATISFIABLE\n", p)

    def test_failing_command(self):
        p = encode_problem("exists-fixpoint", CONST)
        with pytest.raises(SolverError):
            solve_external(p, "reactsys-no-such-binary-xyz")
        false = shutil.which("false")
        if false:
            with pytest.raises(SolverError, match="status 1"):
                solve_external(p, false)
