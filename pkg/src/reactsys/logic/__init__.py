"""SAT/QBF encodings of the dynamics problems, with internal and external solving."""

from .dimacs import emit_dimacs, parse_dimacs, problem_from_dimacs
from .encode import CNF_MODES, MODES, QBF_MODES, EncodedProblem, decode_witness, encode_problem, encode_result_map
from .external import parse_solver_output, solve_external
from .qbf import solve_forall_exists
from .sat import CDCLSolver, solve_cnf
from .solve import Decision, Solution, decide, recheck, solve_brute, solve_problem

__all__ = [
    "CDCLSolver",
    "CNF_MODES",
    "Decision",
    "EncodedProblem",
    "MODES",
    "QBF_MODES",
    "Solution",
    "decide",
    "decode_witness",
    "emit_dimacs",
    "encode_problem",
    "encode_result_map",
    "parse_dimacs",
    "parse_solver_output",
    "problem_from_dimacs",
    "recheck",
    "solve_brute",
    "solve_cnf",
    "solve_external",
    "solve_forall_exists",
    "solve_problem",
]
