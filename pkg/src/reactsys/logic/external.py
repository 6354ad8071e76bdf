"""Run an external DIMACS / QDIMACS solver as a subprocess."""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile

from ..errors import SolverError
from .dimacs import emit_dimacs
from .encode import EncodedProblem
from .solve import Solution

# SAT-competition convention: 10 = SAT, 20 = UNSAT
_OK_CODES = (0, 10, 20)


def solve_external(p: EncodedProblem, command: str, timeout: float | None = None) -> Solution:
    """Write ``p`` to a temporary file and run ``command`` on it.

    ``command`` is a shell-style template; ``{input}`` is replaced by the file
    path, or the path is appended when the placeholder is absent.
    """
    suffix = ".qdimacs" if p.kind == "qbf" else ".cnf"
    fd, path = tempfile.mkstemp(suffix=suffix, prefix="reactsys-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(emit_dimacs(p))
        if "{input}" in command:
            argv = shlex.split(command.replace("{input}", shlex.quote(path)))
        else:
            argv = shlex.split(command) + [path]
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=timeout)
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise SolverError(f"could not run solver {argv[0]!r}: {exc}") from exc
    finally:
        os.unlink(path)
    output = proc.stdout + proc.stderr
    if proc.returncode not in _OK_CODES:
        raise SolverError(f"solver exited with status {proc.returncode}", output)
    return parse_solver_output(proc.stdout, p, output)


def parse_solver_output(stdout: str, p: EncodedProblem, context: str | None = None) -> Solution:
    status = None
    values: dict[int, bool] = {}
    for line in stdout.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "s" and len(parts) >= 2:
            word = parts[1].upper()
            if word in ("SATISFIABLE", "UNSATISFIABLE"):
                status = word == "SATISFIABLE"
            elif word == "CNF" and len(parts) >= 3 and parts[2] in ("0", "1"):
                status = parts[2] == "1"
            else:
                raise SolverError(f"unrecognised status line {line!r}", context or stdout)
        elif parts[0] in ("v", "V"):
            for tok in parts[1:]:
                try:
                    lit = int(tok)
                except ValueError:
                    raise SolverError(f"bad literal {tok!r} in value line", context or stdout) from None
                if lit:
                    values[abs(lit)] = lit > 0
    if status is None:
        raise SolverError("no 's' status line in solver output", context or stdout)
    if p.kind == "cnf":
        if not status:
            return Solution(False)
        if not values and p.num_vars:
            raise SolverError("solver reported SAT without a model ('v' lines)", context or stdout)
        return Solution(True, {v: values.get(v, False) for v in range(1, p.num_vars + 1)})
    if status:
        return Solution(True)
    uni = p.universal
    model = {v: values[v] for v in uni} if uni and all(v in values for v in uni) else None
    return Solution(False, model)
