"""Command-line entry point: ``reactsys <command> ...``.

Exit codes: 0 completed, 1 solver failure, 2 usage error, 3 parse error,
4 capability limit, 5 internal re-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .. import dynamics, polytime
from ..core import classify, result
from ..errors import (
    CapabilityError,
    ParseError,
    ReactsysError,
    RecheckError,
    SolverError,
    UsageError,
)
from ..logic import decide, encode_problem, problem_from_dimacs, solve_brute, solve_external
from ..reductions import CONSTRUCTIONS, reduce
from .dot import graph_dot
from .report import Report
from .textio import emit_system, parse_formula, parse_state, parse_system

EXIT_OK, EXIT_SOLVER, EXIT_USAGE, EXIT_PARSE, EXIT_CAPABILITY, EXIT_RECHECK = 0, 1, 2, 3, 4, 5

ANALYZE_MODES = {
    "fixpoints": "exists-fixpoint",
    "attractors": "exists-attractor",
    "fixge": "exists-fixge",
    "attractor": "given-state-attractor",
}

# compare problem -> (brute-force mode, logic mode)
COMPARE_MODES = {
    "res-eq": ("res-eq", "res-eq-counterexample"),
    "common-fixpoint": ("common-fixpoint", "common-fixpoint"),
    "common-attractor": ("common-attractor", "common-attractor"),
    "common-fixge": ("common-fixge", "common-fixge"),
    "shared-fixpoints": ("share-all-fixpoints", "shared-fixpoints-counterexample"),
    "shared-attractors": ("share-all-attractors", "shared-attractors"),
    "shared-fixge": ("share-all-fixge", "shared-fixge"),
}

FIGURE_ENTITY_CAP = 6


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_system(path: str):
    try:
        return parse_system(_read(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _logic(args, mode, a, b=None, state=None):
    p = encode_problem(mode, a, b, state, args.reach)
    sol = solve_external(p, args.solver) if args.solver else solve_brute(p, args.cap)
    return decide(p, sol)


def _figures(args, rs, rep: Report, highlight=(), summary=None):
    if not getattr(args, "figures", None):
        return
    from . import figures

    out = Path(args.figures)
    out.mkdir(parents=True, exist_ok=True)
    if rs.size <= FIGURE_ENTITY_CAP:
        path = figures.transition_figure(rs, dynamics.transition_graph(rs), out / f"{rs.name}-graph.png", highlight)
        rep.add("figure", path)
    if summary:
        path = figures.summary_figure(summary, out / f"{rs.name}-summary.png", f"{rs.name}: {args.command}")
        rep.add("figure", path)


def cmd_analyze(args) -> Report:
    rs = _load_system(args.system)
    rep = Report("analyze")
    rep.add("system", rs.name)
    rep.add("problem", args.problem)
    rep.add("class", classify(rs))
    state = None
    if args.problem == "attractor":
        if args.state is None:
            raise UsageError("--problem attractor needs --state")
        state = parse_state(rs, args.state)
        rep.add("state", rs.format(state))
    elif args.state is not None:
        raise UsageError("--state only applies to --problem attractor")
    rep.add("mode", args.mode)
    if args.mode == "brute":
        rep.add("cap", args.cap if args.cap is not None else dynamics.DEFAULT_CAP)
        fp = dynamics.enumerate_fixed_points(rs, args.cap, args.workers)
        if args.problem == "attractor":
            pre = [u for u in dynamics.preimages(rs, state, args.cap) if u != state]
            rep.verdict = result(rs, state) == state and bool(pre)
            rep.add("fixed", "yes" if result(rs, state) == state else "no")
            if rep.verdict:
                rep.add("witness-preimage", rs.format(pre[0]))
        else:
            chosen = {"fixpoints": fp.fixed_points, "attractors": fp.attractors, "fixge": fp.non_attractors}
            rep.verdict = bool(chosen[args.problem])
        rep.add_states("fixed-points", rs, fp.fixed_points)
        rep.add_states("attractors", rs, fp.attractors)
        rep.add_states("non-attractors", rs, fp.non_attractors)
        _figures(args, rs, rep, fp.fixed_points, [
            ("fixed points", len(fp.fixed_points)),
            ("attractors", len(fp.attractors)),
            ("not attractors", len(fp.non_attractors)),
        ])
        return rep
    d = _logic(args, ANALYZE_MODES[args.problem], rs, state=state)
    rep.add("encoding", d.mode)
    rep.verdict = d.answer
    for name, st in d.states.items():
        rep.add(f"witness-{name}", rs.format(st))
    _figures(args, rs, rep, [d.state] if d.state is not None else ())
    return rep


def cmd_compare(args) -> Report:
    a, b = _load_system(args.a), _load_system(args.b)
    rep = Report("compare")
    rep.add("systems", f"{a.name} {b.name}")
    rep.add("problem", args.problem)
    brute_mode, logic_mode = COMPARE_MODES[args.problem]
    mode = args.mode
    if mode == "auto":
        mode = "brute"
        if args.problem == "res-eq":
            ca, cb = classify(a), classify(b)
            if ca.is_inhibitorless and cb.is_inhibitorless:
                mode = "ptime-inhibitorless"
            elif ca.is_reactantless and cb.is_reactantless:
                mode = "ptime-reactantless"
    rep.add("mode", mode)
    if mode == "ptime-inhibitorless":
        rep.verdict = polytime.res_eq_inhibitorless(a, b)
    elif mode == "ptime-reactantless":
        rep.verdict = polytime.res_eq_reactantless(a, b)
    elif mode == "brute":
        rep.add("cap", args.cap if args.cap is not None else dynamics.DEFAULT_CAP)
        v = dynamics.shared_analysis(a, b, brute_mode, args.cap, args.workers)
        rep.verdict = v.answer
        if v.state is not None:
            rep.add("witness" if args.problem.startswith("common") else "counterexample", a.format(v.state))
    else:
        d = _logic(args, logic_mode, a, b)
        rep.add("encoding", d.mode)
        rep.verdict = d.answer
        key = "witness" if d.answer else "counterexample"
        for name, st in d.states.items():
            rep.add(f"{key}-{name}", a.format(st))
    return rep


def cmd_bijective(args) -> Report:
    rs = _load_system(args.system)
    rep = Report("bijective")
    rep.add("system", rs.name)
    cls = classify(rs)
    rep.add("class", cls)
    if cls.is_inhibitorless:
        rep.add("method", "three-condition")
        v = polytime.bijective_inhibitorless(rs)
    elif cls.is_reactantless:
        rep.add("method", "complement-conjugate")
        v = polytime.bijective_reactantless(rs)
    else:
        rep.add("method", "brute")
        table = dynamics.result_table(rs, args.cap)
        ok = len(set(table.tolist())) == table.size
        v = polytime.BijectivityVerdict(ok, None, "" if ok else "two states share an image")
    rep.verdict = v.bijective
    if not v.bijective:
        if v.failed_condition is not None:
            rep.add("failed-condition", v.failed_condition)
        rep.add("reason", v.reason)
    return rep


def cmd_lfp(args) -> Report:
    rs = _load_system(args.system)
    lfp, lsteps = polytime.lfp_with_steps(rs)
    gfp, gsteps = polytime.gfp_with_steps(rs)
    rep = Report("lfp", verdict=True)
    rep.add("system", rs.name)
    rep.add("lfp", rs.format(lfp))
    rep.add("lfp-steps", lsteps)
    rep.add("gfp", rs.format(gfp))
    rep.add("gfp-steps", gsteps)
    return rep


def cmd_orbit(args) -> Report:
    rs = _load_system(args.system)
    start = parse_state(rs, args.init)
    o = dynamics.orbit(rs, start, args.max_steps)
    rep = Report("orbit")
    rep.add("system", rs.name)
    rep.add("sequence", " -> ".join(rs.format(s) for s in o.sequence))
    if o.truncated:
        rep.add("truncated", f"after {args.max_steps} steps")
    else:
        rep.add("tail", o.tail_length)
        rep.add("cycle", o.cycle_length)
    _figures(args, rs, rep, o.sequence)
    return rep


def cmd_graph(args) -> Report:
    rs = _load_system(args.system)
    restrict = parse_state(rs, args.restrict) if args.restrict is not None else None
    text = graph_dot(rs, restrict, args.force, args.cap)
    rep = Report("graph")
    rep.add("system", rs.name)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        rep.add("wrote", args.output)
    _figures(args, rs, rep)
    return rep


def cmd_reduce(args) -> Report:
    phi = parse_formula(_read(args.formula))
    out = reduce(args.construction, phi, args.variant)
    target = Path(args.output)
    paths = [target]
    if out.b is not None:
        paths.append(target.with_name(f"{target.stem}-B{target.suffix}"))
    for rs, path in zip(out.systems, paths):
        path.write_text(emit_system(rs), encoding="utf-8")
    manifest = {
        "construction": out.construction,
        "target_problem": out.target_problem,
        "also": list(out.also),
        "formula_side": out.formula_side,
        "systems": [p.name for p in paths],
        "distinguished_state": (
            None if out.distinguished_state is None else out.a.entities.members(out.distinguished_state)
        ),
        "decoder": {str(v): name for v, name in sorted(out.decoder.items())},
        "entities": len(out.a.entities),
        "reactions": [len(rs.reactions) for rs in out.systems],
    }
    mpath = target.with_name(f"{target.stem}.manifest.json")
    mpath.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    rep = Report("reduce")
    rep.add("construction", out.construction)
    rep.add("target-problem", out.target_problem)
    for p in paths + [mpath]:
        rep.add("wrote", p)
    return rep


def cmd_solve(args) -> Report:
    p = problem_from_dimacs(_read(args.file))
    sol = solve_external(p, args.solver) if args.solver else solve_brute(p, args.cap)
    if p.kind == "cnf":
        print("s SATISFIABLE" if sol.satisfiable else "s UNSATISFIABLE")
        if sol.model is not None:
            lits = [v if sol.model[v] else -v for v in range(1, p.num_vars + 1)]
            print("v " + " ".join(map(str, lits + [0])))
    else:
        print(f"s cnf {int(sol.satisfiable)} {p.num_vars} {len(p.clauses)}")
        if sol.model is not None:
            for v in sorted(sol.model):
                print(f"V {v if sol.model[v] else -v} 0")
    rep = Report("solve", verdict=sol.satisfiable)
    rep.add("format", "qdimacs" if p.kind == "qbf" else "dimacs")
    return rep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="reactsys", description="Reaction-system analysis.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, figures=False, logic=False):
        p.add_argument("--cap", type=int, default=None, help="state-space / search-size limit")
        p.add_argument("--workers", type=int, default=1, help="threads for whole-space tables")
        if logic:
            p.add_argument("--solver", default=None, help="external solver command; {input} is the file path")
            p.add_argument("--reach", choices=("direct", "result"), default="direct",
                           help="how U != T is encoded in reachability")
        if figures:
            p.add_argument("--figures", metavar="DIR", default=None, help="also write PNG figures to DIR")

    p = sub.add_parser("analyze", help="fixed points, attractors, non-attractor fixed points")
    p.add_argument("system")
    p.add_argument("--problem", choices=tuple(ANALYZE_MODES), default="fixpoints")
    p.add_argument("--state", default=None, help="state for --problem attractor, e.g. '{a,b}'")
    p.add_argument("--mode", choices=("brute", "sat", "qbf"), default="brute")
    common(p, figures=True, logic=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="two-system problems")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--problem", choices=tuple(COMPARE_MODES), default="res-eq")
    p.add_argument("--mode", choices=("auto", "brute", "sat", "qbf"), default="auto")
    common(p, logic=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bijective", help="is the result function a bijection")
    p.add_argument("system")
    common(p)
    p.set_defaults(func=cmd_bijective)

    p = sub.add_parser("lfp", help="least and greatest fixed points of an inhibitorless system")
    p.add_argument("system")
    p.set_defaults(func=cmd_lfp)

    p = sub.add_parser("orbit", help="iterate the result function")
    p.add_argument("system")
    p.add_argument("--init", required=True, help="start state, e.g. '{a,b}' or '{}'")
    p.add_argument("--max-steps", type=int, default=1000)
    p.add_argument("--figures", metavar="DIR", default=None)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("graph", help="transition graph as DOT")
    p.add_argument("system")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--restrict", default=None, help="only states inside this entity set")
    p.add_argument("--force", action="store_true", help="allow more than 256 nodes")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--figures", metavar="DIR", default=None)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("reduce", help="compile a formula into a gadget")
    p.add_argument("construction", choices=tuple(CONSTRUCTIONS))
    p.add_argument("formula")
    p.add_argument("--variant", default=None)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="decide a DIMACS CNF or a forall-exists QDIMACS file")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--solver", default=None)
    p.set_defaults(func=cmd_solve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        rep = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapabilityError as exc:
        print(f"capability limit: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except RecheckError as exc:
        print(f"internal re-check failure: {exc}", file=sys.stderr)
        return EXIT_RECHECK
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (UsageError, ReactsysError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep.elapsed = time.perf_counter() - start
    sys.stdout.write(rep.render())
    return EXIT_OK
