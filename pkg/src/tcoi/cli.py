"""Command-line front end. Every command prints JSON lines on stdout.

Exit codes: 0 success, 1 a verification found a counterexample, 2 parse error,
3 no TC-ID set exists, 4 precondition violation (isolated vertex, bad
parameters, non-tree input and so on).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .bounds import evaluate_bounds
from .errors import (
    InfeasibleError,
    InvalidInputError,
    IsolatedVertexError,
    NotATreeError,
    ParseError,
    PreconditionError,
    TcoiError,
)
from .families import (
    BuildScript,
    F1Params,
    F2Params,
    build_qr,
    f1_script,
    f2_script,
    verify_f1,
    verify_f2,
)
from .graph import Graph
from .io import read_graph, read_graphs, to_dot, to_graph6, write_graph
from .reduction import build_gt, decision_transfer, verify_reduction
from .solvers import Method, Problem, solve_constrained, tree_gamma_t, tree_gamma_tcoi
from .trees import (
    Recognizer,
    TreeOpSequence,
    generate_family_f,
    is_in_t_gamma_t,
    verify_characterization,
)

SCHEMA_VERSION = 1
WORKERS_ENV = "TCOI_WORKERS"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_PRECONDITION = 4


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (ParseError, OSError)):
        return EXIT_PARSE
    if isinstance(exc, InfeasibleError):
        return EXIT_INFEASIBLE
    return EXIT_PRECONDITION


def _error_kind(exc: BaseException) -> str:
    for cls, name in (
        (ParseError, "parse"), (InfeasibleError, "infeasible"),
        (IsolatedVertexError, "isolated_vertex"), (NotATreeError, "not_a_tree"),
        (PreconditionError, "precondition"), (InvalidInputError, "invalid_input"),
        (OSError, "io"),
    ):
        if isinstance(exc, cls):
            return name
    return "error"


def _emit(out, command: str, **fields) -> None:
    record = {"schema_version": SCHEMA_VERSION, "command": command, **fields}
    out.write(json.dumps(record) + "\n")


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidInputError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def _map(fn, items: list) -> list:
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _method(args) -> Method | None:
    if getattr(args, "oracle", False):
        return Method.BRUTE_FORCE
    return Method(args.method) if getattr(args, "method", None) else None


def _graph_fields(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "graph6": to_graph6(g)}


# --- compute / bounds --------------------------------------------------------------------------


def _compute_one(job: tuple[Graph, Method | None]) -> tuple[dict, int]:
    g, method = job
    results, errors, code = {}, {}, EXIT_OK
    for problem in Problem:
        try:
            res = solve_constrained(g, problem, method=method)
        except TcoiError as exc:
            errors[problem.value] = {"kind": _error_kind(exc), "message": str(exc)}
            code = max(code, exit_code_for(exc))
            continue
        results[problem.value] = {
            "value": res.value,
            "witness": sorted(res.witness),
            "method": res.method.value,
            "nodes": res.nodes_explored,
        }
    return {**_graph_fields(g), "results": results, "errors": errors}, code


def _bounds_one(job: tuple[Graph, Method | None]) -> tuple[dict, int]:
    g, method = job
    try:
        rep = evaluate_bounds(g, method)
    except TcoiError as exc:
        err = {"kind": _error_kind(exc), "message": str(exc)}
        return {**_graph_fields(g), "error": err}, exit_code_for(exc)
    return {**_graph_fields(g), **rep.to_dict()}, EXIT_OK


def _batch(args, out, command: str, fn) -> int:
    graphs = [g for path in args.inputs for g in read_graphs(path)]
    method = _method(args)
    code = EXIT_OK
    for i, (record, rc) in enumerate(_map(fn, [(g, method) for g in graphs])):
        _emit(out, command, index=i, **record)
        code = max(code, rc)
    return code


def cmd_compute(args, out) -> int:
    return _batch(args, out, "compute", _compute_one)


def cmd_bounds(args, out) -> int:
    return _batch(args, out, "bounds", _bounds_one)


# --- gen ---------------------------------------------------------------------------------------


def _int_list(text: str | None) -> tuple[int, ...]:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInputError(f"expected comma-separated integers, got {text!r}") from None


def _step_b(entries: list[str] | None) -> tuple[tuple[int, ...], ...]:
    out = []
    for entry in entries or []:
        try:
            out.append(tuple(int(x) for x in entry.split(":")))
        except ValueError:
            raise InvalidInputError(f"path-inflation entries look like i:k or i:k:j, got {entry!r}") from None
    return tuple(out)


def _write_outputs(args, g: Graph, script_text: str | None) -> dict:
    written = {}
    if getattr(args, "out", None):
        write_graph(g, args.out)
        written["graph_file"] = str(args.out)
    if script_text is not None and getattr(args, "script_out", None):
        Path(args.script_out).write_text(script_text)
        written["script_file"] = str(args.script_out)
    if getattr(args, "dot", None):
        Path(args.dot).write_text(to_dot(g))
        written["dot_file"] = str(args.dot)
    return written


def cmd_gen(args, out) -> int:
    method = _method(args)
    if args.family == "f":
        members = list(generate_family_f(args.max_n))
        if args.out:
            Path(args.out).write_text("".join(to_graph6(m.tree) + "\n" for m in members))
        for i, m in enumerate(members):
            extra = {"in_t_gamma_t": is_in_t_gamma_t(m.tree)} if args.verify else {}
            _emit(out, "gen", family="f", index=i, **_graph_fields(m.tree),
                  script=m.script.dumps(), **extra)
        return EXIT_OK
    if args.family == "qr":
        g = build_qr(args.r)
        _emit(out, "gen", family="qr", r=args.r, **_graph_fields(g), **_write_outputs(args, g, None))
        return EXIT_OK
    if args.family == "f1":
        p = F1Params(args.n, args.a, args.b, _int_list(args.k), _int_list(args.q),
                     _int_list(args.t_outer), args.t_center)
        script, verify = f1_script(p), verify_f1
        params = {"n": p.n, "a": p.a, "b": p.b, "k": list(p.k), "q": list(p.q),
                  "t_outer": list(p.t_outer), "t_center": p.t_center}
    else:
        p = F2Params(_int_list(args.t), _step_b(args.step_b), _int_list(args.c) or (1, 1, 1))
        script, verify = f2_script(p), verify_f2
        params = {"t": list(p.t), "step_b": [list(s) for s in p.step_b], "c": list(p.c)}
    g = script.graph
    record = {"family": args.family, "params": params, **_graph_fields(g),
              "script": script.dumps(), **_write_outputs(args, g, script.dumps())}
    code = EXIT_OK
    if args.verify:
        check = verify(p, method)
        record["verify"] = check.to_dict()
        if not check.holds:
            code = EXIT_VERIFY_FAILED
    _emit(out, "gen", **record)
    return code


# --- reduce ------------------------------------------------------------------------------------


def cmd_reduce(args, out) -> int:
    g = read_graph(args.input)
    gt, _ = build_gt(g)
    record = {"n": g.n, "m": g.m, "reduced_n": gt.n, "reduced_m": gt.m,
              "reduced_graph6": to_graph6(gt), **_write_outputs(args, gt, None)}
    code = EXIT_OK
    method = _method(args)
    if args.verify or args.k is not None:
        check = verify_reduction(g, method)
        record["verify"] = {"gamma_tcoi_reduced": check.lhs, "three_n_minus_beta": check.rhs,
                            "holds": check.holds}
        if not check.holds:
            code = EXIT_VERIFY_FAILED
    if args.k is not None:
        j, equivalent = decision_transfer(g, args.k, method)
        record["decision"] = {"k": args.k, "j": j, "equivalent": equivalent}
        if not equivalent:
            code = EXIT_VERIFY_FAILED
    _emit(out, "reduce", **record)
    return code


# --- trees -------------------------------------------------------------------------------------


def cmd_trees(args, out) -> int:
    if args.trees_command == "verify-characterization":
        rep = verify_characterization(args.max_n)
        _emit(out, "trees", subcommand="verify-characterization", **rep.to_dict())
        return EXIT_OK if rep.ok else EXIT_VERIFY_FAILED
    t = read_graph(args.input)
    if args.trees_command == "check":
        member = is_in_t_gamma_t(t)
        _emit(out, "trees", subcommand="check", **_graph_fields(t),
              gamma_t=tree_gamma_t(t).value, gamma_tcoi=tree_gamma_tcoi(t).value,
              in_t_gamma_t=member)
        return EXIT_OK
    script = Recognizer().recognize(t)
    text = script.dumps() if script is not None else None
    written = {}
    if text is not None and args.script_out:
        Path(args.script_out).write_text(text)
        written["script_file"] = str(args.script_out)
    _emit(out, "trees", subcommand="recognize", **_graph_fields(t),
          member=script is not None, script=text, **written)
    return EXIT_OK


# --- replay ------------------------------------------------------------------------------------


def cmd_replay(args, out) -> int:
    text = Path(args.script).read_text()
    head = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    if head == "base P4":
        g, kind = TreeOpSequence.loads(text).replay(), "tree_ops"
    else:
        g, kind = BuildScript.loads(text).graph, "build_script"
    _emit(out, "replay", kind=kind, **_graph_fields(g), **_write_outputs(args, g, None))
    return EXIT_OK


# --- parser ------------------------------------------------------------------------------------


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--oracle", action="store_true", help="force the brute-force solver")
    p.add_argument("--method", choices=[m.value for m in Method],
                   help="solver to use (default: tree DP on trees, branch and bound otherwise)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tcoi",
        description="Exact total co-independent domination toolkit.",
        epilog=f"Set {WORKERS_ENV} to run batch commands on several processes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="gamma_t, gamma_t,coi, alpha and beta with witnesses")
    p.add_argument("inputs", nargs="+", type=Path, help="edge-list or graph6 files")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("bounds", help="audit the known inequalities on each input")
    p.add_argument("inputs", nargs="+", type=Path)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("gen", help="generate family members")
    gen = p.add_subparsers(dest="family", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="graph file (.g6 for graph6, else edge list)")
    common.add_argument("--dot", type=Path, help="also write a DOT file")
    common.add_argument("--script-out", type=Path, help="write the build script here")
    common.add_argument("--verify", action="store_true", help="check the family's claimed values")
    _add_solver_flags(common)

    f1 = gen.add_parser("f1", parents=[common], help="star-based family")
    f1.add_argument("--n", type=int, required=True)
    f1.add_argument("--a", type=int, required=True)
    f1.add_argument("--b", type=int, default=0)
    f1.add_argument("--k", help="comma-separated inflation sizes (b entries)")
    f1.add_argument("--q", help="comma-separated pendant counts on inflated paths")
    f1.add_argument("--t-outer", help="comma-separated pendant counts on plain paths")
    f1.add_argument("--t-center", type=int, default=0)
    f2 = gen.add_parser("f2", parents=[common], help="C6-based family")
    f2.add_argument("--t", default="0,0,0", help="pendant counts on v1,v2,v3")
    f2.add_argument("--step-b", action="append", metavar="I:K[:J]",
                    help="extra inflation of the v_I - v_J path (repeatable)")
    f2.add_argument("--c", help="inflation sizes of the three paths")
    qr = gen.add_parser("qr", parents=[common], help="caterpillar Q_r")
    qr.add_argument("--r", type=int, required=True)
    ff = gen.add_parser("f", parents=[common], help="all trees built from P4 by F1..F5")
    ff.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="build the gadget graph G_T")
    p.add_argument("input", type=Path)
    p.add_argument("--out", type=Path)
    p.add_argument("--dot", type=Path)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--k", type=int, help="check the decision transfer for this k")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("trees", help="tree characterization tools")
    tsub = p.add_subparsers(dest="trees_command", required=True)
    c = tsub.add_parser("check", help="is gamma_t,coi equal to gamma_t?")
    c.add_argument("input", type=Path)
    r = tsub.add_parser("recognize", help="find an F1..F5 build sequence")
    r.add_argument("input", type=Path)
    r.add_argument("--script-out", type=Path)
    v = tsub.add_parser("verify-characterization", help="exhaustive check over all trees")
    v.add_argument("--max-n", type=int, default=10)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("replay", help="rebuild a graph from a build or tree-op script")
    p.add_argument("script", type=Path)
    p.add_argument("--out", type=Path)
    p.add_argument("--dot", type=Path)
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (TcoiError, OSError) as exc:
        _emit(out, args.command, error={"kind": _error_kind(exc), "message": str(exc)})
        print(f"tcoi: {exc}", file=sys.stderr)
        return exit_code_for(exc)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
