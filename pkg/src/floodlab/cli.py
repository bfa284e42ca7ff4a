"""Command-line interface: machine-readable JSON on stdout, human summaries
on stderr.

Exit codes: 0 success, 1 negative decision, 2 input error, 3 budget
exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import generators, kernel, reductions, serialize, solver
from .core import FloodItError, InputError, validate_sequence


def _read_json(path):
    if path is None or path == "-":
        data = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            data = handle.read()
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise serialize.MalformedJSONError(f"invalid JSON: {exc}") from None


def _read_instance(args):
    obj = _read_json(getattr(args, "infile", None))
    instance, color_map = serialize.load_instance(obj)
    return instance, color_map


def _budget(args):
    ms = getattr(args, "budget_ms", None)
    states = getattr(args, "max_states", None)
    depth = getattr(args, "max_depth", None)
    if ms is None and states is None and depth is None:
        return None
    return solver.SearchBudget(
        max_depth=depth,
        max_expanded_states=states,
        time_limit=ms / 1000.0 if ms is not None else None)


def _add_instance_arg(p):
    p.add_argument("--in", dest="infile", default=None,
                   help="instance JSON file (default: stdin)")


def _add_budget_args(p):
    p.add_argument("--budget-ms", type=int, default=None)
    p.add_argument("--max-states", type=int, default=None)
    p.add_argument("--max-depth", type=int, default=None)


def _solution_payload(solution):
    return serialize.dump_solution(solution) if solution is not None else None


def cmd_solve(args):
    instance, _ = _read_instance(args)
    budget = _budget(args)
    if args.mode == "free":
        result = solver.solve_free_exact(instance, budget,
                                         prune_nonmerging=args.prune_nonmerging)
    else:
        pivot = args.pivot if args.pivot is not None else instance.pivot
        if pivot is None:
            raise InputError("fixed mode needs --pivot or an instance pivot")
        result = solver.solve_fixed_exact(instance, pivot, budget)
    payload = {
        "status": result.status,
        "value": result.value,
        "expanded": result.expanded,
        "lower": result.lower,
        "upper": result.upper,
        "solution": _solution_payload(result.solution),
    }
    code = 3 if result.status == "budget_exhausted" else 0
    return code, payload, f"{args.mode} solve: {result.status}, value={result.value}"


def cmd_decide(args):
    instance, _ = _read_instance(args)
    result = solver.decide_free_at_most(instance, args.k, _budget(args))
    payload = {
        "status": result.status,
        "k": args.k,
        "expanded": result.expanded,
        "solution": _solution_payload(result.solution),
    }
    code = {"yes": 0, "no": 1, "unknown": 3}[result.status]
    return code, payload, f"OPT_Free <= {args.k}: {result.status}"


def cmd_approx(args):
    instance, _ = _read_instance(args)
    solution = solver.approx_free(instance, _budget(args))
    payload = {"length": len(solution), "solution": _solution_payload(solution)}
    return 0, payload, f"approximate free solution of length {len(solution)}"


def cmd_convert(args):
    instance, _ = _read_instance(args)
    solution = serialize.load_solution(_read_json(args.solution))
    pivot = args.pivot if args.pivot is not None else instance.pivot
    if pivot is None:
        raise InputError("conversion needs --pivot or an instance pivot")
    converted = solver.free_to_fixed(instance, pivot, solution)
    projected = solver.project_subset_fixed(instance, pivot, converted)
    payload = {
        "subset_fixed": _solution_payload(converted),
        "fixed": _solution_payload(projected),
        "input_length": len(solution),
        "output_length": len(converted),
    }
    return 0, payload, (f"converted {len(solution)}-move free solution into "
                        f"{len(converted)} fixed moves")


def cmd_kernelize(args):
    instance, _ = _read_instance(args)
    result = kernel.kernelize(instance)
    part = kernel.twin_partition(result.kernel)
    c_max = len(set(result.kernel.coloring)) if result.kernel.vertex_count else 1
    payload = {
        "kernel": serialize.dump_instance(result.kernel),
        "trace": list(result.trace),
        "nd": part.nd,
        "c_max": c_max,
        "bound": part.nd * c_max * (part.nd + c_max - 1),
    }
    return 0, payload, (f"kernel: {instance.vertex_count} -> "
                        f"{result.kernel.vertex_count} vertices, "
                        f"{len(result.trace)} removals")


def cmd_twins(args):
    instance, _ = _read_instance(args)
    part = kernel.twin_partition(instance)
    payload = {
        "nd": part.nd,
        "classes": [list(c) for c in part.classes],
        "kinds": list(part.kinds),
    }
    return 0, payload, f"neighborhood diversity {part.nd}"


def cmd_reduce_mcsc(args):
    obj = _read_json(getattr(args, "infile", None))
    if not isinstance(obj, dict) or "universe" not in obj or "collections" not in obj:
        raise InputError("MCSC JSON needs 'universe' and 'collections'")
    mcsc = reductions.MCSCInstance(obj["universe"], tuple(
        tuple(frozenset(s) for s in coll) for coll in obj["collections"]))
    instance, layout = reductions.mcsc_to_floodit(mcsc, args.padding)
    payload = serialize.dump_instance(instance)
    payload["layout"] = layout.to_json()
    return 0, payload, (f"reduction instance: {instance.vertex_count} vertices, "
                        f"{instance.c_max} colors, target 2k={2 * layout.k}")


def cmd_tight_path(args):
    instance = reductions.tight_path(args.n)
    payload = serialize.dump_instance(instance)
    return 0, payload, f"tight path on {instance.vertex_count} vertices, pivot 0"


def cmd_find_witness(args):
    result = reductions.find_nonmonotone_witness(args.max_len)
    if not result.found:
        return 1, {"found": False}, "no non-monotone witness in range"
    payload = {
        "found": True,
        "instance": serialize.dump_instance(result.instance),
        "move": {"v": result.move.vertex, "c": result.move.color},
        "opt_before": result.opt_before,
        "opt_after": result.opt_after,
    }
    return 0, payload, (f"witness: OPT {result.opt_before} -> {result.opt_after} "
                        f"after move ({result.move.vertex},{result.move.color})")


def cmd_verify(args):
    instance, _ = _read_instance(args)
    solution = serialize.load_solution(_read_json(args.solution))
    pivot = args.pivot if args.pivot is not None else instance.pivot
    report = validate_sequence(instance, solution, pivot)
    payload = {
        "valid": report.valid,
        "length": report.length,
        "bad_moves": report.bad_moves,
        "first_illegal_index": report.first_illegal_index,
        "reason": report.reason,
    }
    if report.valid:
        return 0, payload, f"valid {solution.mode} solution, length {report.length}"
    return 2, payload, (f"invalid solution: {report.reason} "
                        f"(move {report.first_illegal_index})")


def cmd_gen(args):
    obj = _read_json(args.spec)
    spec = generators.GeneratorSpec.from_json(obj)
    if args.seed is not None:
        spec = generators.GeneratorSpec(spec.kind, spec.params, args.seed)
    instance, sidecar = generators.build(spec)
    payload = serialize.dump_instance(instance)
    if sidecar:
        payload.update(sidecar)
    return 0, payload, f"generated {spec.kind} instance ({instance.vertex_count} vertices)"


def cmd_serve(args):
    from .server import run
    run(port=args.port, host=args.host)
    return 0, {"served": True}, "server stopped"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="floodlab",
        description="Flood-It engine, exact solvers and analysis toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact optimum for free or fixed mode")
    _add_instance_arg(p)
    _add_budget_args(p)
    p.add_argument("--mode", choices=("free", "fixed"), required=True)
    p.add_argument("--pivot", type=int, default=None)
    p.add_argument("--prune-nonmerging", action="store_true",
                   help="heuristic pruning; voids optimality claims")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("decide", help="decide OPT_Free <= k")
    _add_instance_arg(p)
    _add_budget_args(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=cmd_decide)

    p = sub.add_parser("approx", help="approximate free solution")
    _add_instance_arg(p)
    _add_budget_args(p)
    p.set_defaults(handler=cmd_approx)

    p = sub.add_parser("convert-free-to-fixed",
                       help="factor-2 conversion of a free solution")
    _add_instance_arg(p)
    p.add_argument("--solution", required=True, help="solution JSON file")
    p.add_argument("--pivot", type=int, default=None)
    p.set_defaults(handler=cmd_convert)

    p = sub.add_parser("kernelize", help="apply reduction rules TT and FT")
    _add_instance_arg(p)
    p.set_defaults(handler=cmd_kernelize)

    p = sub.add_parser("twins", help="twin partition and neighborhood diversity")
    _add_instance_arg(p)
    p.set_defaults(handler=cmd_twins)

    p = sub.add_parser("reduce-mcsc", help="set-cover to flood-it reduction")
    _add_instance_arg(p)
    p.add_argument("--padding", type=int, default=None)
    p.set_defaults(handler=cmd_reduce_mcsc)

    p = sub.add_parser("tight-path", help="tight 2-colored path family")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_tight_path)

    p = sub.add_parser("find-witness", help="non-monotonicity witness search")
    p.add_argument("--max-len", type=int, default=8)
    p.set_defaults(handler=cmd_find_witness)

    p = sub.add_parser("verify", help="replay and validate a solution")
    _add_instance_arg(p)
    p.add_argument("--solution", required=True, help="solution JSON file")
    p.add_argument("--pivot", type=int, default=None)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("gen", help="seeded instance generator")
    p.add_argument("--spec", required=True, help="generator spec JSON file")
    p.add_argument("--seed", type=int, default=None, help="override the spec seed")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("serve", help="JSON-over-HTTP game service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload, summary = args.handler(args)
    except (InputError, FloodItError) as exc:
        code = getattr(exc, "code", "input")
        print(json.dumps({"error": {"code": code, "message": str(exc)}}))
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(payload))
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
