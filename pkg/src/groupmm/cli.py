"""Command-line interface.

JSON documents produced by one command are accepted by the next where that
makes sense: subsets feed ``tpp-check``, ``aliasing``, and ``multiply-demo``;
an aliasing set or an instance feeds ``cover``; a graph feeds
``reduce-independent-set`` whose output feeds ``cover`` again.

Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 input
error, 3 work-budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from .bound import (
    BracketingError,
    DegreeSpectrum,
    NonMonotoneObjectiveError,
    degrees_for,
    solve_omega,
)
from .cover import PartialPatternInstance, SolveReport, exact_max_f, heuristic_cover
from .engine import IntMatrix, cu_multiply, random_matrix
from .groups import (
    BudgetExceededError,
    CyclicPowerDescriptor,
    ENUMERATION_LIMIT,
    WreathS2Descriptor,
)
from .hardness import SimpleGraph, reduce_independent_set
from .indexing import DEFAULT_WORK_BUDGET, IndexingTriple, check_tpp, enumerate_aliasing
from .wreath import build_sets, formula_f

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

REPRODUCE_NODE_LIMIT = 5_000_000


@dataclass
class RunConfig:
    work_budget: int = DEFAULT_WORK_BUDGET
    node_limit: int | None = None
    enumeration_limit: int = ENUMERATION_LIMIT
    deterministic: bool = True
    json_output: bool = False
    seed: int = 0
    threads: int = 1


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    parser.add_argument(
        "--budget-pairs",
        type=int,
        default=DEFAULT_WORK_BUDGET,
        metavar="N",
        help="work budget for aliasing enumeration and the TPP check",
    )
    parser.add_argument(
        "--node-limit",
        type=int,
        default=None,
        metavar="N",
        help="node limit for the exact cover solver (default: unlimited)",
    )
    parser.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="reserved; the current implementation is single-threaded",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupmm",
        description="group-theoretic partial matrix multiplication toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tpp-check", help="decide the triple product property for subsets")
    p.add_argument("subsets", help="subsets JSON file")
    _common_flags(p)
    p.set_defaults(func=cmd_tpp_check)

    p = sub.add_parser("aliasing", help="enumerate the aliasing set of subsets")
    p.add_argument("subsets", help="subsets JSON file")
    _common_flags(p)
    p.set_defaults(func=cmd_aliasing)

    p = sub.add_parser("cover", help="solve the cover maximization for an instance")
    p.add_argument("instance", help="instance JSON file (an aliasing set is also accepted)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="branch-and-bound (default)")
    mode.add_argument(
        "--heuristic",
        action="store_true",
        help="polynomial matching heuristic (non-optimal)",
    )
    _common_flags(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("omega-bound", help="solve the exponent bound for a spectrum and f")
    p.add_argument("--spectrum", metavar="FILE", help="degree spectrum JSON file")
    p.add_argument("--family", choices=["wreath_s2"], help="closed-form spectrum family")
    p.add_argument("--n", type=int, metavar="N", help="family parameter")
    p.add_argument("--f", type=int, metavar="VALUE", help="fullness value")
    p.add_argument(
        "--construction",
        choices=["original", "relaxed"],
        help="use the closed-form f of the wreath construction",
    )
    _common_flags(p)
    p.set_defaults(func=cmd_omega_bound)

    p = sub.add_parser("reproduce", help="tabulate the wreath constructions and their bounds")
    _common_flags(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("multiply-demo", help="run the embedding algorithm on random matrices")
    p.add_argument("subsets", help="subsets JSON file")
    _common_flags(p)
    p.set_defaults(func=cmd_multiply_demo)

    p = sub.add_parser(
        "reduce-independent-set",
        help="reduce a graph to a cover-maximization instance",
    )
    p.add_argument("graph", help="graph JSON file")
    _common_flags(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("construct", help="build a named indexing construction")
    p.add_argument("family", choices=["wreath"], help="construction family")
    p.add_argument("--n", type=int, required=True, metavar="N")
    p.add_argument("--relaxed", action="store_true", help="append the identity to each set")
    p.add_argument(
        "--bounds",
        action="store_true",
        help="emit closed-form f values and exponent bounds instead of the sets",
    )
    _common_flags(p)
    p.set_defaults(func=cmd_construct)

    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        work_budget=getattr(args, "budget_pairs", DEFAULT_WORK_BUDGET),
        node_limit=getattr(args, "node_limit", None),
        json_output=getattr(args, "json", False),
        seed=getattr(args, "seed", 0),
        threads=getattr(args, "threads", 1),
    )
    if cfg.work_budget < 1:
        raise ValueError("--budget-pairs must be positive")
    if cfg.node_limit is not None and cfg.node_limit < 1:
        raise ValueError("--node-limit must be positive")
    return cfg


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_tpp_check(args: argparse.Namespace, cfg: RunConfig) -> int:
    triple = IndexingTriple.from_json(_load_json(args.subsets))
    tpp = check_tpp(triple, cfg.work_budget)
    try:
        count = len(enumerate_aliasing(triple, cfg.work_budget))
    except BudgetExceededError:
        count = None
    if cfg.json_output:
        _emit({"tpp": tpp, "aliasing_count": count, "dims": list(triple.sizes)})
    elif tpp:
        print("TPP: yes" + (f"; {count} aliasing triples" if count else ""))
    else:
        suffix = f"; {count} aliasing triples" if count is not None else ""
        print("TPP: no" + suffix)
    return EXIT_OK if tpp else EXIT_NEGATIVE


def cmd_aliasing(args: argparse.Namespace, cfg: RunConfig) -> int:
    triple = IndexingTriple.from_json(_load_json(args.subsets))
    aliasing = enumerate_aliasing(triple, cfg.work_budget)
    if cfg.json_output:
        _emit(aliasing.to_json())
    else:
        print(f"{len(aliasing)} aliasing triples for dims {aliasing.dims}")
        for t in aliasing:
            print(f"  {tuple(t.left)}, {tuple(t.right)} -> {tuple(t.product)}")
    return EXIT_OK


def cmd_cover(args: argparse.Namespace, cfg: RunConfig) -> int:
    inst = PartialPatternInstance.from_json(_load_json(args.instance))
    if args.heuristic:
        report = heuristic_cover(inst)
    else:
        report = exact_max_f(inst, node_limit=cfg.node_limit)
    if cfg.json_output:
        _emit(report.to_json())
    else:
        _print_report(report)
    if not args.heuristic and not report.exact:
        return EXIT_BUDGET
    return EXIT_OK


def _print_report(report: SolveReport) -> None:
    if report.method == "matching-heuristic":
        quality = "non-optimal heuristic"
    elif report.exact:
        quality = "exact"
    else:
        quality = "node limit hit, best found so far"
    print(f"f = {report.f_value} ({quality})")
    print(f"I = {sorted(report.cover.I)}")
    print(f"J = {sorted(report.cover.J)}")
    if report.method == "branch-and-bound":
        print(f"nodes explored = {report.nodes_explored}, pruned = {report.nodes_pruned}")


def cmd_omega_bound(args: argparse.Namespace, cfg: RunConfig) -> int:
    if (args.spectrum is None) == (args.family is None):
        raise ValueError("provide exactly one of --spectrum or --family")
    if args.family is not None:
        if args.n is None:
            raise ValueError("--family requires --n")
        spectrum = degrees_for(WreathS2Descriptor(CyclicPowerDescriptor((args.n,) * 3)))
    else:
        spectrum = DegreeSpectrum.from_json(_load_json(args.spectrum))
    if (args.f is None) == (args.construction is None):
        raise ValueError("provide exactly one of --f or --construction")
    if args.construction is not None:
        if args.n is None:
            raise ValueError("--construction requires --n")
        f = formula_f(args.n, relaxed=args.construction == "relaxed")
    else:
        f = args.f
    result = solve_omega(spectrum, f)
    if cfg.json_output:
        _emit(result.to_json())
    else:
        flags = []
        if result.vacuous:
            flags.append("vacuous: no better than the classical bound")
        if result.clamped:
            flags.append("clamped to the unconditional lower bound 2")
        suffix = f"  ({'; '.join(flags)})" if flags else ""
        print(f"omega <= {result.omega_bound:.6f}{suffix}")
        print(f"f = {f}, residual = {result.residual:.3e}, iterations = {result.iterations}")
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace, cfg: RunConfig) -> int:
    node_limit = cfg.node_limit if cfg.node_limit is not None else REPRODUCE_NODE_LIMIT
    rows = []
    for n in (2, 3, 17):
        spectrum = degrees_for(WreathS2Descriptor(CyclicPowerDescriptor((n,) * 3)))
        for relaxed in (False, True):
            variant = "relaxed" if relaxed else "original"
            size = 2 * n * (n - 1) + (1 if relaxed else 0)
            closed_form = formula_f(n, relaxed)
            f_exact = None
            exact_note = "not enumerated"
            if n <= 3:
                c = build_sets(n, relaxed)
                aliasing = enumerate_aliasing(c.triple, cfg.work_budget)
                inst = PartialPatternInstance.from_aliasing(aliasing)
                report = exact_max_f(inst, node_limit=node_limit)
                f_exact = report.f_value
                exact_note = "exact" if report.exact else "node limit hit"
            bound = solve_omega(spectrum, closed_form)
            rows.append(
                {
                    "n": n,
                    "variant": variant,
                    "set_size": size,
                    "f_closed_form": closed_form,
                    "f_exact": f_exact,
                    "f_exact_note": exact_note,
                    "omega": bound.omega_bound,
                    "vacuous": bound.vacuous,
                }
            )
    if cfg.json_output:
        _emit(rows)
        return EXIT_OK
    header = f"{'n':>3} {'variant':<9} {'|S|':>5} {'f (closed form)':>16} {'f (exact)':>12} {'omega':>11}"
    print(header)
    print("-" * len(header))
    for row in rows:
        f_exact = str(row["f_exact"]) if row["f_exact"] is not None else "-"
        if row["f_exact_note"] == "node limit hit":
            f_exact = f">={f_exact}"
        omega = f"{row['omega']:.6f}" + ("*" if row["vacuous"] else "")
        print(
            f"{row['n']:>3} {row['variant']:<9} {row['set_size']:>5} "
            f"{row['f_closed_form']:>16} {f_exact:>12} {omega:>11}"
        )
    print("omega computed from the closed-form f; * marks vacuous bounds (>= 3)")
    print("f (exact) = '-': sets too large to enumerate; closed form only")
    return EXIT_OK


def cmd_multiply_demo(args: argparse.Namespace, cfg: RunConfig) -> int:
    triple = IndexingTriple.from_json(_load_json(args.subsets))
    m, n, p = triple.sizes
    rng = random.Random(cfg.seed)
    M = random_matrix(m, n, rng)
    N = random_matrix(n, p, rng)
    direct = M.matmul(N)
    embedded = cu_multiply(M, N, triple)
    delta = embedded.sub(direct)
    if cfg.json_output:
        _emit(
            {
                "M": M.to_json(),
                "N": N.to_json(),
                "direct": direct.to_json(),
                "embedded": embedded.to_json(),
                "delta": delta.to_json(),
            }
        )
        return EXIT_OK
    _print_matrix("M", M)
    _print_matrix("N", N)
    _print_matrix("direct product M*N", direct)
    _print_matrix("embedding output", embedded)
    if any(x for row in delta.data for x in row):
        _print_matrix("aliasing delta (embedding - direct)", delta)
    else:
        print("aliasing delta is zero: the embedding computed the exact product")
    return EXIT_OK


def _print_matrix(label: str, M: IntMatrix) -> None:
    width = max(len(str(x)) for row in M.data for x in row)
    print(f"{label}:")
    for row in M.data:
        print("  [" + "  ".join(str(x).rjust(width) for x in row) + "]")


def cmd_reduce(args: argparse.Namespace, cfg: RunConfig) -> int:
    graph = SimpleGraph.from_json(_load_json(args.graph))
    inst = reduce_independent_set(graph)
    _emit(inst.to_json())
    return EXIT_OK


def cmd_construct(args: argparse.Namespace, cfg: RunConfig) -> int:
    n = args.n
    if args.bounds:
        spectrum = degrees_for(WreathS2Descriptor(CyclicPowerDescriptor((n,) * 3)))
        entries = []
        for relaxed in (False, True):
            f = formula_f(n, relaxed)
            bound = solve_omega(spectrum, f)
            entries.append(
                {
                    "variant": "relaxed" if relaxed else "original",
                    "set_size": 2 * n * (n - 1) + (1 if relaxed else 0),
                    "f": f,
                    "f_kind": "closed-form (not enumerated)",
                    "omega": bound.omega_bound,
                    "vacuous": bound.vacuous,
                }
            )
        if cfg.json_output:
            _emit({"n": n, "bounds": entries})
        else:
            for e in entries:
                mark = " (vacuous)" if e["vacuous"] else ""
                print(
                    f"{e['variant']:<9} |S| = {e['set_size']:>5}  "
                    f"f = {e['f']} [{e['f_kind']}]  omega <= {e['omega']:.6f}{mark}"
                )
        return EXIT_OK
    construction = build_sets(n, relaxed=args.relaxed)
    _emit(construction.triple.to_json())
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from(args)
        return args.func(args, cfg)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NonMonotoneObjectiveError, BracketingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
