"""Command-line interface: ``ms2dist dist|graph|bench``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import METHODS, BenchmarkConfig, run_benchmark, write_csv
from .conflict_graph import (
    GENERAL, STRICT, build_coarse_digraph, build_conflict_digraph, closed_two_cycle_for, node_key,
)
from .optimize import DEFAULT_MAX_CYCLES, CycleCapExceeded, enumerate_simple_cycles
from .partition import equivalence_classes, partition_positions
from .pkms2 import pk_ms2_trajectory
from .structures import StructureError, read_structure_pair, to_dot_bracket
from .trajectory import (
    SearchBudgetExceeded, ms2_branch_and_bound, ms2_exact, ms2_greedy, ms2_near_optimal,
)

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE = 0, 2, 3


def _load(path: str, theta: int):
    try:
        text = Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise StructureError(f"cannot read {path}: {exc}") from exc
    pair = read_structure_pair(text, theta)
    if pair.sequence is not None:
        pair.s.check_sequence(pair.sequence)
        pair.t.check_sequence(pair.sequence)
    return pair


def _ruler(n: int) -> str:
    return "".join(str(i % 10) for i in range(1, n + 1))


def _compute(args, s, t):
    m = args.method
    if m == "exact":
        return ms2_exact(s, t, locality=args.locality_d, max_cycles=args.max_cycles,
                         relation=args.relation, prefer=args.tie_break)
    if m == "near":
        return ms2_near_optimal(s, t, max_cycles=args.max_cycles, prefer=args.tie_break)
    if m == "greedy":
        return ms2_greedy(s, t, max_cycles=args.max_cycles, relation=args.relation)
    if m == "bnb":
        return ms2_branch_and_bound(s, t)
    return pk_ms2_trajectory(s, t)[0]


def format_report(pair, traj, method: str) -> str:
    s, t = pair.s, pair.t
    lines = []
    if pair.sequence is not None:
        lines.append(str(pair.sequence))
    lines.append(_ruler(s.n))
    lines.append("")
    lines.append(f"Number of Nodes: {traj.info.get('nodes', 0)}")
    lines.append(f"Number of edges: {traj.info.get('edges', 0)}")
    lines.append(f"Number of cycles: {traj.info.get('cycles', 0)}")
    lines.append(f"s: {to_dot_bracket(s)}")
    lines.append(f"t: {to_dot_bracket(t)}")
    lines.append("")
    if method == "pk":
        # crossing intermediates are listed as moves only
        lines.append(f"{0:>2}. s")
        for k, mv in enumerate(traj.moves, start=1):
            lines.append(f"{k:>2}. {mv.annotation()}")
    else:
        lines.append(traj.format_text("s"))
    lines.append("")
    lines.append(f"Number of base pair removals: {traj.num_removals}")
    lines.append(f"Number of base pair additions: {traj.num_additions}")
    lines.append(f"Number of base pair shifts: {traj.num_shifts}")
    lines.append(f"MS2 Distance: {traj.distance}")
    return "\n".join(lines) + "\n"


def cmd_dist(args) -> int:
    pair = _load(args.input, args.theta)
    traj = _compute(args, pair.s, pair.t)
    if args.format == "json":
        doc = traj.as_dict()
        doc.update(method=args.method, target=to_dot_bracket(pair.t),
                   stats={k: v for k, v in sorted(traj.info.items())})
        if pair.sequence is not None:
            doc["sequence"] = str(pair.sequence)
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        sys.stdout.write(format_report(pair, traj, args.method))
    return EXIT_OK


def cmd_graph(args) -> int:
    pair = _load(args.input, args.theta)
    s, t = pair.s, pair.t
    classes = equivalence_classes(s, t)
    if args.coarse:
        coarse = build_coarse_digraph(s, t, classes)
        if args.emit == "dot":
            out = ["digraph coarse {"]
            out += [f"  {i};" for i in range(1, coarse.size + 1)]
            out += [f'  {i} -> {j} [label="{coarse.weight(i, j)}"];' for i, j in coarse.edges]
            out.append("}")
            print("\n".join(out))
            return EXIT_OK
        found = enumerate_simple_cycles(range(1, coarse.size + 1), coarse.edges, args.max_cycles)
        if found.truncated:
            raise CycleCapExceeded(args.max_cycles)
        print(f"Number of Nodes: {coarse.size}")
        print(f"Number of edges: {len(coarse.edges)}")
        print(f"Number of cycles: {len(found)}")
        for i, j in coarse.edges:
            print(f"{i} -> {j}  n={coarse.weight(i, j)}")
        return EXIT_OK
    graph = build_conflict_digraph(s, t, locality=args.locality_d, relation=args.relation)
    if args.emit == "dot":
        print(graph.to_dot())
        return EXIT_OK
    found = enumerate_simple_cycles(graph.nodes, graph.edges, args.max_cycles, key=node_key)
    if found.truncated:
        raise CycleCapExceeded(args.max_cycles)
    two = sum(1 for X in classes if closed_two_cycle_for(X, s, t) is not None)
    print(f"Number of Nodes: {len(graph)}")
    print(f"Number of edges: {graph.num_edges}")
    print(f"Number of cycles: {len(found)}")
    print(f"Number of closed 2-cycles: {two}")
    # untouched pairs (BP1, BP2) are left out, as they form trivial classes
    part = partition_positions(s, t)
    for k, X in enumerate(equivalence_classes(s, t, part.A | part.B0), start=1):
        print(f"X{k} = {X}")
    return EXIT_OK


def _lengths(text: str) -> tuple[int, int, int]:
    try:
        a, b, step = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected START:STOP:STEP") from None
    return a, b, step


def cmd_bench(args) -> int:
    start, stop, step = args.lengths
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    try:
        cfg = BenchmarkConfig(start, stop, step, args.seqs, args.structs, args.seed,
                              args.max_cycles, methods, args.theta, args.timing, args.workers)
    except ValueError as exc:
        raise StructureError(str(exc)) from exc
    records = run_benchmark(cfg)
    with open(args.out, "w", newline="") as fh:
        write_csv(records, fh)
    flagged = sum(1 for r in records if r.truncated)
    print(f"wrote {len(records)} records to {args.out} ({flagged} over the cycle cap)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ms2dist", description="MS2 folding distances between RNA secondary structures")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph_opts=True):
        sp.add_argument("--input", required=True, help="structure-pair file ('-' for stdin)")
        sp.add_argument("--theta", type=int, default=3, help="minimum hairpin size (default 3)")
        sp.add_argument("--max-cycles", type=int, default=DEFAULT_MAX_CYCLES)
        if graph_opts:
            sp.add_argument("--locality-d", type=int, default=None,
                            help="only allow shifts moving one end at most D positions")
            sp.add_argument("--relation", choices=(STRICT, GENERAL), default=STRICT,
                            help="edge relation; 'general' drops the one-position overlap condition")

    d = sub.add_parser("dist", help="compute a trajectory and its length")
    common(d)
    d.add_argument("--method", choices=METHODS, default="exact")
    d.add_argument("--format", choices=("text", "json"), default="text")
    d.add_argument("--tie-break", choices=("smallest", "greatest"), default="smallest",
                   help="which optimal shift selection to return")
    d.set_defaults(func=cmd_dist)

    g = sub.add_parser("graph", help="export the conflict digraph")
    common(g)
    g.add_argument("--emit", choices=("dot", "summary"), default="summary")
    g.add_argument("--coarse", action="store_true", help="class-level digraph instead")
    g.set_defaults(func=cmd_graph)

    b = sub.add_parser("bench", help="run the random benchmark and write CSV")
    b.add_argument("--lengths", type=_lengths, required=True, help="START:STOP:STEP")
    b.add_argument("--seqs", type=int, default=25)
    b.add_argument("--structs", type=int, default=20)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", required=True)
    b.add_argument("--methods", default="exact", help="comma list of " + ",".join(METHODS))
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--timing", action="store_true", help="fill the micros column (breaks byte reproducibility)")
    b.add_argument("--max-cycles", type=int, default=DEFAULT_MAX_CYCLES)
    b.add_argument("--theta", type=int, default=3)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CycleCapExceeded, SearchBudgetExceeded) as exc:
        print(f"ms2dist: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (StructureError, ValueError) as exc:
        print(f"ms2dist: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
