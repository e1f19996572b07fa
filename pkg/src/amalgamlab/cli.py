"""Command-line interface.

Every subcommand runs one or more verifications and emits reports, either
human-readable (default) or as JSON objects, one per line, with ``--json``.
The exit code is a pure function of the reports: 0 when every check passed
or was vacuous, 1 when at least one check is violated, 2 for usage, input,
or guard errors.
"""

from __future__ import annotations

import argparse
import sys
from math import factorial
from pathlib import Path

from .actions import classify_action
from .amalgams import (
    Amalgam,
    amalgam_from_pair,
    core_sequence,
    faithful_kernel,
    inflate_amalgam,
    verify_inflation,
)
from .errors import AmalgamlabError
from .graphs import (
    PairInstance,
    catalog_graph,
    catalog_names,
    coset_graph,
    graph_automorphisms,
    pair_instance,
    parse_graph,
    stabilizer_series,
    stabilizer_series_pair,
)
from .group import PermGroup
from .pairs import build_ordered_pairs, verify_approximation
from .perm import format_group_file, parse_group_file
from .report import Report
from .structure import o_p, p_valuation
from .verify import (
    edge_context,
    hauptlemma_check,
    proof_trace,
    regular_base_instance,
    verify_theorem,
)

__all__ = ["main", "cli_dispatch"]


def _parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        start, stop = int(lo), int(hi)
        if stop < start:
            raise ValueError(f"empty range {text!r}")
        return list(range(start, stop + 1))
    return [int(text)]


def _load_instance(source: str) -> PairInstance:
    """A catalog name, or a path to a graph file (automorphisms computed)."""
    if source in catalog_names():
        return catalog_graph(source)
    graph = parse_graph(Path(source).read_text())
    return pair_instance(graph, graph_automorphisms(graph))


def _parse_edge(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    x, _, y = text.partition(",")
    return (int(x), int(y))


def _instance_edge(
    inst: PairInstance, edge: tuple[int, int] | None
) -> tuple[int, int]:
    if edge is None:
        return inst.graph.edges()[0]
    return edge


def _section4_pipeline(h_source: str):
    """Catalog H-amalgam inflated over the n = 4 pairs action and its seed."""
    base = build_ordered_pairs(4).group
    seed = classify_action(base).witnesses["quasiprimitive"]
    inst = _load_instance(h_source)
    h_amalgam = amalgam_from_pair(inst, *_instance_edge(inst, None))
    return inflate_amalgam(base, seed, h_amalgam)


def _theorem_instance(args: argparse.Namespace) -> PairInstance | Amalgam:
    if args.construct is not None:
        if args.n != 4:
            raise AmalgamlabError(
                "the product construction targets the n = 4 pairs action"
            )
        return _section4_pipeline(args.construct).amalgam
    if args.graph is not None:
        if args.group is None:
            raise AmalgamlabError("--graph needs --group")
        graph = parse_graph(Path(args.graph).read_text())
        degree, gens = parse_group_file(Path(args.group).read_text())
        return pair_instance(graph, PermGroup(gens, degree=degree))
    if args.n == 3:
        return regular_base_instance()
    raise AmalgamlabError(
        f"no built-in instance for n = {args.n}; pass --construct or --graph"
    )


# -- command handlers (each returns a list of reports) ------------------------


def _cmd_action_build_pairs(args: argparse.Namespace) -> list[Report]:
    action = build_ordered_pairs(args.n)
    report = Report(
        "action build-pairs",
        {"n": args.n, "degree": action.degree, "order": action.group.order()},
    )
    report.require(
        "degree-formula",
        action.degree == args.n * (args.n - 1),
        "pair-action",
        {"degree": action.degree, "expected": args.n * (args.n - 1)},
    )
    report.require(
        "order-formula",
        action.group.order() == factorial(args.n),
        "pair-action",
        {"order": action.group.order(), "expected": factorial(args.n)},
    )
    report.require(
        "transitive",
        action.group.is_transitive(),
        "pair-action",
        {},
    )
    if args.out is not None:
        Path(args.out).write_text(
            format_group_file(action.degree, action.group.generators)
        )
    return [report]


def _cmd_action_classify(args: argparse.Namespace) -> list[Report]:
    if args.pairs is not None:
        group = build_ordered_pairs(args.pairs).group
        source = f"pairs n={args.pairs}"
    else:
        degree, gens = parse_group_file(Path(args.group).read_text())
        group = PermGroup(gens, degree=degree)
        source = args.group
    result = classify_action(group)
    details: dict = {"level": result.level}
    details["witness_orders"] = {
        level: sub.order() for level, sub in result.witnesses.items()
    }
    if result.block_system is not None:
        details["block_system"] = [list(b) for b in result.block_system]
    if result.plinths:
        details["plinth_orders"] = [g.order() for g in result.plinths]
    report = Report(
        "action classify",
        {"source": source, "degree": group.degree, "order": group.order()},
    )
    report.add("classification", "pass", "action-hierarchy", details)
    return [report]


def _cmd_lemma_verify(args: argparse.Namespace) -> list[Report]:
    return [verify_approximation(n) for n in _parse_n_range(args.n)]


def _cmd_graph_autos(args: argparse.Namespace) -> list[Report]:
    inst = _load_instance(args.source)
    report = Report(
        "graph autos",
        {
            "source": args.source,
            "vertices": inst.graph.vertex_count,
            "edges": len(inst.graph.edges()),
        },
    )
    report.require(
        "automorphism-group",
        all(inst.graph.is_automorphism(g) for g in inst.group.generators),
        "graph-symmetries",
        {
            "order": inst.group.order(),
            "vertex_transitive": inst.vertex_transitive,
            "generators": [str(g) for g in inst.group.generators],
        },
    )
    return [report]


def _cmd_graph_balls(args: argparse.Namespace) -> list[Report]:
    inst = _load_instance(args.source)
    series = stabilizer_series(inst, args.x, args.radius)
    report = Report(
        "graph balls",
        {"source": args.source, "x": args.x, "radius": args.radius},
    )
    report.require(
        "ball-series",
        all(
            series[i] % series[i + 1] == 0 and series[i] >= series[i + 1]
            for i in range(len(series) - 1)
        ),
        "ball-stabilizers",
        {"orders": series},
    )
    if args.y is not None:
        pair_series = stabilizer_series_pair(inst, args.x, args.y, args.radius)
        report.require(
            "edge-ball-series",
            all(
                pair_series[i] % pair_series[i + 1] == 0
                for i in range(len(pair_series) - 1)
            ),
            "ball-stabilizers",
            {"orders": pair_series},
        )
    return [report]


def _cmd_graph_coset(args: argparse.Namespace) -> list[Report]:
    inst = _load_instance(args.source)
    x, y = _instance_edge(inst, _parse_edge(args.edge))
    rebuilt = coset_graph(
        inst.group,
        inst.group.stabilizer(x),
        inst.group.setwise_stabilizer([x, y]),
    )
    report = Report(
        "graph coset",
        {"source": args.source, "edge": [x, y]},
    )
    report.require(
        "vertex-count",
        rebuilt.graph.vertex_count == inst.graph.vertex_count,
        "coset-graph",
        {
            "rebuilt": rebuilt.graph.vertex_count,
            "original": inst.graph.vertex_count,
        },
    )
    report.require(
        "edge-count",
        len(rebuilt.graph.edges()) == len(inst.graph.edges()),
        "coset-graph",
        {"rebuilt": len(rebuilt.graph.edges()), "original": len(inst.graph.edges())},
    )
    report.require(
        "group-order",
        rebuilt.group.order() == inst.group.order(),
        "coset-graph",
        {"rebuilt": rebuilt.group.order(), "original": inst.group.order()},
    )
    return [report]


def _cmd_graph_catalog(args: argparse.Namespace) -> list[Report]:
    report = Report("graph catalog", {"names": list(catalog_names())})
    for name in catalog_names():
        inst = catalog_graph(name)
        report.add(
            f"catalog-{name}",
            "pass",
            "graph-symmetries",
            {
                "vertices": inst.graph.vertex_count,
                "valency": inst.graph.degree(0),
                "automorphism_order": inst.group.order(),
            },
        )
    return [report]


def _cmd_amalgam_extract(args: argparse.Namespace) -> list[Report]:
    inst = _load_instance(args.source)
    x, y = _instance_edge(inst, _parse_edge(args.edge))
    amalgam = amalgam_from_pair(inst, x, y)
    report = Report(
        "amalgam extract",
        {
            "source": args.source,
            "edge": [x, y],
            "vertex_order": amalgam.a.order(),
            "edge_order": amalgam.b.order(),
            "shared_order": amalgam.c_in_a.order(),
        },
    )
    report.require(
        "vertex-edge-shape",
        amalgam.index_b == 2,
        "stabilizer-amalgam",
        {"edge_index": amalgam.index_b},
    )
    report.require(
        "valency-index",
        amalgam.index_a == inst.graph.degree(x),
        "stabilizer-amalgam",
        {"vertex_index": amalgam.index_a, "valency": inst.graph.degree(x)},
    )
    return [report]


def _cmd_amalgam_faithful(args: argparse.Namespace) -> list[Report]:
    inst = _load_instance(args.source)
    x, y = _instance_edge(inst, _parse_edge(args.edge))
    amalgam = amalgam_from_pair(inst, x, y)
    kernel = faithful_kernel(amalgam)
    report = Report(
        "amalgam faithful", {"source": args.source, "edge": [x, y]}
    )
    report.require(
        "faithful",
        kernel.is_trivial(),
        "amalgam-faithfulness",
        {"kernel_order": kernel.order()},
    )
    return [report]


def _cmd_amalgam_cores(args: argparse.Namespace) -> list[Report]:
    inst = _load_instance(args.source)
    x, y = _instance_edge(inst, _parse_edge(args.edge))
    amalgam = amalgam_from_pair(inst, x, y)
    vertex_cores, edge_cores = core_sequence(amalgam, args.depth)
    vertex_orders = [g.order() for g in vertex_cores]
    edge_orders = [g.order() for g in edge_cores]
    ball_orders = stabilizer_series(inst, x, args.depth)[1:]
    pair_orders = stabilizer_series_pair(inst, x, y, args.depth)[1:]
    report = Report(
        "amalgam cores",
        {"source": args.source, "edge": [x, y], "depth": args.depth},
    )
    report.require(
        "ball-agreement",
        vertex_orders == ball_orders and edge_orders == pair_orders,
        "core-recursion",
        {
            "vertex_core_orders": vertex_orders,
            "vertex_ball_orders": ball_orders,
            "edge_core_orders": edge_orders,
            "edge_ball_orders": pair_orders,
        },
    )
    return [report]


def _cmd_construct_section4(args: argparse.Namespace) -> list[Report]:
    certificate = _section4_pipeline(args.h)
    report = verify_inflation(certificate, depth=args.depth)
    report.inputs["h_source"] = args.h
    return [report]


def _cmd_verify_theorem(args: argparse.Namespace) -> list[Report]:
    instance = _theorem_instance(args)
    edge = _parse_edge(args.edge) if isinstance(instance, PairInstance) else None
    return [verify_theorem(instance, args.n, edge=edge)]


def _cmd_trace_claims(args: argparse.Namespace) -> list[Report]:
    instance = _theorem_instance(args)
    edge = _parse_edge(args.edge) if isinstance(instance, PairInstance) else None
    trace, report = proof_trace(instance, args.n, edge=edge)
    if trace.prime is not None:
        report.inputs["subgroup_orders"] = {
            "s_xy": trace.s_xy.order(),
            "z_xy": trace.z_xy.order(),
            "q_x": trace.q_x.order(),
            "q_y": trace.q_y.order(),
            "z_x": trace.z_x.order(),
            "z_y": trace.z_y.order(),
            "r1": trace.r1.order(),
            "r2": trace.r2.order(),
            "r1_star": trace.r1_star.order(),
            "r2_star": trace.r2_star.order(),
        }
    return [report]


def _cmd_check_hauptlemma(args: argparse.Namespace) -> list[Report]:
    instance = _theorem_instance(args)
    edge = _parse_edge(args.edge) if isinstance(instance, PairInstance) else None
    ctx = edge_context(instance, depth=1, edge=edge)
    if args.k == "trivial":
        subgroup = PermGroup(degree=ctx.vertex_group.degree)
    elif args.k == "first-edge-kernel":
        subgroup = ctx.edge_cores[0]
    else:  # sylow-product
        kernel = ctx.edge_cores[0]
        if kernel.is_trivial():
            raise AmalgamlabError(
                "the first edge kernel is trivial; no prime to take a radical for"
            )
        order = kernel.order()
        p = min(f for f in range(2, order + 1) if order % f == 0)
        if p_valuation(order, p)[1] != 1:
            raise AmalgamlabError("the first edge kernel is not a prime power")
        subgroup = o_p(ctx.shared, p)
    report = hauptlemma_check(instance, subgroup, edge=edge)
    report.inputs["k"] = args.k
    return [report]


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amalgamlab",
        description="Verifiers for pair actions, graph stabilizers and amalgams.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="emit one JSON report per line"
    )
    top = parser.add_subparsers(dest="command", required=True)

    action = top.add_parser("action", help="pair actions and classification")
    action_sub = action.add_subparsers(dest="subcommand", required=True)
    build = action_sub.add_parser("build-pairs", parents=[common])
    build.add_argument("--n", type=int, required=True)
    build.add_argument("--out", help="write the group to a file")
    build.set_defaults(handler=_cmd_action_build_pairs)
    classify = action_sub.add_parser("classify", parents=[common])
    classify_src = classify.add_mutually_exclusive_group(required=True)
    classify_src.add_argument("--pairs", type=int, help="ordered-pairs action for n")
    classify_src.add_argument("--group", help="path to a group file")
    classify.set_defaults(handler=_cmd_action_classify)

    lemma = top.add_parser("lemma", help="pair-stabilizer approximation checks")
    lemma_sub = lemma.add_subparsers(dest="subcommand", required=True)
    lverify = lemma_sub.add_parser("verify", parents=[common])
    lverify.add_argument("--n", required=True, help="single value or range like 4..8")
    lverify.set_defaults(handler=_cmd_lemma_verify)

    graph = top.add_parser("graph", help="graphs, symmetries and stabilizers")
    graph_sub = graph.add_subparsers(dest="subcommand", required=True)
    autos = graph_sub.add_parser("autos", parents=[common])
    autos.add_argument("source", help="catalog name or graph file")
    autos.set_defaults(handler=_cmd_graph_autos)
    balls = graph_sub.add_parser("balls", parents=[common])
    balls.add_argument("source")
    balls.add_argument("--x", type=int, default=0)
    balls.add_argument("--y", type=int, default=None)
    balls.add_argument("--radius", type=int, default=3)
    balls.set_defaults(handler=_cmd_graph_balls)
    coset = graph_sub.add_parser("coset", parents=[common])
    coset.add_argument("source")
    coset.add_argument("--edge", help="edge as x,y (default: first edge)")
    coset.set_defaults(handler=_cmd_graph_coset)
    catalog = graph_sub.add_parser("catalog", parents=[common])
    catalog.set_defaults(handler=_cmd_graph_catalog)

    amalgam = top.add_parser("amalgam", help="vertex-edge stabilizer amalgams")
    amalgam_sub = amalgam.add_subparsers(dest="subcommand", required=True)
    for name, handler in (
        ("extract", _cmd_amalgam_extract),
        ("faithful", _cmd_amalgam_faithful),
        ("cores", _cmd_amalgam_cores),
    ):
        sub = amalgam_sub.add_parser(name, parents=[common])
        sub.add_argument("source")
        sub.add_argument("--edge", help="edge as x,y (default: first edge)")
        if name == "cores":
            sub.add_argument("--depth", type=int, default=3)
        sub.set_defaults(handler=handler)

    construct = top.add_parser("construct", help="product amalgam construction")
    construct_sub = construct.add_subparsers(dest="subcommand", required=True)
    section4 = construct_sub.add_parser("section4", parents=[common])
    section4.add_argument(
        "--h", default="tutte-coxeter", help="catalog source of the input amalgam"
    )
    section4.add_argument("--depth", type=int, default=3)
    section4.set_defaults(handler=_cmd_construct_section4)

    def instance_flags(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--construct", help="catalog H-amalgam for the construction")
        sub.add_argument("--graph", help="path to a graph file")
        sub.add_argument("--group", help="path to a group file")
        sub.add_argument("--edge", help="edge as x,y (graph route only)")

    verify = top.add_parser("verify", help="main theorem instance checks")
    verify_sub = verify.add_subparsers(dest="subcommand", required=True)
    theorem = verify_sub.add_parser("theorem", parents=[common])
    instance_flags(theorem)
    theorem.set_defaults(handler=_cmd_verify_theorem)

    trace = top.add_parser("trace", help="proof-trace claim checks")
    trace_sub = trace.add_subparsers(dest="subcommand", required=True)
    claims = trace_sub.add_parser("claims", parents=[common])
    instance_flags(claims)
    claims.set_defaults(handler=_cmd_trace_claims)

    check = top.add_parser("check", help="basic lemma consistency checks")
    check_sub = check.add_subparsers(dest="subcommand", required=True)
    haupt = check_sub.add_parser("hauptlemma", parents=[common])
    instance_flags(haupt)
    haupt.add_argument(
        "--k",
        choices=("trivial", "first-edge-kernel", "sylow-product"),
        default="first-edge-kernel",
    )
    haupt.set_defaults(handler=_cmd_check_hauptlemma)

    return parser


def cli_dispatch(argv: list[str] | None = None) -> int:
    """Run one command; returns the exit code without exiting."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        reports = args.handler(args)
    except (AmalgamlabError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for i, report in enumerate(reports):
        if args.json:
            print(report.to_json())
        else:
            if i:
                print()
            print(report.human())
    return max((r.exit_code for r in reports), default=0)


def main(argv: list[str] | None = None) -> int:
    return cli_dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
