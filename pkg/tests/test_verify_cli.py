"""Theorem verifiers, proof trace, hypothesis checks and the CLI contract."""

import json
import shutil
import subprocess
import sys

import pytest

from amalgamlab.actions import classify_action
from amalgamlab.amalgams import amalgam_from_pair, inflate_amalgam
from amalgamlab.cli import cli_dispatch
from amalgamlab.errors import WitnessError
from amalgamlab.graphs import catalog_graph, coset_graph, format_graph, pair_instance
from amalgamlab.group import generate_group, symmetric_group, trivial_group
from amalgamlab.pairs import build_ordered_pairs
from amalgamlab.perm import format_group_file, parse_permutation
from amalgamlab.structure import o_p
from amalgamlab.verify import (
    PRIME_TABLE,
    certify_local,
    edge_context,
    hauptlemma_check,
    proof_trace,
    regular_base_instance,
    theorem_radius,
    verify_theorem,
)


def perm(text, degree=None):
    return parse_permutation(text, degree)


def section4_amalgam(name):
    base = build_ordered_pairs(4).group
    seed = classify_action(base).witnesses["quasiprimitive"]
    inst = catalog_graph(name)
    h = amalgam_from_pair(inst, 0, inst.graph.neighbors(0)[0])
    return inflate_amalgam(base, seed, h).amalgam


# -- radius table ---------------------------------------------------------------


def test_theorem_radius_table():
    assert theorem_radius(3) == 1
    assert theorem_radius(4) == 3
    assert theorem_radius(5) == 2
    assert theorem_radius(6) == 3
    assert theorem_radius(7) == 2
    assert theorem_radius(50) == 2


def test_prime_table():
    assert PRIME_TABLE == {(4, 2), (5, 3), (6, 2)}


# -- edge contexts ----------------------------------------------------------------


def test_edge_context_graph_and_amalgam_routes_agree():
    inst = regular_base_instance()
    y = inst.graph.neighbors(0)[0]
    via_graph = edge_context(inst, 3, edge=(0, y))
    am = amalgam_from_pair(inst, 0, y)
    via_amalgam = edge_context(am, 3)
    assert via_graph.vertex_group.order() == via_amalgam.vertex_group.order()
    assert via_graph.edge_group.order() == via_amalgam.edge_group.order()
    assert via_graph.shared.order() == via_amalgam.shared.order()
    assert via_graph.valency == via_amalgam.valency
    assert [g.order() for g in via_graph.vertex_cores] == [
        g.order() for g in via_amalgam.vertex_cores
    ]
    assert [g.order() for g in via_graph.edge_cores] == [
        g.order() for g in via_amalgam.edge_cores
    ]


def test_edge_context_rejects_bad_inputs():
    inst = catalog_graph("petersen")
    non_neighbor = next(
        v
        for v in range(10)
        if v != 0 and not inst.graph.has_edge(0, v)
    )
    with pytest.raises(WitnessError):
        edge_context(inst, 2, edge=(0, non_neighbor))
    am = section4_amalgam("k4")
    with pytest.raises(WitnessError):
        edge_context(am, 2, edge=(0, 1))  # amalgams carry their own edge


def test_certify_local_positive_and_negative():
    tc = section4_amalgam("tutte-coxeter")
    ctx = edge_context(tc, 3)
    ref = certify_local(ctx, 4)
    assert ref is not None
    assert len(ref.witness) == ctx.valency == 12
    assert sorted(ref.witness) == list(range(12))
    assert certify_local(ctx, 5) is None  # valency 20 expected, not 12


# -- verify_theorem ----------------------------------------------------------------


def test_verify_theorem_on_all_section4_amalgams():
    sharp_cases = {"tutte-coxeter": True, "k4": False}
    for name in ("k4", "k33", "petersen", "heawood", "tutte-coxeter"):
        report = verify_theorem(section4_amalgam(name), 4)
        assert report.overall == "pass", (name, report.to_json())
        assert report.exit_code == 0
        by_name = {c.name: c for c in report.checks}
        triviality = by_name["stabilizer-triviality"]
        assert triviality.details["radius"] == 3
        assert triviality.details["vertex_core_orders"][-1] == 1
        if name in sharp_cases:
            assert triviality.details["sharp"] is sharp_cases[name]


def test_verify_theorem_tutte_coxeter_details():
    report = verify_theorem(section4_amalgam("tutte-coxeter"), 4)
    by_name = {c.name: c for c in report.checks}
    assert by_name["locally-reference"].status == "pass"
    details = by_name["stabilizer-triviality"].details
    assert details["vertex_core_orders"] == [8, 2, 1]
    assert details["sharp"] is True


def test_verify_theorem_regular_branch():
    inst = regular_base_instance()
    assert inst.graph.vertex_count == 20
    assert inst.group.order() == 120
    report = verify_theorem(inst, 3)
    assert report.overall == "pass"
    by_name = {c.name: c for c in report.checks}
    details = by_name["stabilizer-triviality"].details
    assert details["radius"] == 1
    assert details["vertex_core_orders"] == [1]


def corrupted_regular_instance():
    """The same twenty-vertex coset graph acted on by a smaller group whose
    local action is only the rotation group, so the reference check fails."""
    amb = symmetric_group(5)
    vertex = generate_group([perm("(0 1 2)", 5), perm("(0 1)", 5)])
    edge = generate_group([perm("(2 3)(1 4)")])
    inst = coset_graph(amb, vertex, edge)
    hom = amb.coset_action(vertex)
    bad = generate_group(
        [
            hom.apply(perm("(0 1 2)", 5)),
            hom.apply(perm("(2 3)(1 4)")),
        ]
    )
    return pair_instance(inst.graph, bad)


def test_verify_theorem_violation_is_witnessed():
    inst = corrupted_regular_instance()
    assert inst.group.order() == 60
    report = verify_theorem(inst, 3)
    assert report.overall == "violated"
    assert report.exit_code == 1
    by_name = {c.name: c for c in report.checks}
    assert by_name["locally-reference"].status == "violated"
    assert by_name["stabilizer-triviality"].status == "skipped"


# -- proof_trace -----------------------------------------------------------------


def test_proof_trace_frozen_subgroup_orders():
    trace, report = proof_trace(section4_amalgam("tutte-coxeter"), 4)
    assert trace.prime == 2
    assert trace.s_xy.order() == 16
    assert trace.z_xy.order() == 4
    assert trace.q_x.order() == 8
    assert trace.q_y.order() == 8
    assert trace.z_x.order() == 8
    assert trace.z_y.order() == 8
    assert trace.r1.order() == 48
    assert trace.r2.order() == 48
    assert trace.r1_star.order() == 48
    assert trace.r2_star.order() == 48
    assert report.overall == "pass"
    assert len(report.checks) == 20
    assert all(c.status == "pass" for c in report.checks)
    assert set(trace.claim_statuses.values()) == {"pass"}


def test_proof_trace_vacuous_when_edge_kernel_trivial():
    trace, report = proof_trace(section4_amalgam("k4"), 4)
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["locally-reference"] == "pass"
    del statuses["locally-reference"]
    assert set(statuses.values()) == {"vacuous"}
    assert report.overall == "pass"
    # Vacuous claims are never upgraded to "pass".
    assert "pass" not in [
        v for k, v in trace.claim_statuses.items() if k != "locally-reference"
    ]


def test_proof_trace_rejects_out_of_table_n():
    with pytest.raises(WitnessError):
        proof_trace(section4_amalgam("tutte-coxeter"), 7)


# -- hauptlemma -------------------------------------------------------------------


def test_hauptlemma_trivial_k_passes():
    tc = section4_amalgam("tutte-coxeter")
    report = hauptlemma_check(tc, trivial_group(tc.a.degree))
    assert report.overall == "pass"
    check = report.checks[0]
    assert check.name == "hauptlemma-consistency"
    assert check.status == "pass"
    assert check.details["k_order"] == 1
    assert check.details["normalizer_transitive_on_neighbors"] is True


def test_hauptlemma_nontrivial_kernels_are_vacuous():
    tc = section4_amalgam("tutte-coxeter")
    ctx = edge_context(tc, 3)
    for k, k_order, norm_order in [
        (ctx.edge_cores[0], 4, 64),
        (o_p(ctx.shared, 2), 16, 32),
    ]:
        report = hauptlemma_check(tc, k)
        check = report.checks[0]
        assert check.status == "vacuous"
        assert check.details["k_order"] == k_order
        assert check.details["normalizer_order"] == norm_order
        assert check.details["failed_hypotheses"] == ["normalizer-transitive"]
        assert report.exit_code == 0


def test_hauptlemma_rejects_k_outside_arc_stabilizer():
    tc = section4_amalgam("tutte-coxeter")
    with pytest.raises(WitnessError):
        hauptlemma_check(tc, tc.a)


# -- CLI ---------------------------------------------------------------------------


def run_cli(capsys, *argv):
    code = cli_dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def json_lines(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_cli_build_pairs_writes_group_file(capsys, tmp_path):
    out_file = tmp_path / "pairs.group"
    code, out, _ = run_cli(
        capsys, "action", "build-pairs", "--n", "4", "--out", str(out_file), "--json"
    )
    assert code == 0
    (report,) = json_lines(out)
    assert report["overall"] == "pass"
    from amalgamlab.perm import parse_group_file

    degree, gens = parse_group_file(out_file.read_text())
    assert degree == 12
    assert generate_group(gens, degree=12).order() == 24


def test_cli_classify_pairs(capsys):
    code, out, _ = run_cli(capsys, "action", "classify", "--pairs", "4", "--json")
    assert code == 0
    (report,) = json_lines(out)
    assert report["checks"][0]["details"]["level"] == "semiprimitive"


def test_cli_lemma_range_emits_one_report_per_n(capsys):
    code, out, _ = run_cli(capsys, "lemma", "verify", "--n", "4..6", "--json")
    assert code == 0
    reports = json_lines(out)
    assert [r["inputs"]["n"] for r in reports] == [4, 5, 6]
    assert all(r["overall"] == "pass" for r in reports)


def test_cli_json_schema_is_bit_exact(capsys):
    code, out, _ = run_cli(capsys, "graph", "autos", "k4", "--json")
    assert code == 0
    (report,) = json_lines(out)
    assert list(report.keys()) == ["command", "inputs", "checks", "overall"]
    for check in report["checks"]:
        assert list(check.keys()) == ["name", "status", "paper_anchor", "details"]
        assert check["status"] in {"pass", "violated", "vacuous", "skipped"}


def test_cli_graph_balls(capsys):
    code, out, _ = run_cli(
        capsys,
        "graph", "balls", "tutte-coxeter", "--x", "0", "--radius", "3", "--json",
    )
    assert code == 0
    (report,) = json_lines(out)
    assert report["overall"] == "pass"
    assert "48" in json.dumps(report)


def test_cli_graph_balls_missing_file_is_exit_2(capsys):
    code, _, err = run_cli(capsys, "graph", "balls", "nosuchfile")
    assert code == 2
    assert err.strip()


def test_cli_unknown_subcommand_is_exit_2(capsys):
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == 2
    code, _, _ = run_cli(capsys, "graph", "autos", "k4", "--frobnicate")
    assert code == 2


def test_cli_construct_section4(capsys):
    code, out, _ = run_cli(capsys, "construct", "section4", "--json")
    assert code == 0
    (report,) = json_lines(out)
    assert report["command"] == "construct section4"
    assert report["overall"] == "pass"
    assert len(report["checks"]) == 6


def test_cli_verify_theorem_constructed(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify", "theorem", "--construct", "tutte-coxeter", "--n", "4", "--json",
    )
    assert code == 0
    (report,) = json_lines(out)
    triviality = [
        c for c in report["checks"] if c["name"] == "stabilizer-triviality"
    ][0]
    assert triviality["details"]["sharp"] is True


def test_cli_verify_theorem_files_violated_is_exit_1(capsys, tmp_path):
    inst = corrupted_regular_instance()
    graph_file = tmp_path / "c.graph"
    group_file = tmp_path / "c.group"
    graph_file.write_text(format_graph(inst.graph))
    group_file.write_text(
        format_group_file(inst.group.degree, inst.group.generators)
    )
    code, out, _ = run_cli(
        capsys,
        "verify", "theorem",
        "--graph", str(graph_file),
        "--group", str(group_file),
        "--n", "3", "--json",
    )
    assert code == 1
    (report,) = json_lines(out)
    assert report["overall"] == "violated"


def test_cli_trace_claims(capsys):
    code, out, _ = run_cli(
        capsys,
        "trace", "claims", "--construct", "tutte-coxeter", "--n", "4", "--json",
    )
    assert code == 0
    (report,) = json_lines(out)
    assert report["inputs"]["subgroup_orders"]["s_xy"] == 16
    assert all(c["status"] == "pass" for c in report["checks"])


def test_cli_check_hauptlemma_choices(capsys):
    for k, expected in [
        ("trivial", "pass"),
        ("first-edge-kernel", "vacuous"),
        ("sylow-product", "vacuous"),
    ]:
        code, out, _ = run_cli(
            capsys,
            "check", "hauptlemma",
            "--construct", "tutte-coxeter", "--n", "4", "--k", k, "--json",
        )
        assert code == 0
        (report,) = json_lines(out)
        assert report["checks"][0]["status"] == expected


def test_cli_amalgam_commands(capsys):
    code, out, _ = run_cli(capsys, "amalgam", "extract", "tutte-coxeter", "--json")
    assert code == 0
    (report,) = json_lines(out)
    assert report["inputs"]["vertex_order"] == 48
    assert report["inputs"]["edge_order"] == 32
    assert report["inputs"]["shared_order"] == 16
    code, out, _ = run_cli(capsys, "amalgam", "faithful", "tutte-coxeter", "--json")
    assert code == 0
    code, out, _ = run_cli(
        capsys, "amalgam", "cores", "tutte-coxeter", "--depth", "3", "--json"
    )
    assert code == 0
    (report,) = json_lines(out)
    assert "[8, 2, 1]" in json.dumps(report) or [8, 2, 1] in [
        c["details"].get("vertex_core_orders") for c in report["checks"]
    ]


def test_cli_graph_coset_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "graph", "coset", "heawood", "--json")
    assert code == 0
    (report,) = json_lines(out)
    assert report["overall"] == "pass"


def test_cli_human_output_default(capsys):
    code, out, _ = run_cli(capsys, "graph", "autos", "k4")
    assert code == 0
    assert "PASS" in out or "pass" in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_console_script_entrypoint():
    exe = shutil.which("amalgamlab")
    assert exe, "console script must be installed"
    proc = subprocess.run(
        [exe, "graph", "catalog", "--json"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    (report,) = json_lines(proc.stdout)
    assert report["command"] == "graph catalog"


def test_module_invocation_matches_dispatch():
    proc = subprocess.run(
        [sys.executable, "-m", "amalgamlab.cli", "action", "classify",
         "--pairs", "4", "--json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    (report,) = json_lines(proc.stdout)
    assert report["checks"][0]["details"]["level"] == "semiprimitive"
