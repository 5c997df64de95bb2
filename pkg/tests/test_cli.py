"""Command-line behaviour: JSON contracts, determinism, exit codes, config."""

import json

from gcworkbench import cli
from gcworkbench import suites
from gcworkbench.complexes import complex_differential
from gcworkbench.graphs import GraphVector, k4, key_str, three_star
from gcworkbench.suites import SuiteReport, _check


def run_json(capsys, argv):
    code = cli.run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----------------------------------------------------------------- #
#  happy paths
# ----------------------------------------------------------------- #


def test_enumerate_connected_trivalent_four_vertex_classes(capsys):
    code, out, _ = run_json(capsys, [
        "enumerate", "--colour", "one", "--blacks", "4", "--edges", "6",
        "--connected", "--trivalent-black"])
    assert code == 0
    blob = json.loads(out)
    assert blob["count"] == 1
    assert blob["classes"] == [key_str(k4())]
    assert blob["flags"] == ["connected", "trivalent_black"]


def test_enumerate_gc2_shorthand_matches_the_two_flags(capsys):
    _, out_a, _ = run_json(capsys, [
        "enumerate", "--colour", "one", "--vertices", "5", "--edges", "8", "--gc2"])
    _, out_b, _ = run_json(capsys, [
        "enumerate", "--colour", "one", "--vertices", "5", "--edges", "8",
        "--connected", "--trivalent-black"])
    assert json.loads(out_a)["classes"] == json.loads(out_b)["classes"]


def test_delta_output_matches_the_library(capsys):
    key = key_str(three_star())
    code, out, _ = run_json(capsys, [
        "delta", "--complex", "def_ass_graphs", "--graph", key])
    assert code == 0
    blob = json.loads(out)
    direct = complex_differential("def_ass_graphs",
                                  GraphVector.single(three_star()))
    got = {t["coeff"] for t in blob["output"]}
    want = {str(c) for _, c in direct.items()}
    assert len(blob["output"]) == len(direct.terms)
    assert got == want


def test_bracket_of_one_colour_edges_cancels(capsys):
    code, out, _ = run_json(capsys, [
        "bracket", "--complex", "fgc2",
        "--left", "c:one;v:0,2;e:(b1,b2)", "--right", "c:one;v:0,2;e:(b1,b2)"])
    assert code == 0
    assert json.loads(out)["output"] == []


def test_cohomology_of_the_connected_trivalent_complex(capsys):
    code, out, _ = run_json(capsys, [
        "cohomology", "--complex", "gc2", "--degree", "0", "--max-vertices", "4"])
    assert code == 0
    assert json.loads(out)["dimension"] == 1


def test_verify_reports_passing_suite_with_times_on_stderr(capsys):
    code, out, err = run_json(capsys, ["verify", "mc-gamma0"])
    assert code == 0
    blob = json.loads(out)
    assert blob["passed"] is True
    assert all(c["status"] == "pass" for c in blob["checks"])
    assert "# mc-gamma0:" in err
    assert "#" not in out


def test_weight_includes_the_seed_and_exact_zeroes(capsys):
    code, out, _ = run_json(capsys, [
        "weight", "--graph", "c:bi-ord;v:2,1;e:(w1,b1)", "--samples", "50",
        "--seed", "7"])
    assert code == 0
    blob = json.loads(out)
    assert blob["seed"] == 7
    assert blob["value"] == 0.0 and blob["samples"] == 0
    assert blob["converged"] is True


def test_represent_evaluates_the_action_generator(capsys):
    code, out, _ = run_json(capsys, [
        "represent", "--graph", "c:bi-ord;v:1,1;e:(w1,b1)", "--dim", "2",
        "--arg", "x1 x2", "--black-arg", "p1 p2"])
    assert code == 0
    blob = json.loads(out)
    assert blob["result"] == "x2 p2 + - x1 p1"


def test_gauge_by_the_cone_class_preserves_the_residual(capsys):
    code, out, _ = run_json(capsys, [
        "gauge", "--h", "cone-k4", "--truncation", "5"])
    assert code == 0
    blob = json.loads(out)
    assert blob["residual_zero"] is True
    assert blob["truncation"] == 5
    assert blob["result"]["one_colour"]


def test_project_detects_ideal_membership(capsys):
    code, out, _ = run_json(capsys, [
        "project", "--ideal", "I_bb_prime",
        "--graph", "c:bi-ord;v:1,2;e:(w1,b1)(b1,b2)"])
    assert code == 0
    blob = json.loads(out)
    assert blob["in_ideal"] is True
    assert blob["representative"] == []


# ----------------------------------------------------------------- #
#  determinism and formatting
# ----------------------------------------------------------------- #


def test_identical_invocations_emit_identical_bytes(capsys):
    argv = ["weight", "--graph", "c:bi-ord;v:3,1;e:(w1,b1)(w2,b1)(w3,b1)",
            "--samples", "2000", "--seed", "3"]
    _, first, _ = run_json(capsys, argv)
    _, second, _ = run_json(capsys, argv)
    assert first == second
    assert json.loads(first)["samples"] == 2000


def test_pretty_flag_changes_layout_but_not_content(capsys):
    argv = ["enumerate", "--colour", "one", "--blacks", "4", "--edges", "6"]
    _, compact, _ = run_json(capsys, argv)
    _, pretty, _ = run_json(capsys, argv + ["--pretty"])
    assert compact != pretty
    assert "\n  " in pretty
    assert json.loads(compact) == json.loads(pretty)


def test_config_file_fills_gaps_and_flags_win(capsys, tmp_path):
    conf = tmp_path / "wb.conf"
    conf.write_text("# sampling\nsamples = 1500\nseed = 4\n")
    argv = ["weight", "--graph", "c:bi-ord;v:2,0;e:", "--config", str(conf)]
    _, out, _ = run_json(capsys, argv)
    blob = json.loads(out)
    assert blob["samples"] == 1500 and blob["seed"] == 4
    _, out, _ = run_json(capsys, argv + ["--samples", "800"])
    blob = json.loads(out)
    assert blob["samples"] == 800 and blob["seed"] == 4


def test_malformed_config_is_a_usage_error(capsys, tmp_path):
    conf = tmp_path / "bad.conf"
    conf.write_text("samples 1500\n")
    code, _, err = run_json(capsys, [
        "weight", "--graph", "c:bi-ord;v:2,0;e:", "--config", str(conf)])
    assert code == 2
    assert "error:" in err


# ----------------------------------------------------------------- #
#  exit codes
# ----------------------------------------------------------------- #


def test_usage_errors_exit_two(capsys):
    assert cli.run(["enumerate", "--colour", "bi-ord", "--edges", "1"]) == 2
    assert cli.run(["verify", "no-such-suite"]) == 2
    assert cli.run(["delta", "--complex", "mac",
                    "--graph", "c:one;v:0,2;e:(b1,b2)"]) == 2
    assert cli.run(["bracket", "--complex", "mac",
                    "--left", "c:one;v:0,2;e:(b1,b2)",
                    "--right", "c:one;v:0,2;e:(b1,b2)"]) == 2
    assert cli.run(["no-such-command"]) == 2
    capsys.readouterr()


def test_failing_suite_exits_one(capsys, monkeypatch):
    def stub(opts):
        return SuiteReport("stub", {}, [_check("always-fails", False, "boom")])

    monkeypatch.setitem(suites.SUITES, "stub", stub)
    code, out, _ = run_json(capsys, ["verify", "stub"])
    assert code == 1
    blob = json.loads(out)
    assert blob["passed"] is False
    assert blob["checks"][0]["witness"] == "boom"


def test_report_json_excludes_wall_times(capsys):
    code, out, _ = run_json(capsys, ["verify", "willwacher-chain"])
    assert code == 0
    blob = json.loads(out)
    assert set(blob) == {"suite", "caps", "checks", "passed"}
