"""CLI end-to-end: commands, literals, exit codes, report stability."""

import json
import random
import subprocess
import sys

import pytest

from bicfam.cli import run
from bicfam.omega_sets import OmegaSet, format_set, parse_set
from bicfam.core_semigroup import Element, parse_element
from bicfam.reports import CheckReport


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def spawn(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "bicfam", *argv],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_eval_examples(capsys):
    code, out = invoke(capsys, "eval", "(0,0,[1)) * (3,5,[0))")
    assert (code, out) == (0, "(3,5,[0))\n")
    code, out = invoke(capsys, "eval", "(2,5,[1)) * (5,2,[1)) * (2,5,[1))")
    assert (code, out) == (0, "(2,5,[1))\n")
    code, out = invoke(capsys, "--family", "[0)", "--zero", "eval", "0 * (1,1,[0))")
    assert (code, out) == (0, "0\n")


def test_eval_errors(capsys):
    code, _ = invoke(capsys, "eval", "(0,0,[1)")
    assert code == 2
    code, _ = invoke(capsys, "--family", "[0)", "eval", "(0,0,[1))")
    assert code == 3


def test_closure_command(capsys):
    code, out = invoke(capsys, "--family", "[0),[2)", "closure")
    assert code == 0 and out == "[0)\n[1)\n[2)\n"
    code, out = invoke(capsys, "--family", "@all-tails", "closure")
    assert code == 0 and "@all-tails" in out
    code, out = invoke(capsys, "--family", "[0),[2)", "--format", "json", "closure")
    payload = json.loads(out)
    assert payload["members"] == ["[0)", "[1)", "[2)"]
    assert payload["flags"]["inductive"] is True


def test_closure_cap_exit_code(capsys):
    code, _ = invoke(capsys, "--family", "[0),[2)", "--cap", "2", "closure")
    assert code == 4


def test_order_cone_solve_commands(capsys):
    code, out = invoke(capsys, "order", "(2,3,[1))", "(1,2,[0))")
    assert (code, out) == (0, "true\n")
    code, out = invoke(capsys, "order", "(1,2,[0))", "(2,3,[1))")
    assert (code, out) == (0, "false\n")
    code, out = invoke(capsys, "cone", "(1,1,[1))")
    assert code == 0
    assert out.splitlines() == ["(1,1,[0))", "(1,1,[1))", "(0,0,[0))", "(0,0,[1))"]
    code, out = invoke(capsys, "--family", "[0)", "solve", "(0,1,[0))", "(2,2,[0))")
    assert (code, out) == (0, "(3,2,[0))\n")
    code, out = invoke(
        capsys, "--family", "{0},{}", "--format", "json", "solve", "(0,0,{0})", "0"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["complete"] is False and "0" in payload["solutions"]


def test_check_pass_and_fail_exit_codes(capsys):
    code, _ = invoke(capsys, "--window", "2", "--k-bound", "2", "check", "axioms")
    assert code == 0
    code, _ = invoke(capsys, "--family", "[0)", "check", "cover")
    assert code == 3
    code, out = invoke(
        capsys,
        "--family", "[0),[1),[2),{0}+[2)",
        "--window", "2", "--k-bound", "2",
        "--format", "json",
        "check", "cover",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["reports"][0]["status"] == "fail"
    assert payload["reports"][0]["counterexamples"][0]["element"] == "(0,0,{0}+[2))"


def test_check_all_skips_inapplicable_suites(capsys):
    code, out = invoke(
        capsys,
        "--window", "1", "--k-bound", "1", "--bounds", "4",
        "--format", "json",
        "check", "all",
    )
    assert code == 0
    payload = json.loads(out)
    names = [r["suite"] for r in payload["reports"]]
    assert "axioms" in names and "cover" in names
    assert any(s["suite"] == "identities" for s in payload["skipped"])


def test_reports_byte_identical_for_fixed_seed(capsys):
    args = (
        "--family", "[0),[1)", "--window", "2", "--k-bound", "2",
        "--seed", "3", "--format", "json", "check", "topology",
    )
    _, out1 = invoke(capsys, *args)
    _, out2 = invoke(capsys, *args)
    assert out1 == out2


def test_report_json_round_trip():
    from bicfam.families import omega_closure
    from bicfam.core_semigroup import AlgebraContext, axioms_report

    ctx = AlgebraContext(omega_closure([parse_set("[0)")]))
    report = axioms_report(ctx, 1, 1).with_wall(12.5)
    text = report.to_json()
    back = CheckReport.from_json(text)
    assert back.to_json() == text
    assert back.wall_ms is None and report.wall_ms == 12.5


def test_literal_round_trips_random():
    rng = random.Random(0)
    for _ in range(500):
        oset = OmegaSet.from_bits(rng.getrandbits(10), 10, rng.random() < 0.5)
        assert parse_set(format_set(oset)) == oset
        element = Element(rng.randrange(50), rng.randrange(50), oset)
        assert parse_element(str(element)) == element


def test_export_dot_frozen_small_windows(capsys):
    code, out = invoke(capsys, "--family", "[0)", "--window", "1", "export-dot")
    assert code == 0
    assert out == (
        "digraph order {\n"
        '  "(0,0,[0))";\n'
        '  "(0,1,[0))";\n'
        '  "(1,0,[0))";\n'
        '  "(1,1,[0))";\n'
        '  "(1,1,[0))" -> "(0,0,[0))";\n'
        "}\n"
    )
    code, out = invoke(capsys, "--window", "0", "export-dot")
    assert code == 0
    assert '"(0,0,[1))" -> "(0,0,[0))"' in out
    assert out.count("->") == 1
    code, out = invoke(
        capsys, "--family", "[0)", "--window", "2", "export-dot", "--target", "idempotents"
    )
    assert code == 0
    assert '"(0,1,[0))"' not in out
    assert '"(2,2,[0))" -> "(1,1,[0))"' in out


def test_subprocess_exit_codes_end_to_end():
    code, out, _ = spawn("eval", "(1,1,[1)) * (0,2,[0))")
    assert code == 0 and out == "(1,3,[1))\n"
    code, _, err = spawn("eval", "(1,1,[1) * (0,2,[0))")
    assert code == 2 and "error" in err
    code, _, err = spawn("--family", "[0)", "check", "cover")
    assert code == 3
    code, _, _ = spawn(
        "--family", "[0),[1),[2),{0}+[2)", "--window", "2", "--k-bound", "2", "check", "cover"
    )
    assert code == 1
    code, _, err = spawn("--family", "[0),[2)", "--cap", "2", "closure")
    assert code == 4
    code, _, _ = spawn("export-dot", "--window", "-1")
    assert code == 2


def test_family_file_source(tmp_path, capsys):
    path = tmp_path / "fam.txt"
    path.write_text("# tails\n[0)\n[1)\n")
    code, out = invoke(capsys, "--family", str(path), "eval", "(0,0,[1)) * (0,5,[0))")
    assert (code, out) == (0, "(0,5,[1))\n")
    bad = tmp_path / "bad.txt"
    bad.write_text("[0)\n[2)\n")
    code, _ = invoke(capsys, "--family", str(bad), "eval", "(0,0,[0)) * (0,0,[0))")
    assert code == 3


def test_global_flags_parse_on_either_side_of_subcommand(capsys):
    before = invoke(capsys, "--family", "@all-tails", "--window", "2", "eval", "(0,1,[3)) * (2,0,[1))")
    after = invoke(capsys, "eval", "--family", "@all-tails", "--window", "2", "(0,1,[3)) * (2,0,[1))")
    assert before == after == (0, "(1,0,[2))\n")
    # a flag given after the subcommand must not be clobbered by defaults
    code, out = invoke(capsys, "closure", "--family", "[0),[2)")
    assert (code, out) == (0, "[0)\n[1)\n[2)\n")
