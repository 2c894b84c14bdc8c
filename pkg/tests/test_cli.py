import subprocess
import sys

import pytest

from enrichsheaf.cli import main
from enrichsheaf.harness import COMMANDS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_injectivity_example(capsys):
    code, out, _ = run(capsys, "injectivity", "chain3-into-exp")
    assert code == 0
    assert "coverages enumerated: 24; images distinct: 24" in out


def test_localize_example(capsys):
    code, out, _ = run(capsys, "localize", "zmod6-S13")
    assert code == 0
    assert "A_R ≅ zmod2; oracle A[S^{-1}] ≅ zmod2; isomorphic: yes" in out


def test_counterexample_needs_no_instance(capsys):
    code, out, _ = run(capsys, "counterexample")
    assert code == 0
    assert "separating ideal <x^3>: in H_S yes, in H_T no" in out


@pytest.mark.parametrize("command", sorted(COMMANDS))
def test_every_command_passes_on_builtin_suite(capsys, command):
    code, out, _ = run(capsys, command, "builtin-suite")
    assert code == 0, out
    assert "0 failed, 0 not checked" in out


def test_machine_format(capsys):
    code, out, _ = run(capsys, "gabriel-check", "zmod6-S13", "--format", "machine")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "command=gabriel-check"
    assert all("=" in line for line in lines)
    assert "summary.failed=0" in lines


def test_cap_flag_and_env(capsys, monkeypatch):
    code, out, _ = run(capsys, "coverage-check", "chain3-into-exp", "--cap", "5")
    assert code == 1 and "[not-checked]" in out
    monkeypatch.setenv("ENRICHSHEAF_CAP", "5")
    code, out, _ = run(capsys, "coverage-check", "chain3-into-exp")
    assert code == 1 and "exceed cap 5" in out


def test_instance_errors_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.yaml"
    p.write_text("quantals: {}\n")
    code, _, err = run(capsys, "validate", str(p))
    assert code == 2 and "line 1, column 1" in err
    code, _, err = run(capsys, "validate")
    assert code == 2
    code, _, err = run(capsys, "counterexample", "--dmax", "0")
    assert code == 2


def test_failed_check_exits_1(capsys, tmp_path):
    p = tmp_path / "wrong.yaml"
    p.write_text(
        "quantales:\n  Q2: {kind: two_element}\n"
        "categories:\n  one: {base: Q2, kind: one_object}\n"
        "coverages:\n  j: {category: one, kind: families, families: {'*': []}, expect: coverage}\n"
    )
    code, out, _ = run(capsys, "coverage-check", str(p))
    assert code == 1 and "[fail]" in out


def test_console_script_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "enrichsheaf.cli", "ideals", "zmod6-S13"], capture_output=True, text=True, check=False
    )
    assert r.returncode == 0
    assert "(0), (3), (2), (1)" in r.stdout
