import shutil
import subprocess
import sys
from importlib.resources import files
from pathlib import Path

import pytest

from sklyanin.cli import main

GOLDENS = Path(str(files("sklyanin") / "goldens"))
N2_TEXT = ("1 * b[1,1](u) * b[2,2](u-1) + (-2*u+2)/(2*u-1) * b[2,1](u) * b[1,2](u-1)"
           " + 1/(2*u-1) * b[2,2](u) * b[2,2](u-1)\n")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_n2(capsys):
    code, out, _ = run(capsys, "compute", "--n", "2", "--path", "thm", "--format", "text")
    assert code == 0 and out == N2_TEXT


@pytest.mark.parametrize("argv", [["compute", "--n", "0"], ["compute", "--n", "x"],
                                  ["compute", "--path", "nope"], ["verify", "--n", "2", "--l", "3"],
                                  ["compute", "--n", "5"], ["expand", "--order", "-1"], []])
def test_bad_arguments(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_compute_json_to_file(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert run(capsys, "compute", "--n", "2", "--format", "json", "--out", str(out))[0] == 0
    assert out.read_bytes().startswith(b'{"n":2,"path":"thm"')


def test_compute_latex(capsys):
    code, out, _ = run(capsys, "compute", "--n", "1", "--format", "latex")
    assert out == "\\left|\\begin{matrix}1\\\\1\\end{matrix}\\right|\n"


@pytest.mark.parametrize("n", [2, 3])
def test_verify_ok(capsys, n):
    code, out, _ = run(capsys, "verify", "--n", str(n))
    assert code == 0 and out.endswith("OK\n") and "[FAIL]" not in out


def test_verify_single_path(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--path", "qc", "--l", "1")
    assert code == 0 and "leading l=1: -1" in out


def test_verify_corrupted_golden(tmp_path, capsys):
    for name in ("n2.golden", "n3.golden"):
        shutil.copy(GOLDENS / name, tmp_path / name)
    p = tmp_path / "n2.golden"
    p.write_text(p.read_text().replace("1/(2*u-1) ", "-1/(2*u-1) "))
    code, out, _ = run(capsys, "verify", "--n", "2", "--goldens", str(tmp_path))
    assert code == 1 and "MISMATCH" in out and "[FAIL] golden n2.golden" in out


def test_verify_missing_golden(tmp_path, capsys):
    assert run(capsys, "verify", "--n", "2", "--goldens", str(tmp_path))[0] == 1


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--n", "2", "--order", "0", "--l", "1")
    assert code == 0
    assert out.splitlines()[-1].endswith(": -1")


def test_goldens_candidates(tmp_path, capsys):
    code, out, _ = run(capsys, "goldens", "--out", str(tmp_path), "--ranks", "2")
    assert code == 0
    cand = (tmp_path / "n2.golden.candidate").read_text()
    assert "-(2*u-2)/(2*u-1)" not in cand  # canonical text form, not the display form
    assert "(-2*u+2)/(2*u-1) | 1 2 ; 2 1 |" in cand


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--n", "2")
    assert code == 0 and len(out.splitlines()) == 8


def test_output_deterministic():
    cmd = [sys.executable, "-m", "sklyanin", "compute", "--n", "3", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")
