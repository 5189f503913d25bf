import json
import subprocess
import sys
from pathlib import Path

import pytest

from froblie.cli import (DESK_SCALE_U, EXIT_COUNTEREXAMPLE, EXIT_HYPOTHESIS, EXIT_OK,
                         EXIT_PARSE, RunConfig, algebra_to_json, dumps_algebra, main,
                         parse_algebra, parse_algebra_text, run)
from froblie.errors import ParseError
from froblie.fdlie import check_algebra
from froblie.fixtures import (heisenberg, heisenberg_kernel_regular, heisenberg_rational,
                              heisenberg_stack, regular_septic)

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def cli(capsys, *argv):
    status = main([str(a) for a in argv])
    return status, capsys.readouterr().out


def field_line(out, key):
    for line in out.splitlines():
        if line.strip().startswith(key + " "):
            return line.split(None, len(key.split()))[-1].strip()
    raise KeyError(key)


@pytest.mark.parametrize("name,build", [
    ("heisenberg", heisenberg), ("heisenberg_rational", heisenberg_rational),
    ("heisenberg_kernel_regular", heisenberg_kernel_regular),
    ("heisenberg_stack3", lambda: heisenberg_stack(3)), ("regular_septic", regular_septic)])
def test_fixture_files_match_python_fixtures(name, build):
    alg, action = parse_algebra(FIXTURES / f"{name}.json")
    ref_alg, ref_action = build()
    assert alg.table == ref_alg.table and alg.field.spec == ref_alg.field.spec
    assert action.phi == ref_action.phi and action.h == ref_action.h
    d, e = action.descriptor, ref_action.descriptor
    assert (d.n, d.q, d.r) == (e.n, e.q, e.r)
    assert check_algebra(alg) == []
    text = dumps_algebra(algebra_to_json(alg, action, name))
    assert parse_algebra_text(text)[0].table == alg.table
    assert json.loads(text) == json.loads((FIXTURES / f"{name}.json").read_text())


def test_validate_heisenberg(capsys):
    status, out = cli(capsys, "validate", FIXTURES / "heisenberg.json")
    assert status == EXIT_OK
    assert field_line(out, "m") == "1" and field_line(out, "c") == "1"
    assert "status          ok" in out


def test_validate_jacobi_violation(capsys):
    status, out = cli(capsys, "validate", FIXTURES / "jacobi_violation.json")
    assert status == EXIT_COUNTEREXAMPLE
    assert "jacobi violation at (1, 2, 3)" in out


def test_truncated_file(capsys):
    status, out = cli(capsys, "validate", FIXTURES / "truncated.json")
    assert status == EXIT_PARSE and "line 10" in out
    with pytest.raises(ParseError) as info:
        parse_algebra(FIXTURES / "truncated.json")
    assert info.value.line == 10
    with pytest.raises(ParseError):
        parse_algebra(FIXTURES / "missing.json")
    with pytest.raises(ParseError) as info:
        parse_algebra_text('{"dim": 2, "field": {"kind": "rational"},\n "brackets": [],\n'
                           ' "phi": [["1"]], "frobenius": {"n": 2}}')
    assert info.value.line == 3


def test_hypothesis_errors(capsys):
    status, out = cli(capsys, "decompose", FIXTURES / "char_divides_n.json")
    assert status == EXIT_HYPOTHESIS and "--sylow" in out
    status, out = cli(capsys, "decompose", FIXTURES / "char_divides_n.json", "--sylow")
    assert status == EXIT_OK
    status, out = cli(capsys, "validate", FIXTURES / "char_divides_q.json")
    assert status == EXIT_HYPOTHESIS and "divides q" in out
    status, out = cli(capsys, "tower", FIXTURES / "heisenberg.json", "--T", 2)
    assert status == EXIT_HYPOTHESIS and "--U" in out
    assert DESK_SCALE_U < 21
    assert main(["tower", str(FIXTURES / "heisenberg.json"), "--U", "0"]) == EXIT_HYPOTHESIS


def test_decompose_heisenberg(capsys):
    status, out = cli(capsys, "decompose", FIXTURES / "heisenberg.json")
    assert status == EXIT_OK and "[1, 1, 1]" in out


def test_tower_heisenberg(capsys):
    status, out = cli(capsys, "tower", FIXTURES / "heisenberg.json", "--T", 2, "--U", 3)
    assert status == EXIT_OK
    assert "[Z]" in out and "[levels]" in out
    assert field_line(out, "nesting") == "ok"


def test_tower_stack_and_verify(capsys):
    path = FIXTURES / "heisenberg_stack3.json"
    status, out = cli(capsys, "tower", path, "--T", 2, "--U", 3)
    assert status == EXIT_OK and field_line(out, "nilpotency class") == "2"
    status, out = cli(capsys, "verify-z", path, "--T", 2, "--U", 3)
    assert status == EXIT_OK
    status, out = cli(capsys, "tower", FIXTURES / "heisenberg_kernel_regular.json",
                      "--T", 2, "--U", 3)
    assert status == EXIT_OK and field_line(out, "codim") == "0"


def test_orbits_and_mkhsh(capsys):
    status, out = cli(capsys, "orbits", 7, 3, 2)
    assert status == EXIT_OK and "[1, 2, 4]" in out and "[3, 6, 5]" in out
    status, out = cli(capsys, "orbits", 7, 3, 3)
    assert status == EXIT_COUNTEREXAMPLE
    status, out = cli(capsys, "mkhsh", "--n", 3, "--q", 2, "--r", 2, "--slots", "1,2")
    assert status == EXIT_OK and field_line(out, "in J + I") == "yes"
    status, out = cli(capsys, "mkhsh", "--n", 7, "--q", 3, "--r", 2, "--slots", "1,1",
                      "--mode", "empirical-f", "--weight-cap", 4)
    assert status == EXIT_OK and field_line(out, "class of K/(J+I)") == "2"
    status, out = cli(capsys, "mkhsh", "--n", 3, "--q", 2, "--r", 2, "--slots", "1,0")
    assert status == EXIT_HYPOTHESIS


def test_bch_check(capsys):
    status, out = cli(capsys, "bch-check", FIXTURES / "heisenberg_rational.json")
    assert status == EXIT_OK
    status, out = cli(capsys, "bch-check", FIXTURES / "unitriangular5.json", "--samples", 10)
    assert status == EXIT_OK
    status, out = cli(capsys, "bch-check", FIXTURES / "heisenberg_stack3.json")
    assert status == EXIT_HYPOTHESIS and "FieldMismatch" in out


def test_rows_format_is_machine_readable(capsys):
    status, out = cli(capsys, "validate", FIXTURES / "heisenberg.json", "--format", "rows")
    rows = [line.split("\t") for line in out.splitlines()]
    assert status == EXIT_OK and all(len(r) == 3 for r in rows)
    assert ["invariants", "m", "1"] in rows


def test_seed_is_echoed():
    cfg = RunConfig("validate", [str(FIXTURES / "heisenberg.json")], None, None, None, None,
                    17, "text", {})
    assert "seed            17" in run(cfg)[1]


def test_reports_are_byte_identical():
    argv = [sys.executable, "-m", "froblie", "tower", str(FIXTURES / "heisenberg_stack3.json"),
            "--T", "2", "--U", "3", "--seed", "5"]
    a = subprocess.run(argv, capture_output=True, check=False)
    b = subprocess.run(argv, capture_output=True, check=False)
    assert a.returncode == b.returncode == EXIT_OK
    assert a.stdout == b.stdout and a.stdout
