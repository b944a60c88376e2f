import io

import pytest

from core.errors import ParseError
from components.hubbard.logic import CSV_COLUMNS
from components.maxent.logic import example_state
from slocc_lab import _number, format_state_file, parse_state_file, run

EQ12_FILE = "# two modes, two fermions\nuu 0.5 0\ndd 0.5 0\n\n0D 0.5 0\nD0 0.5 0\n"


def invoke(*argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


def test_number_format():
    assert _number(0.0625) == "0.0625"
    assert _number(-0.0) == "0.0"
    assert _number(1 / 3) == "0.333333333333"


def test_invariants_of_two_mode_state(state_file):
    code, out, err = invoke("invariants", "--state", state_file(EQ12_FILE))
    assert code == 0, err
    assert out == "I0 0.0625 0.0 4 0.25\n"


def test_invariants_of_example_state(state_file):
    path = state_file(format_state_file(example_state("I2_only")))
    code, out, _ = invoke("invariants", "--state", path, "--set", "full3")
    assert code == 0
    lines = dict(line.split(" ", 1) for line in out.splitlines())
    assert list(lines) == ["I1", "I2", "I_BC", "I_AC", "I_AB", "I_ABC1", "I_ABC2", "tau"]
    assert lines["I2"].split()[0] == "0.0625"


@pytest.mark.parametrize("text,line", [
    ("uu 0.5\n", 1),
    ("uu 1 0\nux 1 0\n", 2),
    ("uu 1 0\nud a 0\n", 2),
    ("uu 1 0\nud nan 0\n", 2),
    ("uu 1 0\nuuu 1 0\n", 2),
    ("uu 1 0\nuD 1 0\n", 2),
    ("uu 1 0\n# comment\nuu 1 0\n", 3),
])
def test_parse_errors_carry_line_numbers(state_file, text, line):
    code, out, err = invoke("invariants", "--state", state_file(text))
    assert code == 2
    assert out == ""
    assert err.startswith(f"error: line {line}:")


def test_empty_state_file(state_file):
    code, _, err = invoke("invariants", "--state", state_file("# nothing\n\n"))
    assert code == 2
    assert err.startswith("error:")


def test_missing_state_file(tmp_path):
    code, _, err = invoke("invariants", "--state", str(tmp_path / "absent.state"))
    assert code == 1
    assert "absent.state" in err


def test_raw_amplitudes_are_kept():
    state = parse_state_file("uu 2 0\ndd 0 1\n", raw=True)
    assert state["uu"] == 2
    assert state["dd"] == 1j
    assert parse_state_file("uu 2 0\ndd 0 1\n").is_normalized()


def test_parse_error_type():
    with pytest.raises(ParseError) as info:
        parse_state_file("uu 1 0 0\n")
    assert info.value.line_number == 1


def test_state_file_round_trip():
    state = example_state("IABC1_only")
    assert parse_state_file(format_state_file(state), raw=True) == state


def test_maxent_writes_state_file(tmp_path):
    out = tmp_path / "i2.state"
    code, stdout, _ = invoke("maxent", "--kind", "I2_only", "--out", str(out))
    assert code == 0 and stdout == ""
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# sector")
    assert len(lines) == 5


def test_maxent_to_stdout():
    code, out, _ = invoke("maxent", "--kind", "psi_p")
    assert code == 0
    assert len(out.splitlines()) == 13


def test_usage_errors():
    assert invoke("invariants")[0] == 2
    assert invoke("maxent", "--kind", "I9_only")[0] == 2
    assert invoke("check", "--suite", "everything")[0] == 2
    assert invoke("sweep", "--bogus")[0] == 2


def test_check_maxent_suite():
    code, out, _ = invoke("check", "--suite", "maxent", "--samples", "2")
    assert code == 0
    assert out.splitlines()[-1] == "4/4 properties passed"
    assert all(line.startswith("PASS maxent.") for line in out.splitlines()[:-1])


def test_check_slocc_suite():
    code, out, _ = invoke("check", "--suite", "slocc", "--samples", "5", "--seed", "0")
    assert code == 0, out
    assert out.splitlines()[-1] == "7/7 properties passed"


def test_sweep_is_deterministic():
    argv = ("sweep", "--b-max", "2e-5", "--points", "3")
    first, second = invoke(*argv), invoke(*argv)
    assert first[0] == 0
    assert first[1] == second[1]
    lines = first[1].splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 4


def test_sweep_with_levels(tmp_path):
    out = tmp_path / "sweep.csv"
    code, _, _ = invoke("sweep", "--b-max", "1e-5", "--points", "2", "--levels", "3", "--out", str(out))
    assert code == 0
    header = out.read_text(encoding="utf-8").splitlines()[0]
    assert header.endswith("level_1,level_2,level_3")


def test_sweep_rejects_empty_grid():
    code, _, err = invoke("sweep", "--points", "0")
    assert code == 1
    assert err.startswith("error:")


@pytest.mark.slow
def test_omega_table():
    code, out, _ = invoke("omega", "--samples", "5")
    assert code == 0
    rows = [line.split() for line in out.splitlines()]
    assert len(rows) == 11
    assert rows[0][0] == "I1"
    assert all(len(row) == 5 for row in rows)
