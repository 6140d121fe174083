import json
import re
import shlex
from pathlib import Path

import pytest

from modvals.cli import dispatch

README = Path(__file__).resolve().parents[1] / "README.md"


def run(capsys, *argv):
    code = dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


# documented examples


def test_divsum_example(capsys):
    rep = run_json(capsys, "divsum", "--level", "27", "--form", "eta:3^3/27^3+const:3", "--weight", "0", "--n", "9")
    assert rep["sums"]["9"] == "-45"
    assert all(rep["sums"][str(n)] == "0" for n in range(2, 9))


def test_minpoly_example(capsys):
    code, out, _ = run(capsys, "minpoly", "--level", "11", "--form", "example6_1", "--generator", "2")
    assert code == 0
    assert out.strip() == "[233, 22, 1]"


def test_selftest_exit_status(capsys):
    code, out, _ = run(capsys, "selftest")
    assert len(re.findall(r"^criterion", out, re.M)) == 11
    assert code == 0, out


def _readme_commands():
    text = README.read_text()
    for block in re.findall(r"```console\n(.*?)```", text, re.S):
        for line in block.splitlines():
            if line.startswith("$ modvals "):
                cmd, _, note = line[2:].partition("  # ")
                expect = int(note.split("exit ")[1]) if "exit " in note else 0
                yield cmd.strip(), expect


@pytest.mark.parametrize("cmd,expect", list(_readme_commands()))
def test_readme_examples_run(cmd, expect, capsys):
    argv = shlex.split(cmd)[1:]
    code, _, err = run(capsys, *argv)
    assert code == expect, err


# behaviour


def test_minpoly_values(capsys):
    assert run_json(capsys, "minpoly", "--level", "27", "--form", "example6_3", "--generator", "2") == [-9, 0, 0, 1]
    assert run_json(capsys, "minpoly", "--level", "11", "--form", "example6_1", "--generator", "2") == [197, 22, 1]


def test_exit_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        dispatch(["nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        dispatch(["divsum", "--form", "E4", "--n", "3"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "basis", "--level", "99")
    assert code == 1 and "level 99" in err
    code, _, err = run(capsys, "divsum", "--level", "11", "--form", "eta:1^1", "--n", "3")
    assert code == 1
    code, _, err = run(capsys, "minpoly", "--level", "1", "--form", "E4", "--generator", "1")
    assert code == 1 and "--degree-override" in err


def test_determinism(capsys):
    argv = ("basis", "--level", "27", "--m-max", "8")
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_json_uses_exact_strings(capsys):
    rep = run_json(capsys, "divsum", "--level", "11", "--form", "example6_1", "--n", "4")
    assert rep["alphas"] == ["-11/60"]
    assert rep["c"][:4] == ["0", "-12", "-12", "66"]
    table = run_json(capsys, "eis-const", "--level", "27")["table"]
    assert all(isinstance(x, str) for row in table for x in row)
    assert any(re.fullmatch(r"\[.*\]@\d+", x) for row in table for x in row)


def test_tsv_format(capsys):
    code, out, _ = run(capsys, "--format", "tsv", "divsum", "--level", "11", "--form", "example6_1", "--n", "4")
    assert code == 0
    rows = dict(line.split("\t", 1) for line in out.splitlines())
    assert rows["sums.2"] == "-22" and rows["L1"] == "2"
    code, out2, _ = run(capsys, "divsum", "--level", "11", "--form", "example6_1", "--n", "4", "--format", "tsv")
    assert out2 == out


def test_exponents_and_search(capsys):
    rep = run_json(capsys, "exponents", "--level", "27", "--form", "example6_3", "--count", "9")
    assert rep["c"] == ["0"] * 8 + ["-5"]
    rep = run_json(capsys, "exponents", "--level", "31", "--search", "3")
    assert rep["exponents"] == [0, 0, 1, 1, 1]


def test_serre_and_ef(capsys):
    rep = run_json(capsys, "serre", "--level", "1", "--form", "E4", "--count", "2")
    assert rep["ftheta"][:2] == [["0", "-1/3"], ["1", "248"]]
    rep = run_json(capsys, "ef", "--level", "11", "--form", "example6_1")
    assert rep["alphas"] == ["-11/60"]


def test_check_gtfne(capsys):
    code, out, _ = run(capsys, "check-gtfne", "--level", "27", "--form", "eta:3^3/27^3")
    assert code == 0 and json.loads(out)["zero"]
    code, out, _ = run(capsys, "check-gtfne", "--level", "11", "--form", "example6_1", "--count", "10")
    assert code == 1 and not json.loads(out)["zero"]


def test_verify(capsys):
    rep = run_json(capsys, "verify", "--level", "11", "--form", "example6_1", "--generator", "2")
    assert rep["ok"] and rep["polynomial"] == [197, 22, 1]
    code, _, err = run(capsys, "verify", "--level", "27", "--form", "example6_3", "--generator", "2")
    assert code == 1 and "lower floor" in err
    rep = run_json(capsys, "verify", "--level", "27", "--form", "example6_3", "--generator", "2", "--floor", "0.02")
    assert rep["ok"] and len(rep["points"]) == 3
