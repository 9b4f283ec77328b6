from __future__ import annotations

import json

import pytest

from gammaconf.cli import UsageError, emit_table, main, parse_cli, table_from_json
from gammaconf.scalar import Q, ONE, const


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_bracket_command():
    cmd = parse_cli(["bracket", "sin", "A[1;0]", "A[1;1]", "--q", "q"])
    assert (cmd.subcommand, cmd.algebra, cmd.q) == ("bracket", "sin", (Q,))
    assert cmd.args == ["A[1;0]", "A[1;1]"]


def test_parse_axioms_command():
    cmd = parse_cli(["axioms", "gc1", "--group", "Z", "--range", "3"])
    assert (cmd.algebra, cmd.group, cmd.range) == ("gc1", "Z", 3)
    cmd = parse_cli(["axioms", "gc1(Z/4)"])
    assert (cmd.algebra, cmd.group) == ("gc1", "Z/4")


def test_range_from_environment(monkeypatch):
    monkeypatch.setenv("GC_RANGE", "2")
    assert parse_cli(["table", "sin"]).range == 2
    assert parse_cli(["table", "sin", "--range", "3"]).range == 3


@pytest.mark.parametrize("argv", [
    ["bracket", "nosuch", "A[1;0]", "A[1;1]"],
    ["frobnicate"],
    ["table", "sin", "--range", "-1"],
    ["bracket", "sin", "A[1;0]", "A[1;1]", "--q", "q +"],
    ["bracket", "sin", "A[1;0]", "A[1;1]", "--q", "1/0"],
    ["bracket", "sin", "A[1;0", "A[1;1]"],
    ["axioms", "gc1", "--group", "Q"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_unknown_name_lists_known(capsys):
    code, _, err = run(capsys, "bracket", "nosuch", "A[1;0]", "A[1;1]")
    assert code == 2
    assert "sin" in err and "vector_sin" in err and "ex52a" in err
    with pytest.raises(UsageError):
        parse_cli(["bracket", "nosuch", "A[1;0]", "A[1;1]"])


def test_bracket_and_product(capsys):
    assert run(capsys, "bracket", "sin", "A[1;0]", "A[1;1]", "--q", "q")[1].strip() == "(q - 1)*A[2;1]"
    assert run(capsys, "product", "sin", "A[2]", "T^-2", "A[3]")[1].strip() == "(T^-2)A[5]"
    assert run(capsys, "product", "gc1", "a[2]", "T^3", "a[3]", "--group", "Z")[1].strip() == "-a[5]"


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0 and "ex52d_display" in out and "Tconj" in out


def test_axioms_subcommand(capsys):
    code, out, _ = run(capsys, "axioms", "gc1", "--group", "Z", "--range", "2")
    assert code == 0
    assert out.count(": pass") == 6


def _entry(doc, left, right):
    for e in doc["entries"]:
        if (e["left"], e["right"]) == (left, right):
            return e["result"]
    return None


def test_sin_table_entry():
    doc = emit_table(parse_cli(["table", "sin", "--range", "2"]))
    res = _entry(doc, "A[1;0]", "A[1;1]")
    assert res == [{"family": "A", "index": [2], "mode": 1, "coefficient": "q - 1"}]
    keys = [(e["left"], e["right"]) for e in doc["entries"]]
    assert len(keys) == len(set(keys))


def test_vector_sin_table_entry():
    doc = emit_table(parse_cli(["table", "vector_sin", "--N", "2", "--q", "2,3", "--range", "1"]))
    res = _entry(doc, "a[1,0;1]", "a[0,1;1]")
    # (2^{1*1} * 3^0 - 2^0 * 3^{1*1}) = -1
    assert res == [{"family": "a", "index": [1, 1], "mode": 2, "coefficient": "-1"}]
    assert doc["header"]["character"] == "2,3"


def test_table_json_is_deterministic_and_round_trips(capsys):
    argv = ["table", "ex33", "--range", "1", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    doc = table_from_json(a)
    raw = json.loads(a)
    for e, r in zip(doc["entries"], raw["entries"]):
        for t, rt in zip(e["result"], r["result"]):
            assert t["coefficient"].render() == rt["coefficient"]
    assert raw["header"]["schema"] == "gammaconf.table/1"


def test_tilde_table_round_trips_in_p(capsys):
    _, out, _ = run(capsys, "table", "ex33_tilde", "--range", "1", "--format", "json")
    doc = table_from_json(out)
    assert doc["header"]["var"] == "p"
    assert all(t["coefficient"] for e in doc["entries"] for t in e["result"])


def test_oracle_diff_exit_codes(capsys):
    code, out, _ = run(capsys, "oracle-diff", "sin", "qtorus", "--range", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["discrepancies"]["records"] == []
    code, _, _ = run(capsys, "oracle-diff", "pdiff_minus", "pdiff", "--range", "2")
    assert code == 1


def test_locality_subcommand(capsys):
    code, out, _ = run(capsys, "locality", "sin", "A[1]", "A[1]", "--window", "6")
    assert code == 0 and "remainder zero" in out and "True" in out
    code, _, _ = run(capsys, "locality", "sin", "A[1]", "A[1]", "--window", "0")
    assert code == 1


def test_suite_literal_table_is_report_only(capsys, tmp_path):
    code, _, _ = run(capsys, "suite", "--algebra", "ex52a", "--out", str(tmp_path))
    assert code == 0
    disc = json.loads((tmp_path / "discrepancies.json").read_text())
    assert disc
    assert (tmp_path / "suite_report.json").exists()


def test_suite_negative_control_fails(capsys, tmp_path):
    code, out, _ = run(capsys, "suite", "--algebra", "sin", "--negative-control", "--out", str(tmp_path))
    assert code == 1
    assert "[FAIL]" in out


def test_character_values_parse():
    cmd = parse_cli(["table", "vector_sin", "--N", "2", "--q", "2,3/2"])
    assert cmd.q == (const(2), const(3) / 2)
    assert ONE


def test_version_and_help_exit_zero(capsys):
    for flag in ("--version", "--help"):
        with pytest.raises(SystemExit) as exc:
            main([flag])
        assert exc.value.code == 0
    assert "gammaconf" in capsys.readouterr().out
