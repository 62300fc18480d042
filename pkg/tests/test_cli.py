"""Command-line interface, exercised in process via main(argv)."""

import json

import pytest

import hforest.acceptance
from hforest.cli import main
from hforest.forest import forest_from_json, h_equiv
from hforest.nested import parse_term


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--lhs", "0|1", "--rhs", "0*1")
    assert code == 0
    assert json.loads(out) == {"h_leq": True, "h_geq": False}


def test_meet_join_normalize(capsys):
    code, out, _ = run(capsys, "meet", "--lhs", "0*1", "--rhs", "1*0")
    assert code == 0
    assert h_equiv(parse_term(out.strip()), parse_term("0|1"))

    code, out, _ = run(capsys, "join", "--lhs", "0", "--rhs", "0")
    assert code == 0 and out.strip() == "0"

    code, out, _ = run(capsys, "normalize", "--forest", "0*0*1")
    assert code == 0 and out.strip() == "0*1"


def test_parse_emit_modes(capsys):
    code, out, _ = run(capsys, "parse", "--forest", "0*(1|2)", "--emit", "json")
    assert code == 0
    f = forest_from_json(json.loads(out))
    assert f == parse_term("0*(1|2)")

    code, out, _ = run(capsys, "parse", "--forest", out.strip(),
                       "--emit", "term")
    assert code == 0 and out.strip() == "0*(1|2)"

    code, out, _ = run(capsys, "parse", "--forest", "0*1", "--emit", "dot")
    assert code == 0 and out.startswith("digraph")


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--forest", "1*0*1")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "Tbar" and data["index"] == "2"

    code, out, _ = run(capsys, "classify", "--forest", "s(0*1)",
                       "--bound", "8", "--emit", "term")
    assert code == 0 and out.strip() == "T[w]"

    code, _, err = run(capsys, "classify", "--forest", "bot")
    assert code == 1 and "domain error" in err


def test_canonical(capsys):
    code, out, _ = run(capsys, "canonical", "--alpha", "w", "--emit", "term")
    assert code == 0 and out.strip() == "s(0*1)"

    code, out, _ = run(capsys, "canonical", "--alpha", "2",
                       "--polarity", "bar", "--emit", "term")
    assert code == 0 and out.strip() == "1*0*1"


def test_flatten(capsys):
    code, out, _ = run(capsys, "flatten", "--forest", "s(0|1)")
    assert code == 0
    data = json.loads(out)
    assert data["size"] == 2 and data["depth"] == 2
    assert sorted(data["labels"]) == [0, 1]
    assert sorted(map(tuple, data["orders"][1])) == [(0, 0), (1, 1)]


def test_dh_check(capsys):
    code, out, _ = run(
        capsys, "dh-check", "--space", "chain:2", "--base", "upsets",
        "--partition", '{"labels": [0, 1]}', "--forest", "0*1")
    assert code == 0
    data = json.loads(out)
    assert data["member"] is True and data["witness"]

    code, out, _ = run(
        capsys, "dh-check", "--space", "chain:2", "--base", "upsets",
        "--partition", '{"labels": [1, 0]}', "--forest", "0*1")
    assert code == 0 and json.loads(out) == {"member": False}


def test_fh_check(capsys):
    levels = json.dumps([
        [[], [1], [0, 1]],
        [[], [0], [1], [0, 1]],
    ])
    code, out, _ = run(
        capsys, "fh-check", "--space", "chain:2", "--omega-base", levels,
        "--partition", '{"labels": [1, 0]}', "--forest", "s(0|1)")
    assert code == 0 and json.loads(out) == {"member": True}


def test_reduce_check(capsys):
    code, out, _ = run(capsys, "reduce-check", "--space", "chain:3",
                       "--base", "upsets")
    assert code == 0
    assert json.loads(out) == {"reduction_property": True}

    code, out, _ = run(
        capsys, "reduce-check", "--space", "chain:2", "--base", "upsets",
        "--partition", '{"labels": [1, 0]}', "--forest", "1*0")
    assert code == 0
    data = json.loads(out)
    assert data["member"] and data["reduced"] and data["reduced_family"]

    code, out, _ = run(capsys, "reduce-check", "--space", "diamond",
                       "--base", "upsets")
    assert code == 0
    assert json.loads(out) == {"reduction_property": False}


def test_degrees(capsys):
    code, out, _ = run(capsys, "degrees", "--space", "chain:2", "--k", "2")
    assert code == 0
    assert len(json.loads(out)["degrees"]) == 4

    code, out, _ = run(capsys, "degrees", "--space", "antichain:2",
                       "--emit", "dot")
    assert code == 0 and out.startswith("digraph")


def test_report(capsys):
    code, out, _ = run(capsys, "report", "--space", "chain:2",
                       "--base", "upsets", "--forest", "0*1",
                       "--forest", "1*0")
    assert code == 0
    data = json.loads(out)
    assert len(data["levels"]) == 2

    code, out, _ = run(capsys, "report", "--space", "chain:2",
                       "--base", "upsets", "--forest", "0*1",
                       "--emit", "dot")
    assert code == 0 and out.startswith("digraph")


def test_file_input(tmp_path, capsys):
    path = tmp_path / "forest.term"
    path.write_text("0*1\n")
    code, out, _ = run(capsys, "normalize", "--forest", str(path))
    assert code == 0 and out.strip() == "0*1"


def test_exit_codes(capsys):
    code, _, err = run(capsys, "parse", "--forest", "0*(1")
    assert code == 2 and "syntax error" in err

    code, _, err = run(capsys, "canonical", "--alpha", "w^")
    assert code == 2 and "syntax error" in err

    code, _, err = run(capsys, "dh-check", "--space", "chain:2",
                       "--base", "upsets",
                       "--partition", '{"labels": [0, 1, 0]}',
                       "--forest", "0*1")
    assert code == 1 and "domain error" in err

    code, _, err = run(capsys, "degrees", "--space", "antichain:6")
    assert code == 1 and "domain error" in err

    with pytest.raises(SystemExit):
        main(["no-such-verb"])


def test_selftest_fast(capsys):
    code, out, _ = run(capsys, "selftest", "--scope", "fast")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"A1", "A2", "A3", "A4"}
    assert all(entry["ok"] for entry in data.values())


def test_selftest_reports_failure(capsys, monkeypatch):
    real_meet = hforest.acceptance.meet

    def broken_meet(f, g):
        m = real_meet(f, g)
        return () if f and g and m else m

    monkeypatch.setattr(hforest.acceptance, "meet", broken_meet)
    code, out, err = run(capsys, "selftest", "--scope", "fast")
    assert code == 1
    assert "A2" in err
    assert json.loads(out)["A2"]["ok"] is False
