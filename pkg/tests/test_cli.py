"""The command-line surface: argument handling, output formats, exit codes,
and cache behavior observable through --stats."""

import csv
import io
import json

import pytest

from tangentcount import gw
from tangentcount.cli import main, parse_constraints, parse_degree


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_degree():
    assert parse_degree("3", "cp2") == 3
    assert parse_degree("2,1", "p1xp1") == (2, 1)
    for bad, space in [("2,1", "cp2"), ("x", "cp2"), ("-1", "cp2"),
                       ("3", "p1xp1"), ("1,-2", "p1xp1")]:
        with pytest.raises(ValueError):
            parse_degree(bad, space)


def test_parse_constraints():
    assert parse_constraints("(8)") == ((8,),)
    assert parse_constraints("(1);(1);(3)") == ((1,), (1,), (3,))
    assert parse_constraints(" (2,1) ; (1,1) ") == ((2, 1), (1, 1))
    for bad in ["", "8", "(8", "()", "(a)", "(0)", "(1)(2)"]:
        with pytest.raises(ValueError):
            parse_constraints(bad)


def test_compute_plain(capsys):
    code, out, err = run(capsys, "compute", "--space", "cp2", "-d", "3",
                         "-c", "(8)", "--no-cache")
    assert code == 0
    assert out.strip() == "4"


def test_compute_canonicalizes_rows(capsys):
    _, sorted_out, _ = run(capsys, "compute", "-d", "4", "-c", "(9,1,1)",
                           "--no-cache")
    _, shuffled_out, _ = run(capsys, "compute", "-d", "4", "-c", "(1,9,1)",
                             "--no-cache")
    assert sorted_out == shuffled_out
    assert sorted_out.strip() == "1"


def test_compute_hat(capsys):
    code, out, _ = run(capsys, "compute", "-d", "3", "-c", "(1,1);(1);(1);(1);(1);(1);(1)",
                       "--hat", "--no-cache")
    assert code == 0
    assert out.strip() == "2"


def test_compute_off_shell_warns(capsys):
    code, out, err = run(capsys, "compute", "-d", "2", "-c", "(3)",
                         "--no-cache")
    assert code == 0
    assert out.strip() == "0"
    assert "vanishes" in err


def test_compute_quadric(capsys):
    code, out, _ = run(capsys, "compute", "--space", "p1xp1", "-d", "2,1",
                       "-c", "(3);(1);(1)", "--no-cache")
    assert code == 0
    assert out.strip() == "1"


def test_compute_json_record(capsys):
    code, out, _ = run(capsys, "compute", "-d", "3", "-c", "(8)",
                       "--format", "json", "--no-cache")
    assert code == 0
    record, = json.loads(out)
    assert record == {"key": "cp2;3;(8)", "value": 4,
                      "provenance": "computed"}


def test_usage_errors_exit_two(capsys):
    for argv in [["compute", "-d", "3", "-c", "bad"],
                 ["compute", "-d", "x", "-c", "(8)"],
                 ["compute", "-d", "3,1", "-c", "(8)"],
                 ["table", "--mode", "full"],
                 ["table", "--space", "p1xp1", "-d", "3"],
                 ["matrix", "-k", "1"],
                 ["star", "(2)", "2"],
                 ["nonsense"]]:
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2
        capsys.readouterr()


def test_table_tangency_max(capsys):
    code, out, _ = run(capsys, "table", "--mode", "tangency-max",
                       "--max-d", "4", "--no-cache")
    assert code == 0
    rows = [line.split() for line in out.strip().splitlines()[1:]]
    assert [r[:3] for r in rows] == [
        ["1", "1", "1"], ["2", "1", "1"], ["3", "4", "12"],
        ["4", "26", "620"]]
    assert [r[3] for r in rows] == ["1", "3", "70/3", "525/2"]


def test_table_full_degree_one(capsys):
    code, out, _ = run(capsys, "table", "--mode", "full", "-d", "1",
                       "--no-cache")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2  # header + the single row
    assert "cp2;1;(2)" in lines[1] and lines[1].split()[1] == "1"


def test_table_full_degree_three_csv(capsys):
    code, out, _ = run(capsys, "table", "--mode", "full", "-d", "3",
                       "--format", "csv", "--no-cache")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["key"]: r["value"] for r in rows} == {
        "cp2;3;(7,1)": "1", "cp2;3;(8)": "4"}


def test_formats_carry_identical_numbers(capsys):
    values = {}
    for fmt in ("plain", "csv", "json", "markdown"):
        code, out, _ = run(capsys, "table", "--mode", "full", "-d", "4",
                           "--format", fmt, "--no-cache")
        assert code == 0
        if fmt == "json":
            values[fmt] = {r["key"]: int(r["value"])
                           for r in json.loads(out)}
        elif fmt == "csv":
            values[fmt] = {r["key"]: int(r["value"])
                           for r in csv.DictReader(io.StringIO(out))}
        elif fmt == "markdown":
            body = [line.split("|")[1:4] for line
                    in out.strip().splitlines()[2:]]
            values[fmt] = {k.strip(): int(v) for k, v, _ in body}
        else:
            body = [line.split() for line in out.strip().splitlines()[1:]]
            values[fmt] = {r[0]: int(r[1]) for r in body}
    assert (values["plain"] == values["csv"] == values["json"]
            == values["markdown"])


def test_star_plain(capsys):
    code, out, _ = run(capsys, "star", "(3,1,1)", "(2,2)")
    assert code == 0
    assert out.startswith("(3,1,1) * (2,2) = ")
    for term in ["(3,2,2,1,1)", "2 (5,2,1,1)", "4 (3,3,2,1)", "4 (5,3,1)",
                 "2 (3,3,3)"]:
        assert term in out


def test_star_json(capsys):
    code, out, _ = run(capsys, "star", "(2)", "(2)", "--format", "json")
    assert code == 0
    assert {r["key"]: r["value"] for r in json.loads(out)} == {
        "(2,2)": 1, "(4)": 1}


def test_matrix_output(capsys):
    code, out, _ = run(capsys, "matrix", "-k", "4", "--det")
    assert code == 0
    assert "det = -6" in out
    assert "(2,1,1)" in out and "(1,1,1,1)" in out
    code, out, _ = run(capsys, "matrix", "-k", "4", "--det",
                       "--format", "json")
    payload = json.loads(out)
    assert payload["entries"] == [[3, 0, 0, 0], [1, 0, 2, 0],
                                  [0, 1, 0, 1], [0, 0, 1, 1]]
    assert payload["det"] == "-6"


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-d", "3", "--no-cache")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)


def parse_stats(err):
    for line in err.splitlines():
        if line.startswith("stats: "):
            return {k: int(v) for k, v in
                    (pair.split("=") for pair in line[7:].split())}
    raise AssertionError("no stats line in %r" % err)


def test_cache_round_trip_via_stats(tmp_path, capsys):
    gw.reset()
    path = str(tmp_path / "counts.txt")
    code, out, err = run(capsys, "compute", "-d", "4", "-c", "(11)",
                         "--cache-file", path, "--stats")
    assert code == 0 and out.strip() == "26"
    assert parse_stats(err)["solves"] > 0
    gw.reset()
    code, out, err = run(capsys, "compute", "-d", "4", "-c", "(11)",
                         "--cache-file", path, "--stats", "--format", "json")
    assert code == 0
    record, = json.loads(out)
    assert record["value"] == 26
    assert record["provenance"] == "cached"
    stats = parse_stats(err)
    assert stats["solves"] == 0
    assert stats["evaluations"] == 0


def test_cache_env_variable(tmp_path, capsys, monkeypatch):
    gw.reset()
    path = str(tmp_path / "env_cache.txt")
    monkeypatch.setenv("TANGENTCOUNT_CACHE", path)
    code, out, _ = run(capsys, "compute", "-d", "3", "-c", "(8)")
    assert code == 0
    assert out.strip() == "4"
    with open(path) as handle:
        assert "ht:cp2;3;(8)\t4" in handle.read().splitlines()