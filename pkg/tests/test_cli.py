import csv
import io
import json
import subprocess
import sys

import pytest

from primetuples.cli import CONFIG_ENV, main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), stdout=buf)
    return code, buf.getvalue()


def jsonl(*argv):
    code, out = run("--format", "jsonl", *argv)
    assert code == 0
    return [json.loads(line) for line in out.splitlines()]


def test_classify_special():
    (rec,) = jsonl("classify", "3", "7")
    assert rec["kind"] == "twin"
    assert rec["class"] == "II" and rec["special"] is True and rec["a"] is None
    assert rec["distance"] == 4


def test_classify_ordinary():
    (rec,) = jsonl("classify", "29", "31")
    assert (rec["class"], rec["a"], rec["special"]) == ("I", 15, False)


def test_pattern_anchored():
    (rec,) = jsonl("pattern", "--gaps", "2,2")
    assert rec["kind"] == "pattern" and rec["status"] == "anchored"
    assert rec["exceptional"] == [[3, 5, 7]]
    assert rec["distances"] == [2, 2]


def test_pattern_quartet_reports_rule():
    (rec,) = jsonl("pattern", "--gaps", "6,2,2")
    assert rec["status"] == "blocked" and rec["paper_rule"] == "new_A" and rec["witness"] == 3


def test_search_distances_are_full():
    recs = jsonl("search", "--gaps", "6,6,6", "--from", "3", "--to", "700")
    got = [r["base"] for r in recs]
    assert {5, 11, 41, 61, 251, 641} <= set(got)
    assert all(r["distances"] == [6, 6, 6] and r["kind"] == "multiplet" for r in recs)
    assert recs[0]["elements"] == [5, 11, 17, 23]


def test_search_triplet_kind():
    recs = jsonl("search", "--gaps", "2,2", "--to", "1000")
    assert [(r["kind"], r["elements"]) for r in recs] == [("triplet", [3, 5, 7])]


def test_twins_and_special():
    assert [r["a"] for r in jsonl("twins", "--half-distance", "1", "--a-max", "15")] == [2, 3, 6, 9, 15]
    recs = jsonl("special", "--d-max", "8")
    assert [(r["p_lo"], r["p_hi"]) for r in recs] == [(3, 7), (3, 11), (3, 19)]
    assert {r["kind"] for r in recs} == {"special"}


def test_ap_count_verify_min_distance():
    recs = jsonl("ap", "--length", "7", "--half-step", "1470", "--from", "3", "--to", "20")
    assert recs[0]["elements"] == [17, 2957, 5897, 8837, 11777, 14717, 17657]
    recs = jsonl("count", "--gaps", "2", "--upto", "100", "--buckets", "2")
    assert [(r["upto"], r["count"]) for r in recs] == [(50, 6), (100, 8)]
    (rec,) = jsonl("verify", "--gaps", "2,2", "--upto", "100000")
    assert rec["status"] == "anchored" and rec["violations"] == []
    (rec,) = jsonl("min-distance", "--prime", "7", "--d-max", "100")
    assert rec["elements"] == [7, 157, 307, 457, 607, 757, 907]
    assert jsonl("min-distance", "--prime", "11", "--d-max", "10") == []


def test_csv_header_fixed_per_kind():
    code, out = run("--format", "csv", "search", "--gaps", "6,6,6", "--to", "100")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["kind", "base", "distances", "elements", "classes"]
    assert rows[1] == ["multiplet", "5", "6 6 6", "5 11 17 23", "I I I"]


def test_table_output():
    code, out = run("classify", "5", "17")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# twin"
    assert lines[2].split()[:5] == ["5", "17", "12", "III", "5"]


@pytest.mark.parametrize(
    "argv",
    [
        ["pattern", "--gaps", "2,x"],
        ["pattern", "--gaps", "2,3"],
        ["search", "--gaps", "2", "--to", "10", "--bogus"],
        ["nosuch"],
        ["search", "--gaps", "2", "--to", "10", "--jobs", "0"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2
    assert capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["min-distance", "--prime", "9", "--d-max", "5"],
        ["classify", "3", "9"],
        ["classify", "3", "6"],
        ["search", "--gaps", "2", "--to", str(2**62 + 2)],
        ["verify", "--gaps", "6,6", "--upto", "100"],
    ],
)
def test_constraint_errors_exit_3(argv, capsys):
    code, _ = run(*argv)
    assert code == 3
    assert capsys.readouterr().err.startswith("error:")


def test_config_file_and_env(tmp_path, monkeypatch):
    cfg = tmp_path / "pt.conf"
    cfg.write_text("# settings\nformat = jsonl\nsegment_slots = 64\nsearch_cap = 1000\n")
    monkeypatch.setenv(CONFIG_ENV, str(cfg))
    code, out = run("search", "--gaps", "2", "--to", "31")
    assert code == 0 and json.loads(out.splitlines()[0])["base"] == 3
    # flags override the file
    code, out = run("--format", "csv", "search", "--gaps", "2", "--to", "31")
    assert out.startswith("kind,base")
    code, _ = run("search", "--gaps", "2", "--to", "5000")
    assert code == 3


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.conf"
    cfg.write_text("colour = blue\n")
    code, _ = run("--config", str(cfg), "classify", "3", "5")
    assert code == 2


def test_jobs_do_not_change_output(tmp_path):
    cfg = tmp_path / "small.conf"
    cfg.write_text("segment_slots = 4096\n")
    outs = [
        run("--config", str(cfg), "--format", "jsonl", "search", "--gaps", "6,6,6", "--to", "200000", "--jobs", j)[1]
        for j in ("1", "3")
    ]
    assert outs[0] == outs[1] and outs[0]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "primetuples", "--format", "jsonl", "classify", "7", "11"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["class"] == "II"
