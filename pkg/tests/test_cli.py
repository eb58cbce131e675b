import json
import subprocess
import sys

from cmrcover.cli import enumerate_forbidden_sets, main, sample_forbidden_sets
from cmrcover.graph import from_dot, from_json_obj

from conftest import AB

TWO_WORD = ["--alphabet", "abc", "--forbidden", "aaaa", "--forbidden", "abaa"]
RUNNING = ["--alphabet", "01", "--forbidden", "00", "--forbidden", "1101", "--forbidden", "111"]


def test_cover_summary(capsys):
    assert main(["cover", *TWO_WORD]) == 0
    out = capsys.readouterr().out
    assert "(nu_F): 5" in out
    assert "S_F irreducible: yes" in out
    assert "merged at level 3: {aaa, aba}" in out


def test_cover_json_stdout(capsys):
    assert main(["cover", *TWO_WORD, "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["nu"] == 5
    g, _ = from_json_obj(obj)
    assert len(g) == 5


def test_cover_json_file(tmp_path, capsys):
    out = tmp_path / "cover.json"
    assert main(["cover", *RUNNING, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["language_irreducible"] is False
    assert "S_F irreducible: no" in capsys.readouterr().out


def test_check_running_example(capsys):
    assert main(["check", *RUNNING]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    for name in ("incoming_labels", "delta_monotone", "failure_shortcut", "oracle_irreducibility"):
        assert f"PASS {name}" in out


def test_build_to_directory(tmp_path):
    assert main(["build", *RUNNING, "--format", "dot", "--out", str(tmp_path)]) == 0
    d, failure = from_dot((tmp_path / "automaton.dot").read_text())
    assert len(d) == 8 and len(d.sinks) == 3
    assert {d.names[s]: d.names[t] for s, t in failure.items()} == {"0": "ε", "1": "ε", "11": "1", "110": "0"}
    g, _ = from_dot((tmp_path / "presentation.dot").read_text())
    assert len(g) == 5


def test_build_json_stdout(capsys):
    assert main(["build", "--alphabet", "ab", "--forbidden", "aa"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert len(obj["automaton"]["states"]) == 3
    assert len(obj["presentation"]["edges"]) == 3


def test_input_file(tmp_path, capsys):
    path = tmp_path / "f.txt"
    path.write_text("alphabet: 0 1\n00\n11\n")
    assert main(["cover", "--input", str(path)]) == 0
    assert "(nu_F): 2" in capsys.readouterr().out


def test_export_roundtrip(tmp_path):
    assert main(["build", *RUNNING, "--format", "json", "--out", str(tmp_path)]) == 0
    dot = tmp_path / "p.dot"
    back = tmp_path / "p.json"
    assert main(["export", "--input", str(tmp_path / "presentation.json"), "--format", "dot", "--out", str(dot)]) == 0
    assert main(["export", "--input", str(dot), "--format", "json", "--out", str(back)]) == 0
    assert back.read_bytes() == (tmp_path / "presentation.json").read_bytes()


def test_sweep(tmp_path, capsys):
    out = tmp_path / "sweep.json"
    assert main(["sweep", "--alphabet", "ab", "--max-n", "3", "--max-words", "2", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["instances"] > 0
    assert report["failures"] == []
    assert all(v["fails"] == 0 for v in report["predicates"].values())


def test_errors_exit_2(capsys):
    assert main(["cover", "--alphabet", "01", "--forbidden", "00", "--forbidden", "100"]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["cover", "--alphabet", "01", "--forbidden", "0", "--forbidden", "1"]) == 2
    assert main(["cover", "--forbidden", "00"]) == 2


def test_enumerate_and_sample():
    sets = list(enumerate_forbidden_sets(AB, 2, 2))
    assert len(sets) == len({s.words for s in sets})
    assert all(not s.is_degenerate for s in sets)
    sample = list(sample_forbidden_sets(AB, 4, 2, 10, seed=1))
    assert sample == list(sample_forbidden_sets(AB, 4, 2, 10, seed=1))


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cmrcover", "cover", "--alphabet", "ab", "--forbidden", "aa"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "(nu_F): 2" in res.stdout
