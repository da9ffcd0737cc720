import json
import subprocess
import sys

import pytest

from drcoreset.cli import main
from drcoreset.harness import CSV_COLUMNS
from drcoreset.instance import load_instance

from helpers import A, B, C, E


@pytest.fixture
def s2_file(tmp_path):
    path = tmp_path / "s2.json"
    path.write_text(json.dumps({
        "items": [{"id": i} for i in (A, B, C, E)],
        "function": {"kind": "modular", "values": {"0": 1, "1": 1, "2": 3, "3": 5}},
        "matroids": [{"kind": "uniform", "k": 2}],
    }))
    return path


def test_run_forced_draws(s2_file, tmp_path, capsys):
    out = tmp_path / "r.csv"
    code = main(["run", "--instance", str(s2_file), "--eps", "0.5", "--d", "1", "--adversary", "fixed:2",
                 "--draws", "0,1,2", "--trials", "1", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    row = dict(zip(CSV_COLUMNS, lines[1].split(",")))
    assert float(row["f_alg"]) == 5 and float(row["f_opt_after"]) == 6 and row["coreset_size"] == "3"
    assert "mean ratio" in capsys.readouterr().err


def test_run_generated_json_lines(capsys):
    code = main(["run", "--gen", "coverage-random-bipartite", "--n", "12", "--k", "3", "--groups", "3",
                 "--trials", "4", "--d", "2", "--format", "json-lines", "--adversary", "greedy"])
    assert code == 0
    rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert len(rows) == 4 and all(r["adversary"] == "greedy-attack" for r in rows)


def test_run_preset(capsys, tmp_path):
    assert main(["run", "--preset", "modular-p2", "--trials", "5", "--out", str(tmp_path / "p.csv")]) == 0
    assert "p=2" in capsys.readouterr().err


def test_sweep(capsys):
    code = main(["sweep", "--gen", "modular-uniform", "--n", "10", "--k", "2", "--trials", "2",
                 "--eps", "0.25,0.5", "--d", "0,1"])
    assert code == 0
    captured = capsys.readouterr()
    assert len(captured.out.splitlines()) == 1 + 4 * 2
    assert captured.err.count("mean ratio") == 4


def test_oracle(s2_file, capsys):
    assert main(["oracle", "--instance", str(s2_file), "--delete", "2"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result == {"opt": [A, E], "value": 6.0, "deleted": [C]}


def test_validate(s2_file, tmp_path, capsys):
    assert main(["validate", str(s2_file)]) == 0
    bad = json.loads(s2_file.read_text())
    bad["matroids"] = [{"kind": "partition", "groups": [[0, 99]], "capacities": [-1]}]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    assert main(["validate", str(path)]) == 1
    out = capsys.readouterr().out
    assert "99" in out and "non-positive capacity" in out
    path.write_text("{")
    assert main(["validate", str(path)]) == 2


def test_generate(tmp_path):
    out = tmp_path / "g.json"
    assert main(["generate", "--gen", "facility-random", "--n", "8", "--k", "2", "--out", str(out)]) == 0
    assert load_instance(out).n == 8


def test_errors_exit_nonzero(tmp_path, capsys):
    assert main(["run", "--instance", str(tmp_path / "missing.json")]) == 1
    assert main(["run", "--gen", "modular-uniform", "--eps", "1.5"]) == 1
    assert "error" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        main(["run"])
    assert info.value.code != 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "drcoreset", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "sweep" in proc.stdout
