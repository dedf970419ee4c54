from __future__ import annotations

import json
from importlib.resources import files

import pytest

from surf.cli import main

DATA = files("surf") / "data"


def path(name):
    return str(DATA / name)


def test_laws(capsys):
    assert main(["laws", "--kind", "poset", "--cases", "30", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "PASS absorption" in out and "FAIL" not in out


def test_run_demo(tmp_path, capsys):
    out_file = tmp_path / "trace.json"
    code = main(["run", "--system", path("cover_3_5.system.json"),
                 "--process", path("cover_3_5_demo.process.json"), "--out", str(out_file)])
    assert code == 0
    trace = json.loads(out_file.read_text())["payload"]
    assert set(trace["delta"][2]["E"]) >= {"(123,+)", "(134,+)", "(145,+)"}
    assert "context-independent: false" in capsys.readouterr().out


def test_cover(capsys):
    assert main(["cover", "--instance", path("cover_demo.instance.json")]) == 0
    assert capsys.readouterr().out.startswith("2-cover: true")
    assert main(["cover", "--instance", path("cover_demo.instance.json"), "--k", "0"]) == 1
    assert main(["cover", "--instance", path("cover_demo.instance.json"), "--parallel"]) == 0


def test_morphism(capsys):
    args = ["morphism", "--from", path("cover_1_3.system.json"), "--to", path("cover_1_4.system.json"),
            "--map", path("cover_1_3_to_1_4.morphism.json")]
    assert main(args + ["--strong", "exhaustive"]) == 0
    assert "strong: true" in capsys.readouterr().out
    assert main(args + ["--strong", "sample:50"]) == 2  # sampling needs a seed


def test_transitions(tmp_path):
    dot = tmp_path / "ff.dot"
    assert main(["transitions", "--system", path("flipflop.system.json"), "--dot", str(dot)]) == 0
    assert dot.read_text().count("->") == 4


def test_validate_and_errors(tmp_path, capsys):
    names = [p.name for p in DATA.iterdir() if p.name.endswith(".json")]
    assert main(["validate", *[path(n) for n in names]]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["validate", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_emit(tmp_path):
    out = tmp_path / "b.json"
    assert main(["emit", "cover-background", "--m", "1", "--n", "2", "--out", str(out)]) == 0
    assert main(["validate", str(out)]) == 0


def test_bad_arguments():
    with pytest.raises(SystemExit):
        main(["laws", "--kind", "poset"])
