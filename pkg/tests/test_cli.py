import csv
import json

import pytest

from octolattice import cli, fundsol


def run(tmp_path, *args):
    return cli.main(["run", *args, "--output-dir", str(tmp_path / "out"), "--cache-dir", str(tmp_path / "cache")])


def load(tmp_path, name):
    return json.loads((tmp_path / "out" / f"{name}.json").read_text())


def strip_timing(obj):
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in ("timings", "seconds")}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


@pytest.mark.parametrize("kind", ["classical", "split"])
def test_algebra_check(tmp_path, kind, capsys):
    assert run(tmp_path, "--experiment", "algebra-check", "--kind", kind) == 0
    rep = load(tmp_path, f"algebra-check_{kind}")
    assert rep["passed"] and rep["kind"] == kind
    rows = list(csv.DictReader(open(tmp_path / "out" / f"algebra-check_{kind}.csv")))
    assert rows and {r["experiment"] for r in rows} == {"algebra-check"}
    assert "PASS" in capsys.readouterr().out


def test_printed_split_table_fails(tmp_path):
    assert run(tmp_path, "--experiment", "algebra-check", "--kind", "split", "--table", "printed") == 1


def test_triples_and_weyl(tmp_path):
    assert run(tmp_path, "--experiment", "triples", "--kind", "split") == 0
    assert run(tmp_path, "--experiment", "weyl-square", "--kind", "classical") == 0


def test_stokes_report_is_deterministic(tmp_path):
    assert run(tmp_path, "--experiment", "stokes", "--kind", "classical", "--seed", "3") == 0
    first = strip_timing(load(tmp_path, "stokes_classical"))
    assert run(tmp_path, "--experiment", "stokes", "--kind", "classical", "--seed", "3") == 0
    assert strip_timing(load(tmp_path, "stokes_classical")) == first
    assert first["seeds"] == [3]


def test_fundsol_check_fills_cache(tmp_path, capsys):
    assert run(tmp_path, "--experiment", "fundsol-check", "--kind", "classical", "--torus-size", "4") == 0
    cache = tmp_path / "cache"
    assert len(fundsol.cache_list(cache)) == 2
    capsys.readouterr()
    assert cli.main(["cache", "list", "--cache-dir", str(cache)]) == 0
    listed = json.loads(capsys.readouterr().out)
    assert {e["direction"] for e in listed} == {"+", "-"}
    assert cli.main(["cache", "clear", "--cache-dir", str(cache)]) == 0
    assert "removed 2" in capsys.readouterr().out
    assert fundsol.cache_list(cache) == []


def test_cache_path_uses_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(fundsol.CACHE_ENV, str(tmp_path / "env"))
    assert cli.main(["cache", "path"]) == 0
    assert capsys.readouterr().out.strip() == str(tmp_path / "env")


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"experiment": "algebra-check", "kind": "classical", "seed": 9}))
    assert run(tmp_path, "--config", str(cfg), "--kind", "split") == 0
    rep = load(tmp_path, "algebra-check_split")
    assert rep["config"]["seed"] == 9 and rep["kind"] == "split"


@pytest.mark.parametrize("args", [
    ["--experiment", "stokes", "--torus-size", "5"],
    ["--experiment", "stokes", "--h", "-1"],
    ["--experiment", "stokes", "--support", "0"],
    ["--kind", "classical"],
])
def test_bad_configuration_exits_2(tmp_path, args):
    assert run(tmp_path, *args) == 2


def test_unknown_config_key_exits_2(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"experiment": "triples", "colour": "blue"}))
    assert run(tmp_path, "--config", str(cfg)) == 2
    assert run(tmp_path, "--config", str(tmp_path / "missing.json")) == 2


def test_unwritable_output_exits_3(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("not a directory")
    code = cli.main(["run", "--experiment", "triples", "--output-dir", str(blocker / "sub")])
    assert code == 3


def test_argparse_rejects_unknown_experiment():
    with pytest.raises(SystemExit) as exc:
        cli.main(["run", "--experiment", "nope"])
    assert exc.value.code == 2
