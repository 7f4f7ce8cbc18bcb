import json

import pytest

from isingnet import build_knuth, full_multiplier
from isingnet.cli import main
from isingnet.io import load_net, save_net


@pytest.fixture
def and_file(tmp_path, capsys):
    path = tmp_path / "and.json"
    assert main(["build", "and", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


def test_build_knuth(tmp_path, capsys):
    path = tmp_path / "k.json"
    assert main(["build", "knuth", "2", "2", "-o", str(path)]) == 0
    out = capsys.readouterr().out
    assert "vertices: 12" in out and "expected ground energy: -60" in out
    assert load_net(path) == build_knuth((2, 2)).net


@pytest.mark.parametrize("kind,size", [("and", 3), ("multiplier", 6)])
def test_build_gates(kind, size, tmp_path, capsys):
    path = tmp_path / "g.json"
    assert main(["build", kind, "-o", str(path)]) == 0
    assert len(load_net(path)) == size


def test_build_to_stdout(capsys):
    assert main(["build", "and"]) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["vertices"] == ["a", "b", "c"]
    assert "vertices: 3" in captured.err


def test_build_usage_errors():
    with pytest.raises(SystemExit) as info:
        main(["build", "knuth", "2"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["build", "knuth", "0", "2"])
    assert info.value.code == 2


def test_build_unwritable_path(tmp_path):
    assert main(["build", "and", "-o", str(tmp_path / "missing" / "x.json")]) == 1


def test_solve_and(and_file, capsys):
    assert main(["solve", str(and_file)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("E0=-3, 4 states")


def test_solve_multiplier(tmp_path, capsys):
    path = tmp_path / "m.json"
    save_net(full_multiplier(), path)
    assert main(["solve", str(path), "--limit", "3"]) == 0
    out = capsys.readouterr().out
    assert "E0=-15, 16 states" in out and "... 13 more" in out


def test_solve_malformed(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"vertices": ["a"], "constant": "zero"}))
    assert main(["solve", str(path)]) == 2
    assert "constant" in capsys.readouterr().err


def test_solve_missing_file(tmp_path):
    assert main(["solve", str(tmp_path / "nope.json")]) == 1


def test_solve_cap(tmp_path, capsys):
    path = tmp_path / "k.json"
    save_net(build_knuth((2, 2)).net, path)
    assert main(["--cap", "8", "solve", str(path)]) == 5
    err = capsys.readouterr().err
    assert "8" in err and "12" in err


def test_factor_nine(capsys):
    assert main(["factor", "9", "--n", "2", "--m", "2", "--backend", "exact"]) == 0
    assert "factored: 3 x 3" in capsys.readouterr().out


def test_factor_six_with_dims(capsys):
    assert main(["factor", "6", "--dims", "2x2"]) == 0
    assert "factored: 2 x 3, 3 x 2" in capsys.readouterr().out


def test_factor_thirteen_is_infeasible(capsys):
    assert main(["factor", "13", "--n", "2", "--m", "2"]) == 3
    out = capsys.readouterr().out
    assert out.startswith("infeasible (energy ") and "> -60)" in out
    energy = int(out.split("energy ")[1].split(" ")[0])
    assert energy > -60


def test_factor_budget_exhausted(capsys):
    code = main(["factor", "13", "--n", "2", "--m", "2", "--backend", "local", "--budget", "10"])
    assert code == 4
    assert "budget exhausted" in capsys.readouterr().out


def test_factor_json(capsys):
    assert main(["factor", "9", "--dims", "2x2", "--json"]) == 0
    first = capsys.readouterr().out.splitlines()[0]
    assert json.loads(first) == {"status": "factored", "energy": -60, "pairs": [[3, 3]]}


def test_factor_too_big():
    with pytest.raises(SystemExit) as info:
        main(["factor", "16", "--n", "2", "--m", "2"])
    assert info.value.code == 2


def test_decomp_is_deterministic(tmp_path, capsys):
    args = ["decomp", "--dims", "1x1,2x2", "--trials", "50", "--seed", "7", "--resamples", "200"]
    assert main(args + ["--out-dir", str(tmp_path / "a")]) == 0
    assert main(args + ["--out-dir", str(tmp_path / "b")]) == 0
    for name in ("summary.csv", "runs.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    out = capsys.readouterr().out
    assert "2 x 2" in out and "second differences" in out


def test_decomp_unsat_strategy(tmp_path, capsys):
    assert main(["decomp", "--dims", "2x2", "--trials", "5", "--strategy", "unsat",
                 "--resamples", "100", "--out-dir", str(tmp_path)]) == 0
    meta = json.loads((tmp_path / "metadata.json").read_text())
    assert meta["campaign"]["strategy"]["kind"] == "unsat_multiplier"


def test_decomp_zero_trials_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["decomp", "--trials", "0"])
    assert info.value.code == 2


def test_decomp_reports_net_errors(tmp_path, capsys):
    code = main(["decomp", "--dims", "2x2", "--trials", "5", "--strategy", "unsat", "--product", "6",
                 "--resamples", "100", "--out-dir", str(tmp_path)])
    assert code == 0
    assert "error:" in capsys.readouterr().out


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "settings.json"
    cfg.write_text(json.dumps({"enumeration_cap": 4}))
    path = tmp_path / "m.json"
    save_net(full_multiplier(), path)
    assert main(["--config", str(cfg), "solve", str(path)]) == 5
    assert main(["solve", str(path)]) == 0
