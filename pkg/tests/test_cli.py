import json
import subprocess
import sys

import pytest

from fatlab.cli import main
from fatlab.scenario import ScenarioError, algebra_from_data, build_scenario, load_scenario, read_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def machine(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out)


def test_check_algebra_passes_su4(capsys, scenario_path):
    code, out, _ = run(capsys, "check-algebra", str(scenario_path("su4_algebra")))
    assert code == 0 and "pass" in out


def test_check_algebra_reports_indices(capsys, scenario_path):
    code, rep = machine(capsys, "check-algebra", str(scenario_path("corrupted_su2")))
    assert code == 1
    r = rep["results"][0]
    assert r["status"] == "fail" and r["identity"] == "invariance" and r["indices"] == [0, 1, 2]


def test_check_algebra_empty(capsys, scenario_path):
    code, rep = machine(capsys, "check-algebra", str(scenario_path("empty_algebra")))
    assert code == 0 and rep["results"][0]["dim"] == 0


def test_check_algebra_on_a_scenario_file(capsys, scenario_path):
    code, rep = machine(capsys, "check-algebra", str(scenario_path("s4_twistor")))
    assert code == 0
    assert [r["label"] for r in rep["results"]] == ["k", "h"]


@pytest.mark.parametrize("name,code,status", [
    ("hopf", 0, "Fat"), ("s4_twistor", 0, "Fat"), ("odd_su3_su2", 1, "NotFat"),
    ("zero_curvature", 1, "NotFat"), ("su4_sp2", 1, "NotFat"),
])
def test_fat_verdicts_and_exit_codes(capsys, scenario_path, name, code, status):
    got, rep = machine(capsys, "fat", str(scenario_path(name)))
    assert got == code and rep["status"] == status
    assert rep["report_version"] == 1 and rep["exit_code"] == code


def test_fat_text_report(capsys, scenario_path):
    code, out, _ = run(capsys, "fat", str(scenario_path("hopf")))
    assert code == 0
    assert "verdict: Fat (exact-pfaffian)" in out


def test_float_stage_and_undetermined_exit_code(capsys, scenario_path):
    path = str(scenario_path("flag_su4"))
    code, rep = machine(capsys, "fat", path)
    assert code == 1 and rep["verdict"]["certificate"] == "sphere-search"
    assert rep["verdict"]["exact_witness"] is not None
    # thresholds that no singular value can satisfy leave the verdict open
    code, rep = machine(capsys, "fat", path, "--tau-fat", "1e9", "--tau-deg", "0")
    assert code == 3 and rep["status"] == "Undetermined"


def test_classify_dichotomy(capsys, scenario_path):
    code, out, _ = run(capsys, "classify", str(scenario_path("su4_sp2")))
    assert code == 1
    assert "pair (C2, C1⊕T) not in Table 2 ⇒ no fat canonical-connection bundle" in out
    code, out, _ = run(capsys, "classify", str(scenario_path("s4_twistor")))
    assert code == 0 and out.strip().endswith("all conditions pass")


def test_tables_verbs(capsys):
    code, rep = machine(capsys, "tables", "disjoint", "--nmax", "12")
    assert code == 0 and rep["collisions"] == [] and rep["pairs_checked"] == 85
    code, rep = machine(capsys, "tables", "list", "--table", "2")
    assert code == 0 and rep["count"] == 20
    code, rep = machine(capsys, "tables", "list", "--table", "1")
    assert rep["count"] == 17
    code, rep = machine(capsys, "tables", "spot-check", "--row", "1", "--n", "2")
    assert code == 0 and rep["status"] == "pass"
    code, rep = machine(capsys, "tables", "spot-check", "--row", "12")
    assert code == 0 and rep["status"] == "skipped"


def test_input_errors_exit_2(capsys, tmp_path, scenario_path):
    code, _, err = run(capsys, "fat", str(tmp_path / "missing.json"))
    assert code == 2 and err.startswith("error:")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "classify", str(bad))[0] == 2
    code, rep = machine(capsys, "tables", "spot-check", "--row", "1", "--n", "1")
    assert code == 2 and rep["status"] == "input-error"
    assert run(capsys, "tables", "spot-check", "--row", "99")[0] == 2


def test_reports_are_deterministic(capsys, scenario_path):
    for name in ("hopf", "s4_twistor", "su4_sp2", "flag_su4"):
        first = run(capsys, "fat", str(scenario_path(name)), "--format", "machine")[1]
        second = run(capsys, "fat", str(scenario_path(name)), "--format", "machine")[1]
        assert first == second


def test_timing_is_opt_in(capsys, scenario_path):
    _, rep = machine(capsys, "fat", str(scenario_path("hopf")))
    assert "wall_time" not in rep
    _, rep = machine(capsys, "fat", str(scenario_path("hopf")), "--timing")
    assert rep["wall_time"] >= 0


def test_environment_seed_overrides_flag(capsys, scenario_path, monkeypatch):
    monkeypatch.setenv("FATLAB_SEED", "17")
    _, rep = machine(capsys, "fat", str(scenario_path("hopf")), "--seed", "3")
    assert rep["seed"] == 17
    monkeypatch.setenv("FATLAB_SEED", "x")
    assert run(capsys, "fat", str(scenario_path("hopf")))[0] == 2


def test_console_script_entry_point(scenario_path):
    proc = subprocess.run([sys.executable, "-m", "fatlab.cli", "fat", str(scenario_path("hopf"))],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "Fat" in proc.stdout


# -- scenario loading ----------------------------------------------------------------------


def test_form_scale_rebuilds_every_object(scenario_path):
    for scale in (2, "1/3"):
        sc = load_scenario(scenario_path("s4_twistor"), form_scale=scale)
        assert sc.k.B[0][0] == load_scenario(scenario_path("s4_twistor")).k.B[0][0] * (2 if scale == 2 else 1) / (
            1 if scale == 2 else 3)


@pytest.mark.parametrize("patch,message", [
    ({"schema": "nope"}, "schema"),
    ({"version": 2}, "version"),
    ({"connection": "other"}, "canonical"),
    ({"k": "sl(2)"}, "parse"),
    ({"l": {"span": [[1, 0, 0]]}}, "ambient dimension"),
    ({"h": {"embed": "block_upper_left"}}, "needs an algebra"),
    ({"lambda": {"rows": []}}, "matrix"),
    ({"lambda": "inclusion"}, "lambda"),
    ({"h": "halfway"}, "unrecognised"),
])
def test_malformed_scenarios(scenario_path, patch, message):
    data = read_json(scenario_path("hopf"))
    data.update(patch)
    with pytest.raises(ScenarioError, match=message):
        build_scenario(data)


def test_missing_key():
    with pytest.raises(ScenarioError, match="lacks"):
        build_scenario({"schema": "fatlab-scenario", "version": 1, "k": "su(2)"})


def test_raw_algebra_data_round_trip():
    data = {"schema": "fatlab-algebra", "version": 1, "name": "abelian", "dim": 2,
            "brackets": [], "form": [[-1, 0], [0, "-1/2"]]}
    alg = algebra_from_data(data)
    assert alg.dim == 2 and alg.B[1][1] == -0.5
    with pytest.raises(ScenarioError):
        algebra_from_data({**data, "brackets": [[0, 5, 1, 1]]})
    with pytest.raises(ScenarioError):
        algebra_from_data({**data, "form": [[-1]]})
