import csv
import json
import math

import pytest

from kgwaves.cli import load_config, main, parse_sweep_tokens, SweepConfig
from kgwaves.errors import ConfigError
from reference_values import compute

REF = {k: float(v) for k, v in compute().items()}

THRESH = """
[lattice]
L = pi
N = 6
kappa = 0.1
[wave]
c = 1
[potential]
kind = hard_poly
K = 1
beta = 2
"""

HARD = """
[lattice]
L = 8
kappa = 0.1
[wave]
c = 1.5
[solver]
seed_mode = 2
seed_amplitude = 0.6
require_condition_as = {req}
[simulate]
periods = 2
"""

SOFT = """
[lattice]
L = 8
kappa = 0.1
[wave]
c = 4.5
[potential]
kind = soft
omega0 = 1
a = 1
p = 3
[simulate]
periods = 1
"""


def write(tmp_path, text, name="run.ini"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_thresholds_csv(tmp_path):
    out = tmp_path / "o"
    assert main(["thresholds", "--config", write(tmp_path, THRESH), "--out", str(out), "--quiet"]) == 0
    r = rows(out / "thresholds.csv")[0]
    assert float(r["r_max"]) == pytest.approx(REF["R_max"], rel=1e-12)
    assert float(r["r_crit"]) == pytest.approx(REF["R_crit"], rel=1e-12)
    rep = json.loads((out / "report.json").read_text())
    assert rep["condition_as"] is True and rep["ring_nonempty"] is False


def test_printed_formulas_flag(tmp_path):
    out = tmp_path / "o"
    main(["thresholds", "--config", write(tmp_path, THRESH), "--out", str(out), "--quiet",
          "--printed-formulas"])
    r = rows(out / "thresholds.csv")[0]
    assert float(r["e_crit"]) == pytest.approx(REF["E_crit_printed"], rel=1e-12)


def test_solve_hard_writes_artifacts(tmp_path):
    out = tmp_path / "o"
    code = main(["solve-hard", "--config", write(tmp_path, HARD.format(req="false")),
                 "--out", str(out), "--quiet"])
    assert code == 0
    rep = json.loads((out / "report.json").read_text())
    assert rep["classification"] == "NonTrivial" and rep["final_residual_x0"] < 1e-10
    assert rep["travelling_verified"] is True
    for name in ("profile.txt", "residual.csv", "trajectory.csv", "energy.csv"):
        assert (out / name).exists()
    assert list(rows(out / "trajectory.csv")[0]) == ["t", "n", "q", "p"]


def test_solve_hard_condition_As_false_exits_3(tmp_path):
    out = tmp_path / "o"
    code = main(["solve-hard", "--config", write(tmp_path, HARD.format(req="true")),
                 "--out", str(out), "--quiet"])
    assert code == 3 and not (out / "profile.txt").exists()


def test_solve_soft(tmp_path):
    out = tmp_path / "o"
    assert main(["solve-soft", "--config", write(tmp_path, SOFT), "--out", str(out), "--quiet"]) == 0
    rep = json.loads((out / "report.json").read_text())
    assert rep["classification"] == "NonTrivial" and rep["s_value"] > 0
    assert rep["kinetic_check_applicable"] is True and rep["kinetic_check_passed"] is True


def test_solve_soft_ps_failure_exits_3(tmp_path):
    text = SOFT.replace("kappa = 0.1", "kappa = 2").replace("c = 4.5", "c = 0.5")
    assert main(["solve-soft", "--config", write(tmp_path, text), "--out",
                 str(tmp_path / "o"), "--quiet"]) == 3


def test_simulate_from_profile_file(tmp_path):
    first = tmp_path / "a"
    main(["solve-hard", "--config", write(tmp_path, HARD.format(req="false")), "--out",
          str(first), "--quiet"])
    text = HARD.format(req="false").replace("periods = 2", f"periods = 1\nprofile = {first / 'profile.txt'}")
    out = tmp_path / "b"
    assert main(["simulate", "--config", write(tmp_path, text, "sim.ini"), "--out", str(out),
                 "--quiet"]) == 0
    assert json.loads((out / "report.json").read_text())["travelling_verified"] is True


def test_sweep_rows_and_monotone(tmp_path):
    out = tmp_path / "o"
    assert main(["sweep", "c", "1.0..3.0", "x", "21", "--config", write(tmp_path, THRESH),
                 "--out", str(out), "--quiet"]) == 0
    rs = rows(out / "sweep.csv")
    assert len(rs) == 21
    cs = [float(r["c"]) for r in rs]
    rm = [float(r["r_max"]) for r in rs]
    assert cs == sorted(cs) and all(b > a for a, b in zip(rm, rm[1:]))


def test_sweep_pool_matches_serial(tmp_path):
    text = THRESH + "[sweep]\nparameter = kappa\nstart = 0\nstop = 0.2\nsteps = 7\nsolve = true\n"
    a, b = tmp_path / "a", tmp_path / "b"
    main(["sweep", "--config", write(tmp_path, text + "workers = 2\n", "p.ini"), "--out", str(a), "--quiet"])
    main(["sweep", "--config", write(tmp_path, text + "workers = 1\n", "s.ini"), "--out", str(b), "--quiet"])
    assert (a / "sweep.csv").read_bytes() == (b / "sweep.csv").read_bytes()


def test_deterministic_outputs(tmp_path):
    cfg = write(tmp_path, HARD.format(req="false"))
    a, b = tmp_path / "a", tmp_path / "b"
    main(["solve-hard", "--config", cfg, "--out", str(a), "--quiet"])
    main(["solve-hard", "--config", cfg, "--out", str(b), "--quiet"])
    for name in ("report.json", "profile.txt", "residual.csv", "energy.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_output_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("KGWAVES_OUT", str(tmp_path / "env"))
    assert main(["thresholds", "--config", write(tmp_path, THRESH), "--quiet"]) == 0
    assert (tmp_path / "env" / "thresholds.csv").exists()


@pytest.mark.parametrize("text", [
    "[lattice]\nL = eight\n",
    "[lattice]\nbogus = 1\n",
    "[nonsense]\nx = 1\n",
    "[potential]\nkind = quadratic\n",
    "[solver]\ntheta = 2\n",
    "[lattice\nL = 1\n",
])
def test_config_errors_exit_1(tmp_path, text):
    assert main(["thresholds", "--config", write(tmp_path, text), "--out",
                 str(tmp_path / "o"), "--quiet"]) == 1


def test_config_error_names_field(tmp_path):
    with pytest.raises(ConfigError, match=r"\[lattice\] L"):
        load_config(None, "[lattice]\nL = eight\n")


def test_missing_config_file_exit_1(tmp_path):
    assert main(["thresholds", "--config", str(tmp_path / "nope.ini"), "--quiet"]) == 1


def test_sweep_token_parsing():
    sw = parse_sweep_tokens(["c", "1.0..3.0", "x", "21"], SweepConfig())
    assert (sw.parameter, sw.start, sw.stop, sw.steps) == ("c", 1.0, 3.0, 21)
    with pytest.raises(ConfigError):
        parse_sweep_tokens(["zeta", "1..2"], SweepConfig())


def test_pi_expressions():
    cfg = load_config(None, "[lattice]\nL = pi/2\nN = 3\n")
    assert cfg.L == pytest.approx(math.pi / 2)
