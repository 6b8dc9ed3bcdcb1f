"""Command-line front end.

Subcommands ``thresholds``, ``solve-hard``, ``solve-soft``, ``simulate`` and
``sweep`` read one INI file (``--config``) and write plain CSV/JSON files.

Exit codes: 0 success, 1 configuration error, 2 solver divergence or
blow-up, 3 invalid regime (e.g. condition As false, PS cases violated).
The output directory is ``--out``, else ``$KGWAVES_OUT``, else
``[output] directory``, else ``./kgwaves_out``.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import logging
import math
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np

from . import dynamics, solvers
from .errors import (Blowup, ConfigError, ConsistencyError, Diverged, InvalidRegime,
                     PreconditionViolated, SingularOperator)
from .functionals import energy_E, residual
from .lattice import HardPotential, LatticeParams, SoftPotential, WaveParams, condition_As
from .spectral import FourierProfile, profile_from_text, profile_to_text
from .thresholds import ThresholdReport, kinetic_threshold_check, threshold_report

log = logging.getLogger("kgwaves")

OUT_ENV = "KGWAVES_OUT"

EXIT_OK, EXIT_CONFIG, EXIT_DIVERGED, EXIT_REGIME = 0, 1, 2, 3

# allowed keys per section; anything else is a ConfigError
SCHEMA = {
    "lattice": {"L", "N", "kappa"},
    "wave": {"c"},
    "potential": {"kind", "coeffs", "mbar", "alpha", "K", "beta", "omega0", "a", "p"},
    "solver": {f.name for f in fields(solvers.SolverConfig)} | {"require_condition_as"},
    "thresholds": {"R"},
    "simulate": {"dt", "periods", "T", "record_every", "tol", "backend", "profile", "t0"},
    "output": {"directory"},
    "sweep": {"parameter", "start", "stop", "steps", "solve", "workers"},
    "compat": {"paper_printed_formulas"},
}

SWEEP_PARAMS = ("c", "kappa", "L", "omega0", "a", "K", "beta", "mbar", "alpha")


# ------------------------------------------------------------------ config

@dataclass
class SimulateConfig:
    dt: float = 1e-3
    periods: float = 10.0
    T: Optional[float] = None
    record_every: int = 100
    tol: float = 1e-5
    backend: Optional[str] = None
    profile: Optional[str] = None
    t0: float = 0.0


@dataclass
class SweepConfig:
    parameter: str = "c"
    start: float = 1.0
    stop: float = 3.0
    steps: int = 21
    solve: bool = False
    workers: int = 0


@dataclass
class RunConfig:
    L: float
    N: int
    kappa: float
    c: float
    potential: dict
    solver: solvers.SolverConfig
    require_condition_as: bool = True
    R: float = 1.0
    simulate: SimulateConfig = field(default_factory=SimulateConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    output_dir: Optional[str] = None
    paper_printed_formulas: bool = False

    def lattice(self) -> LatticeParams:
        return LatticeParams(self.L, self.N, self.kappa)

    def wave(self) -> WaveParams:
        return WaveParams(self.c)

    def build_potential(self):
        return make_potential(self.potential)


def make_potential(spec: dict):
    kind = spec.get("kind", "hard_poly")
    if kind == "hard_poly":
        return HardPotential.polynomial(coeffs=tuple(spec.get("coeffs", (0.5, 0.25))),
                                        mbar=spec.get("mbar", 7.0), alpha=spec.get("alpha", 1.0),
                                        bigK=spec.get("K", 4.0), beta=spec.get("beta", 2.0))
    if kind == "soft":
        return SoftPotential(spec.get("omega0", 1.0), spec.get("a", 1.0), int(spec.get("p", 3)))
    raise ConfigError(f"[potential] kind: unknown potential {kind!r} (use hard_poly or soft)")


class _Reader:
    """Typed access to a ConfigParser with field-level diagnostics."""

    def __init__(self, cp: configparser.ConfigParser, source: str):
        self.cp, self.source = cp, source

    def _raw(self, sec, key):
        if self.cp.has_section(sec) and self.cp.has_option(sec, key):
            return self.cp.get(sec, key)
        return None

    def _fail(self, sec, key, raw, what):
        raise ConfigError(f"{self.source}: [{sec}] {key} = {raw!r}: {what}")

    def float(self, sec, key, default=None):
        raw = self._raw(sec, key)
        if raw is None:
            return default
        try:
            val = float(eval_number(raw))
        except ValueError:
            self._fail(sec, key, raw, "expected a number")
        if not math.isfinite(val):
            self._fail(sec, key, raw, "must be finite")
        return val

    def int(self, sec, key, default=None):
        raw = self._raw(sec, key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            self._fail(sec, key, raw, "expected an integer")

    def bool(self, sec, key, default=None):
        raw = self._raw(sec, key)
        if raw is None:
            return default
        try:
            return self.cp.getboolean(sec, key)
        except ValueError:
            self._fail(sec, key, raw, "expected true/false")

    def str(self, sec, key, default=None):
        raw = self._raw(sec, key)
        return default if raw is None else raw.strip()

    def floats(self, sec, key, default=None):
        raw = self._raw(sec, key)
        if raw is None:
            return default
        try:
            return tuple(float(eval_number(t)) for t in raw.replace(",", " ").split())
        except ValueError:
            self._fail(sec, key, raw, "expected a list of numbers")


_NUM = re.compile(r"^\s*([-+]?[0-9.eE+-]*)\s*(\*?\s*pi)?\s*(/\s*([0-9.eE+-]+))?\s*$")


def eval_number(text: str) -> float:
    """Parse a float, also accepting ``pi``, ``2pi``, ``2*pi`` and ``pi/2``."""
    t = text.strip()
    try:
        return float(t)
    except ValueError:
        pass
    m = _NUM.match(t)
    if not m or not m.group(2):
        raise ValueError(t)
    lead = m.group(1)
    val = (float(lead) if lead not in ("", "+", "-") else (-1.0 if lead == "-" else 1.0)) * math.pi
    if m.group(4):
        val /= float(m.group(4))
    return val


def load_config(path: Optional[str], text: Optional[str] = None) -> RunConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    cp.optionxform = str  # keys are case-sensitive (L, N, K)
    source = path or "<config>"
    try:
        if text is not None:
            cp.read_string(text, source=source)
        elif path is not None:
            with open(path) as fh:
                cp.read_file(fh, source=source)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from None
    for sec in cp.sections():
        if sec not in SCHEMA:
            raise ConfigError(f"{source}: unknown section [{sec}]")
        for key in cp.options(sec):
            if key not in SCHEMA[sec]:
                raise ConfigError(f"{source}: [{sec}] unknown key {key!r}")
    r = _Reader(cp, source)

    L = r.float("lattice", "L", 8.0)
    N = r.int("lattice", "N", None)
    if N is None:
        N = int(round(2 * L))
    kappa = r.float("lattice", "kappa", 0.1)
    c = r.float("wave", "c", 1.5)

    kind = r.str("potential", "kind", "hard_poly")
    pot = {"kind": kind}
    if kind == "hard_poly":
        pot["coeffs"] = r.floats("potential", "coeffs", (0.5, 0.25))
        for key, default in (("mbar", 7.0), ("alpha", 1.0), ("K", 4.0), ("beta", 2.0)):
            pot[key] = r.float("potential", key, default)
    elif kind == "soft":
        for key, default in (("omega0", 1.0), ("a", 1.0)):
            pot[key] = r.float("potential", key, default)
        pot["p"] = r.int("potential", "p", 3)
    else:
        raise ConfigError(f"{source}: [potential] kind = {kind!r}: use hard_poly or soft")

    kw = {}
    for f in fields(solvers.SolverConfig):
        if f.type == "bool":
            val = r.bool("solver", f.name)
        elif f.type == "int":
            val = r.int("solver", f.name)
        else:
            val = r.float("solver", f.name)
        if val is not None:
            kw[f.name] = val
    try:
        scfg = solvers.SolverConfig(**kw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: [solver] {exc}") from None

    sim = SimulateConfig(
        dt=r.float("simulate", "dt", 1e-3), periods=r.float("simulate", "periods", 10.0),
        T=r.float("simulate", "T", None), record_every=r.int("simulate", "record_every", 100),
        tol=r.float("simulate", "tol", 1e-5), backend=r.str("simulate", "backend", None),
        profile=r.str("simulate", "profile", None), t0=r.float("simulate", "t0", 0.0))
    if not sim.dt > 0 or sim.record_every < 1:
        raise ConfigError(f"{source}: [simulate] dt must be > 0 and record_every >= 1")

    sw = SweepConfig(parameter=r.str("sweep", "parameter", "c"),
                     start=r.float("sweep", "start", 1.0), stop=r.float("sweep", "stop", 3.0),
                     steps=r.int("sweep", "steps", 21), solve=r.bool("sweep", "solve", False),
                     workers=r.int("sweep", "workers", 0))
    _check_sweep(sw, source)

    cfg = RunConfig(L=L, N=N, kappa=kappa, c=c, potential=pot, solver=scfg,
                    require_condition_as=r.bool("solver", "require_condition_as", True),
                    R=r.float("thresholds", "R", 1.0), simulate=sim, sweep=sw,
                    output_dir=r.str("output", "directory", None),
                    paper_printed_formulas=r.bool("compat", "paper_printed_formulas", False))
    try:
        cfg.lattice(), cfg.wave(), cfg.build_potential()
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{source}: {exc}") from None
    return cfg


def _check_sweep(sw: SweepConfig, source: str):
    if sw.parameter not in SWEEP_PARAMS:
        raise ConfigError(f"{source}: [sweep] parameter {sw.parameter!r} not in {SWEEP_PARAMS}")
    if sw.steps < 1:
        raise ConfigError(f"{source}: [sweep] steps must be >= 1")


# ------------------------------------------------------------------ output

def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_value(v) -> str:
    import json

    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g") if math.isfinite(v) else "null"
    return json.dumps(str(v))


def snake(key: str) -> str:
    return re.sub(r"(?<=[a-z0-9])(?=[A-Z])", "_", key).lower()


def write_json(path: Path, record: dict) -> None:
    """Flat JSON object, keys in insertion order, floats with 17 digits."""
    import json

    body = ",\n".join(f"  {json.dumps(snake(k))}: {_json_value(v)}" for k, v in record.items())
    path.write_text("{\n" + body + "\n}\n")


def write_csv(path: Path, header: list, rows: list) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def _base_record(cfg: RunConfig, command: str) -> dict:
    rec = {"command": command, "L": cfg.L, "N": cfg.N, "kappa": cfg.kappa, "c": cfg.c}
    for k, v in cfg.potential.items():
        rec[f"potential_{k}"] = " ".join(fmt(x) for x in v) if isinstance(v, tuple) else v
    rec["paper_printed_formulas"] = cfg.paper_printed_formulas
    return rec


def _threshold_record(rep: ThresholdReport) -> dict:
    return {snake(k): getattr(rep, k) for k in ThresholdReport.FIELDS}


def _write_profile_outputs(out: Path, prof: FourierProfile, lp, wp, pot) -> None:
    (out / "profile.txt").write_text(profile_to_text(prof))
    res = residual(prof, lp, wp, pot).profile
    rows = [(k, q.real, q.imag, r_.real, r_.imag)
            for k, q, r_ in zip(prof.k, prof.coeffs, res.coeffs)]
    write_csv(out / "residual.csv", ["k", "q_re", "q_im", "residual_re", "residual_im"], rows)


# ------------------------------------------------------------------ commands

def cmd_thresholds(cfg: RunConfig, out: Path) -> int:
    lp, wp, pot = cfg.lattice(), cfg.wave(), cfg.build_potential()
    rep = threshold_report(lp, wp, pot, cfg.R, cfg.paper_printed_formulas)
    rec = _threshold_record(rep)
    params = {"L": cfg.L, "kappa": cfg.kappa, "c": cfg.c, "R": cfg.R}
    write_csv(out / "thresholds.csv", list(params) + list(rec),
              [list(params.values()) + list(rec.values())])
    write_json(out / "report.json", {**_base_record(cfg, "thresholds"), "R": cfg.R, **rec})
    log.info("thresholds: %s", ", ".join(f"{k}={fmt(v)}" for k, v in rec.items()))
    return EXIT_OK


def _maybe_verify(cfg: RunConfig, out: Path, prof, lp, wp, pot, rec: dict) -> Optional[int]:
    """Integrate the lattice from the profile when N = 2L; record the deviation."""
    if not lp.unit_spacing:
        rec["dynamics"] = "skipped: N != 2L"
        return None
    sim = cfg.simulate
    T = sim.T if sim.T is not None else sim.periods * dynamics.transit_time(lp, wp)
    try:
        traj = dynamics.integrate(dynamics.init_from_profile(prof, lp, wp, sim.t0), lp, pot,
                                  sim.dt, T, sim.record_every, sim.backend)
    except Blowup as exc:
        rec["dynamics"] = f"blowup: {exc}"
        return EXIT_DIVERGED
    dev, ok = dynamics.verify_travelling(traj, prof, lp, wp, sim.tol)
    rec.update({"dynamics_backend": traj.backend, "dynamics_T": T, "dynamics_dt": sim.dt,
                "max_deviation": dev, "travelling_verified": ok,
                "h_relative_drift": traj.relative_drift})
    dynamics.write_trajectory_csv(traj, out / "trajectory.csv")
    dynamics.write_energy_csv(traj, out / "energy.csv")
    return None


def cmd_solve_hard(cfg: RunConfig, out: Path) -> int:
    lp, wp, pot = cfg.lattice(), cfg.wave(), cfg.build_potential()
    if not isinstance(pot, HardPotential):
        raise ConfigError("solve-hard needs [potential] kind = hard_poly")
    rec = _base_record(cfg, "solve-hard")
    rec.update(_threshold_record(threshold_report(lp, wp, pot, cfg.R, cfg.paper_printed_formulas)))
    if cfg.require_condition_as and not condition_As(lp, wp):
        rec["message"] = "condition As (4 kappa / c^2 < Omega^2) is false"
        write_json(out / "report.json", rec)
        log.error(rec["message"])
        return EXIT_REGIME
    outcome = solvers.solve_hard(lp, wp, pot, cfg.solver)
    rec.update(outcome.as_record())
    if outcome.classification is solvers.Classification.SINGULAR:
        write_json(out / "report.json", rec)
        log.error("singular operator: %s", outcome.message)
        return EXIT_REGIME
    if not outcome.converged:
        write_json(out / "report.json", rec)
        log.error("solver diverged (residual %s)", fmt(outcome.final_residual_X0))
        return EXIT_DIVERGED
    rec.update(energy_E(outcome.profile, lp, wp, pot).as_record("energy"))
    _write_profile_outputs(out, outcome.profile, lp, wp, pot)
    code = _maybe_verify(cfg, out, outcome.profile, lp, wp, pot, rec)
    write_json(out / "report.json", rec)
    log.info("solve-hard: %s, res_X0=%s, X0=%s", outcome.classification.value,
             fmt(outcome.final_residual_X0), fmt(outcome.norm_X0))
    return code or EXIT_OK


def cmd_solve_soft(cfg: RunConfig, out: Path) -> int:
    lp, wp, pot = cfg.lattice(), cfg.wave(), cfg.build_potential()
    if not isinstance(pot, SoftPotential):
        raise ConfigError("solve-soft needs [potential] kind = soft")
    rec = _base_record(cfg, "solve-soft")
    rec.update(_threshold_record(threshold_report(lp, wp, pot, cfg.R, cfg.paper_printed_formulas)))
    try:
        outcome = solvers.mountain_pass_solve(lp, wp, pot, cfg.solver)
    except PreconditionViolated as exc:
        rec["message"] = str(exc)
        write_json(out / "report.json", rec)
        log.error("invalid regime: %s", exc)
        return EXIT_REGIME
    except Diverged as exc:
        rec["message"] = str(exc)
        write_json(out / "report.json", rec)
        log.error("mountain pass diverged: %s", exc)
        return EXIT_DIVERGED
    rec.update(outcome.as_record())
    if not outcome.converged:
        write_json(out / "report.json", rec)
        return EXIT_DIVERGED
    kc = kinetic_threshold_check(outcome.profile, lp, wp, pot)
    rec.update({"kinetic_check_applicable": kc.applicable, "kinetic_check_passed": kc.passed,
                "twice_kinetic_T": kc.twice_T})
    _write_profile_outputs(out, outcome.profile, lp, wp, pot)
    code = _maybe_verify(cfg, out, outcome.profile, lp, wp, pot, rec)
    write_json(out / "report.json", rec)
    log.info("solve-soft: %s, S=%s, grad=%s", outcome.classification.value,
             fmt(outcome.S_value), fmt(outcome.grad_norm))
    return code or EXIT_OK


def cmd_simulate(cfg: RunConfig, out: Path) -> int:
    lp, wp, pot = cfg.lattice(), cfg.wave(), cfg.build_potential()
    rec = _base_record(cfg, "simulate")
    if cfg.simulate.profile:
        try:
            prof = profile_from_text(Path(cfg.simulate.profile).read_text())
        except (OSError, ValueError) as exc:
            raise ConfigError(f"[simulate] profile: {exc}") from None
        if prof.L != lp.L:
            raise ConfigError(f"[simulate] profile has L = {prof.L}, lattice has L = {lp.L}")
    elif isinstance(pot, SoftPotential):
        prof = solvers.mountain_pass_solve(lp, wp, pot, cfg.solver).profile
    else:
        prof = solvers.solve_hard(lp, wp, pot, cfg.solver).profile
    if not lp.unit_spacing:
        raise ConsistencyError(f"simulate needs N = 2L (N = {lp.N}, L = {lp.L})")
    code = _maybe_verify(cfg, out, prof, lp, wp, pot, rec)
    write_json(out / "report.json", rec)
    log.info("simulate: max deviation %s", fmt(rec.get("max_deviation")))
    return code or EXIT_OK


def _sweep_point(args) -> dict:
    cfg, value = args
    cfg = _with_param(cfg, cfg.sweep.parameter, value)
    lp, wp, pot = cfg.lattice(), cfg.wave(), cfg.build_potential()
    row = {cfg.sweep.parameter: value}
    row.update(_threshold_record(threshold_report(lp, wp, pot, cfg.R, cfg.paper_printed_formulas)))
    if cfg.sweep.solve:
        try:
            if isinstance(pot, SoftPotential):
                o = solvers.mountain_pass_solve(lp, wp, pot, cfg.solver)
            else:
                o = solvers.solve_hard(lp, wp, pot, cfg.solver)
            row.update({"classification": o.classification.value,
                        "final_residual_x0": o.final_residual_X0, "norm_x0": o.norm_X0,
                        "norm_x1": o.norm_X1})
        except (PreconditionViolated, Diverged, InvalidRegime) as exc:
            row.update({"classification": type(exc).__name__, "final_residual_x0": None,
                        "norm_x0": None, "norm_x1": None})
    return row


def _with_param(cfg: RunConfig, name: str, value: float) -> RunConfig:
    if name in ("c", "kappa"):
        return replace(cfg, **{name: value})
    if name == "L":
        return replace(cfg, L=value, N=int(round(2 * value)))
    return replace(cfg, potential={**cfg.potential, name: value})


def cmd_sweep(cfg: RunConfig, out: Path) -> int:
    sw = cfg.sweep
    values = np.linspace(sw.start, sw.stop, sw.steps).tolist()
    jobs = [(cfg, v) for v in values]
    workers = sw.workers or min(4, os.cpu_count() or 1)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_point, jobs))  # map preserves input order
    else:
        rows = [_sweep_point(j) for j in jobs]
    header = list(rows[0])
    for r_ in rows[1:]:
        header += [k for k in r_ if k not in header]
    write_csv(out / "sweep.csv", header, [[r_.get(k) for k in header] for r_ in rows])
    rec = _base_record(cfg, "sweep")
    rec.update({"sweep_parameter": sw.parameter, "sweep_start": sw.start, "sweep_stop": sw.stop,
                "sweep_steps": sw.steps, "rows": len(rows)})
    write_json(out / "report.json", rec)
    log.info("sweep: %d rows over %s", len(rows), sw.parameter)
    return EXIT_OK


COMMANDS = {"thresholds": cmd_thresholds, "solve-hard": cmd_solve_hard,
            "solve-soft": cmd_solve_soft, "simulate": cmd_simulate, "sweep": cmd_sweep}


def parse_sweep_tokens(tokens: list, sw: SweepConfig) -> SweepConfig:
    """``PARAM START..STOP [x STEPS]``, e.g. ``c 1.0..3.0 x 21``."""
    if not tokens:
        return sw
    text = " ".join(tokens)
    m = re.fullmatch(r"\s*(\w+)\s+(\S+?)\.\.(\S+?)(?:\s*[x:]\s*(\d+))?\s*", text)
    if not m:
        raise ConfigError(f"sweep range {text!r}: expected 'PARAM START..STOP x STEPS'")
    try:
        start, stop = eval_number(m.group(2)), eval_number(m.group(3))
    except ValueError:
        raise ConfigError(f"sweep range {text!r}: bad number") from None
    new = replace(sw, parameter=m.group(1), start=start, stop=stop,
                  steps=int(m.group(4)) if m.group(4) else sw.steps)
    _check_sweep(new, "command line")
    return new


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kgwaves", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI run configuration")
    common.add_argument("--out", help="output directory")
    common.add_argument("--printed-formulas", action="store_true",
                        help="use the literally printed energy/velocity formulas")
    common.add_argument("--seed-amplitude", type=float, help="override [solver] seed_amplitude")
    common.add_argument("--quiet", action="store_true", help="only report errors")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "sweep":
            p.add_argument("range", nargs="*", help="PARAM START..STOP x STEPS")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.INFO,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        cfg = load_config(args.config)
        if args.printed_formulas:
            cfg = replace(cfg, paper_printed_formulas=True)
        if args.seed_amplitude is not None:
            cfg = replace(cfg, solver=replace(cfg.solver, seed_amplitude=args.seed_amplitude))
        if args.command == "sweep":
            cfg = replace(cfg, sweep=parse_sweep_tokens(args.range, cfg.sweep))
        out = Path(args.out or os.environ.get(OUT_ENV) or cfg.output_dir or "kgwaves_out")
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise ConfigError(f"output directory {out}: {exc}") from None
        if not os.access(out, os.W_OK):
            raise ConfigError(f"output directory {out} is not writable")
        return COMMANDS[args.command](cfg, out)
    except ConfigError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    except (InvalidRegime, SingularOperator, PreconditionViolated, ConsistencyError) as exc:
        log.error("invalid regime: %s", exc)
        return EXIT_REGIME
    except (Diverged, Blowup) as exc:
        log.error("diverged: %s", exc)
        return EXIT_DIVERGED


if __name__ == "__main__":
    sys.exit(main())
