"""Direct integration of the periodic lattice and travelling-wave verification."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .errors import Blowup, ConsistencyError
from .functionals import hamiltonian
from .lattice import LatticeParams, Potential, WaveParams
from .spectral import FourierProfile

BLOWUP_AMPLITUDE = 1e6


@dataclass(frozen=True, eq=False)
class LatticeState:
    q: np.ndarray
    p: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        q = np.array(self.q, dtype=float)
        p = np.array(self.p, dtype=float)
        if q.shape != p.shape or q.ndim != 1:
            raise ValueError("q and p must be 1-d arrays of equal length")
        q.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @property
    def N(self) -> int:
        return self.q.size


def init_from_profile(prof: FourierProfile, lp: LatticeParams, wp: WaveParams,
                      t0: float = 0.0) -> LatticeState:
    """``q_n = Q(n - c t0)``, ``p_n = -c Q'(n - c t0)`` for ``n = 0..N-1``."""
    if not lp.unit_spacing:
        raise ConsistencyError(f"travelling waves need N = 2L (got N = {lp.N}, 2L = {2 * lp.L})")
    z = np.arange(lp.N) - wp.c * t0
    return LatticeState(prof(z), -wp.c * prof.derivative_at(z), t0)


def _kernel_args(pot: Potential, backend: Optional[str]):
    name = backend or _backend.DEFAULT
    coeffs = getattr(pot, "even_coeffs", None)
    if coeffs is None:
        if name != "python":
            if backend is not None:
                raise ValueError("the compiled kernel needs a polynomial potential")
            name = "python"
        return _backend.kernel(name), {"coeffs": (), "v": pot.v, "dv": pot.dv}
    return _backend.kernel(name), {"coeffs": np.asarray(coeffs, dtype=float)}


def step_verlet(state: LatticeState, lp: LatticeParams, pot: Potential, dt: float,
                backend: Optional[str] = None) -> LatticeState:
    """One kick-drift-kick step."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    run, extra = _kernel_args(pot, backend)
    coeffs = extra.pop("coeffs")
    _, Q, P, _, blown = run(state.q, state.p, lp.kappa, coeffs, dt, 1, 1, BLOWUP_AMPLITUDE, **extra)
    if blown:
        raise Blowup(f"|q| exceeded {BLOWUP_AMPLITUDE:g} at t = {state.t + dt:g}")
    return LatticeState(Q[-1], P[-1], state.t + dt)


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    q: np.ndarray  # (records, N)
    p: np.ndarray
    H: np.ndarray
    dt: float
    backend: str

    @property
    def H_min(self) -> float:
        return float(self.H.min())

    @property
    def H_max(self) -> float:
        return float(self.H.max())

    @property
    def relative_drift(self) -> float:
        """``(max H - min H) / |H(0)|`` over the recorded times."""
        scale = abs(self.H[0]) if self.H[0] != 0 else 1.0
        return float((self.H.max() - self.H.min()) / scale)

    @property
    def final(self) -> LatticeState:
        return LatticeState(self.q[-1], self.p[-1], float(self.times[-1]))


def integrate(state: LatticeState, lp: LatticeParams, pot: Potential, dt: float, T: float,
              record_every: int = 10, backend: Optional[str] = None) -> Trajectory:
    """Integrate ``round(T/dt)`` Verlet steps, recording every ``record_every`` steps."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    if state.N != lp.N:
        raise ValueError(f"state has {state.N} sites, lattice has {lp.N}")
    nsteps = int(round(T / dt))
    run, extra = _kernel_args(pot, backend)
    coeffs = extra.pop("coeffs")
    used = "python" if run is _backend.kernel("python") else "cython"
    steps, Q, P, H, blown = run(state.q, state.p, lp.kappa, coeffs, dt, nsteps,
                                max(1, int(record_every)), BLOWUP_AMPLITUDE, **extra)
    if blown:
        raise Blowup(f"|q| exceeded {BLOWUP_AMPLITUDE:g} at t = {state.t + steps[-1] * dt:g}")
    return Trajectory(state.t + steps * dt, Q, P, H, dt, used)


def verify_travelling(traj: Trajectory, prof: FourierProfile, lp: LatticeParams, wp: WaveParams,
                      tol: float = 1e-5) -> tuple[float, bool]:
    """Largest ``|q_n(t) - Q(n - c t)|`` over recorded times and sites."""
    n = np.arange(traj.q.shape[1])
    z = n[None, :] - wp.c * traj.times[:, None]
    dev = float(np.max(np.abs(traj.q - prof(z)))) if traj.q.size else 0.0
    return dev, bool(dev < tol)


def transit_time(lp: LatticeParams, wp: WaveParams) -> float:
    """Time for the wave to travel one period ``2L``."""
    return 2.0 * lp.L / wp.c


def state_energy(state: LatticeState, lp: LatticeParams, pot: Potential) -> float:
    return hamiltonian(state, lp, pot)


def write_trajectory_csv(traj: Trajectory, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "n", "q", "p"])
        for t, qrow, prow in zip(traj.times, traj.q, traj.p):
            for n, (qn, pn) in enumerate(zip(qrow, prow)):
                w.writerow([f"{t:.17g}", n, f"{qn:.17g}", f"{pn:.17g}"])


def write_energy_csv(traj: Trajectory, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "H"])
        for t, h in zip(traj.times, traj.H):
            w.writerow([f"{t:.17g}", f"{h:.17g}"])


def measure_frequency(times: np.ndarray, signal: np.ndarray) -> float:
    """Angular frequency of a single-tone signal by least-squares fit.

    The FFT peak gives the starting point for a fit of
    ``A cos(w t) + B sin(w t)`` with ``w`` free.
    """
    from scipy.optimize import least_squares

    t = np.asarray(times, dtype=float) - times[0]
    s = np.asarray(signal, dtype=float)
    spec = np.abs(np.fft.rfft(s - s.mean()))
    freqs = 2 * math.pi * np.fft.rfftfreq(s.size, d=t[1] - t[0])
    w0 = freqs[int(np.argmax(spec[1:])) + 1]

    def resid(x):
        w, a, b = x
        return a * np.cos(w * t) + b * np.sin(w * t) - s

    a0 = s[0]
    fit = least_squares(resid, [w0, a0, 0.0], x_scale=[w0, abs(a0) or 1.0, abs(a0) or 1.0],
                        xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return float(abs(fit.x[0]))
