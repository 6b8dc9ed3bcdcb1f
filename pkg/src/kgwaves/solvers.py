"""Travelling-wave solvers.

* :func:`picard_solve` -- damped iteration of ``Q -> M^-1 N(Q)``.
* :func:`newton_refine` -- Newton on the advance-delay residual, MINRES
  inner solves in sine-amplitude coordinates (the Jacobian is symmetric
  there).
* :func:`mountain_pass_solve` -- climbing-image string method on the
  action for soft potentials, finished by Newton.
* :func:`solve_hard` -- Picard then Newton, never raising; the outcome's
  classification records what happened.

Unknowns are sine amplitudes ``b_k`` (``Q = sum_k b_k sin(k Omega z)``).
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.fft
from scipy.sparse.linalg import LinearOperator, minres

from .errors import Diverged, InvalidRegime, LinearSolveFailure, PreconditionViolated, SingularOperator
from .functionals import action_S_soft, action_gradient_soft, linear_symbol, nonlinear_term, residual
from .lattice import HardPotential, LatticeParams, Potential, SoftPotential, WaveParams, condition_As
from .spectral import (FourierProfile, _signs, _synth, apply_M_inverse, dealiased_grid_size,
                       invertibility_check, laplacian_symbol, norms, project_X0)
from .thresholds import ps_case, r_crit

log = logging.getLogger(__name__)

BLOWUP_NORM = 1e6


class Classification(str, enum.Enum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "NonTrivial"
    DIVERGED = "Diverged"
    SINGULAR = "SingularOperator"


@dataclass(frozen=True)
class SolverConfig:
    Kmax: int = 64
    tol_residual: float = 1e-10
    max_iter: int = 500
    theta: float = 0.5
    seed_mode: int = 1
    seed_amplitude: Optional[float] = None  # None: just above R_crit when defined, else 0.5
    newton_enabled: bool = True
    newton_tol: float = 1e-12
    newton_max_iter: int = 40
    mpa_path_points: int = 21
    mpa_step: float = 0.2
    mpa_max_deform: int = 3000
    mpa_tol: float = 1e-7

    def __post_init__(self):
        if self.Kmax < 1:
            raise ValueError("Kmax must be positive")
        if not self.tol_residual > 0:
            raise ValueError("tol_residual must be positive")
        if not 0 < self.theta <= 1:
            raise ValueError("theta must lie in (0, 1]")
        if self.mpa_path_points < 3:
            raise ValueError("mpa_path_points must be at least 3")
        if not 1 <= self.seed_mode <= self.Kmax:
            raise ValueError("seed_mode must lie in 1..Kmax")


@dataclass
class SolveOutcome:
    profile: FourierProfile
    iterations: int
    final_residual_X0: float
    classification: Classification
    norm_X0: float
    norm_X1: float
    method: str = ""
    condition_As: Optional[bool] = None
    newton_steps: int = 0
    S_value: Optional[float] = None
    grad_norm: Optional[float] = None
    message: str = ""
    history: list = field(default_factory=list, repr=False)

    @property
    def converged(self) -> bool:
        return self.classification in (Classification.TRIVIAL, Classification.NONTRIVIAL)

    def as_record(self) -> dict:
        return {
            "classification": self.classification.value,
            "method": self.method,
            "iterations": self.iterations,
            "newton_steps": self.newton_steps,
            "final_residual_x0": self.final_residual_X0,
            "norm_x0": self.norm_X0,
            "norm_x1": self.norm_X1,
            "condition_as": self.condition_As,
            "s_value": self.S_value,
            "grad_norm": self.grad_norm,
            "message": self.message,
        }


def _classify(norm_X0: float, tol: float) -> Classification:
    return Classification.NONTRIVIAL if norm_X0 > 10.0 * tol else Classification.TRIVIAL


def _outcome(prof, res_X0, cls, iterations, **kw) -> SolveOutcome:
    n = norms(prof)
    return SolveOutcome(prof, iterations, res_X0, cls, n.X0, n.X1, **kw)


def apply_N(prof: FourierProfile, wp: WaveParams, pot: Potential,
            M_grid: Optional[int] = None) -> FourierProfile:
    """``N(P) = -V'(P) / c^2`` on a dealiased grid, projected onto the sine subspace."""
    deg = None if pot.degree is None else pot.degree - 1
    return project_X0(nonlinear_term(prof, pot.dv, deg, M_grid) * (-1.0 / wp.c**2))


def default_seed_amplitude(lp: LatticeParams, wp: WaveParams, pot: Potential) -> float:
    """Seed amplitude whose X0 norm is just above R_crit, when R_crit is defined."""
    if isinstance(pot, HardPotential):
        try:
            return 1.05 * math.sqrt(2.0) * r_crit(lp, wp, pot)
        except InvalidRegime:
            pass
    return 0.5


def seed_profile(lp, wp, pot, cfg: SolverConfig) -> FourierProfile:
    amp = cfg.seed_amplitude
    if amp is None:
        amp = default_seed_amplitude(lp, wp, pot)
    return FourierProfile.sine_mode(lp.L, cfg.Kmax, cfg.seed_mode, amp)


def picard_solve(lp: LatticeParams, wp: WaveParams, pot: Potential, cfg: SolverConfig,
                 seed: Optional[FourierProfile] = None, callback=None) -> SolveOutcome:
    """Damped fixed-point iteration ``Q <- (1 - theta) Q + theta M^-1 N(Q)``.

    Stops once the advance-delay residual drops below ``cfg.tol_residual``.
    When the iteration runs out of steps or blows up the outcome is
    ``Diverged`` and carries the iterate with the smallest residual.
    ``callback(it, Q)`` sees every iterate.
    Raises :class:`SingularOperator` when ``M`` is not invertible.
    """
    invertibility_check(lp, wp, cfg.Kmax)
    Q = project_X0(seed if seed is not None else seed_profile(lp, wp, pot, cfg))
    best, best_res = Q, residual(Q, lp, wp, pot).X0
    history = []
    th = cfg.theta
    for it in range(1, cfg.max_iter + 1):
        Q = project_X0(Q * (1.0 - th) + apply_M_inverse(apply_N(Q, wp, pot), lp, wp) * th)
        if callback is not None:
            callback(it, Q)
        res = residual(Q, lp, wp, pot).X0
        history.append(res)
        nrm = float(np.linalg.norm(Q.coeffs))
        if not (math.isfinite(res) and nrm < BLOWUP_NORM):
            return _outcome(best, best_res, Classification.DIVERGED, it, method="picard",
                            condition_As=condition_As(lp, wp), history=history,
                            message="iterates blew up")
        if res < best_res:
            best, best_res = Q, res
        if res < cfg.tol_residual:
            n = norms(Q)
            return _outcome(Q, res, _classify(n.X0, cfg.tol_residual), it, method="picard",
                            condition_As=condition_As(lp, wp), history=history)
    return _outcome(best, best_res, Classification.DIVERGED, cfg.max_iter, method="picard",
                    condition_As=condition_As(lp, wp), history=history,
                    message="max_iter reached")


def _amps(prof: FourierProfile) -> np.ndarray:
    return -2.0 * prof.coeffs.imag


def _jacobian(prof: FourierProfile, lp, wp, pot: Potential):
    """Residual Jacobian in sine-amplitude coordinates as a LinearOperator."""
    K = prof.Kmax
    M = dealiased_grid_size(K, None if pot.degree is None else pot.degree - 1)
    lin = linear_symbol(prof, lp, wp)
    signs = _signs(K)
    q = _synth(prof.coeffs, M)
    w = pot.ddv(q)

    def matvec(x):
        x = np.ravel(x)
        # sine amplitudes x -> coefficients -0.5j x
        spec = np.zeros(M // 2 + 1, dtype=complex)
        spec[1:K + 1] = M * signs * (-0.5j * x)
        h = scipy.fft.irfft(spec, n=M)
        prod = signs * scipy.fft.rfft(w * h)[1:K + 1] / M
        return lin * x - 2.0 * prod.imag

    return LinearOperator((K, K), matvec=matvec, dtype=float)


def newton_refine(prof: FourierProfile, lp: LatticeParams, wp: WaveParams, pot: Potential,
                  cfg: SolverConfig) -> SolveOutcome:
    """Newton iteration on ``F(Q) = c^2 Q'' - kappa Delta_1 Q + V'(Q)``.

    Inner solves use preconditioned MINRES with the diagonal
    ``c^2 (k Omega)^2 + 4 kappa sin^2(k Omega / 2) + |V''(0)|``;
    a backtracking line search keeps the residual decreasing.
    """
    Q = project_X0(prof)
    K = Q.Kmax
    res = residual(Q, lp, wp, pot)
    if not math.isfinite(res.X0):
        raise Diverged("starting residual is not finite")
    W = Q.Omega
    kk = np.arange(1, K + 1)
    pdiag = ((wp.c * W * kk) ** 2 - lp.kappa * laplacian_symbol(W, kk)
             + abs(float(pot.ddv(np.zeros(1))[0])))
    precond = LinearOperator((K, K), matvec=lambda x: np.ravel(x) / pdiag, dtype=float)
    history = [res.X0]
    steps = 0
    while res.X0 >= cfg.newton_tol:
        if steps >= cfg.newton_max_iter:
            return _outcome(Q, res.X0, Classification.DIVERGED, steps, method="newton",
                            newton_steps=steps, condition_As=condition_As(lp, wp),
                            history=history, message="newton_max_iter reached")
        J = _jacobian(Q, lp, wp, pot)
        r = _amps(res.profile)
        delta, info = minres(J, -r, M=precond, rtol=1e-14, maxiter=20 * K)
        if info != 0:
            # accept an inexact direction only if it still reduces the linear model
            lin_res = np.linalg.norm(J.matvec(delta) + r) / max(np.linalg.norm(r), 1e-300)
            if not lin_res < 1e-2:
                raise LinearSolveFailure(f"MINRES info={info}, relative residual {lin_res:.2e}")
        t = 1.0
        while True:
            trial = project_X0(FourierProfile.from_sine(Q.L, _amps(Q) + t * delta))
            tres = residual(trial, lp, wp, pot)
            if tres.X0 < res.X0 or t < 1e-3:
                break
            t *= 0.5
        steps += 1
        Q, res = trial, tres
        history.append(res.X0)
        if not math.isfinite(res.X0) or norms(Q).X0 > BLOWUP_NORM:
            return _outcome(Q, res.X0, Classification.DIVERGED, steps, method="newton",
                            newton_steps=steps, history=history, message="newton blew up")
    n = norms(Q)
    return _outcome(Q, res.X0, _classify(n.X0, cfg.newton_tol), steps, method="newton",
                    newton_steps=steps, condition_As=condition_As(lp, wp), history=history)


def solve_hard(lp: LatticeParams, wp: WaveParams, pot: Potential, cfg: SolverConfig,
               seed: Optional[FourierProfile] = None) -> SolveOutcome:
    """Picard iteration followed by Newton polishing.

    Nontrivial waves are typically repelling fixed points of the damped
    map, so Picard from a nontrivial seed tends to collapse onto ``Q = 0``.
    When the Picard+Newton result is not ``NonTrivial``, Newton is also
    started from the seed itself and a converged nontrivial result wins.
    Never raises for solver failures; the classification carries them.
    """
    seed = project_X0(seed) if seed is not None else seed_profile(lp, wp, pot, cfg)
    try:
        out = picard_solve(lp, wp, pot, cfg, seed)
    except SingularOperator as exc:
        return _outcome(seed, math.inf, Classification.SINGULAR, 0, method="picard",
                        condition_As=condition_As(lp, wp), message=str(exc))
    if not cfg.newton_enabled:
        return out
    best = out
    for start, label in ((out.profile, "picard+newton"), (seed, "newton-from-seed")):
        try:
            ref = newton_refine(start, lp, wp, pot, cfg)
        except (LinearSolveFailure, Diverged) as exc:
            best.message = f"{label} failed: {exc}"
            continue
        ref.iterations = out.iterations + ref.newton_steps
        ref.method = label
        ref.history = out.history + ref.history
        if ref.converged and ref.final_residual_X0 < cfg.tol_residual:
            if ref.classification is Classification.NONTRIVIAL:
                return ref
            if not best.converged or best.classification is Classification.TRIVIAL:
                best = ref
        elif not best.converged:
            best = ref
    return best


# ---------------------------------------------------------------- soft case

class _SoftAction:
    """Batched action and gradient for arrays of sine-amplitude vectors."""

    def __init__(self, lp, wp, sp: SoftPotential, Kmax: int):
        self.L, self.sp, self.K = lp.L, sp, Kmax
        W = lp.Omega
        k = np.arange(1, Kmax + 1)
        # a = 0 multiplier: S_quad = L/2 sum_k d_k b_k^2
        self.d = (wp.c * W * k) ** 2 + sp.omega0**2 + lp.kappa * laplacian_symbol(W, k)
        self.M = dealiased_grid_size(Kmax, sp.p + 1)
        self.signs = _signs(Kmax)

    def _grid(self, B):
        spec = np.zeros(B.shape[:-1] + (self.M // 2 + 1,), dtype=complex)
        spec[..., 1:self.K + 1] = self.M * self.signs * (-0.5j * B)
        return scipy.fft.irfft(spec, n=self.M, axis=-1)

    def value(self, B):
        q = self._grid(B)
        p = self.sp.p
        quad = 0.5 * self.L * np.sum(self.d * B**2, axis=-1)
        return quad - self.sp.a / (p + 1) * 2.0 * self.L * np.mean(q ** (p + 1), axis=-1)

    def gradient(self, B):
        """Sine amplitudes of the L2 representer of S'."""
        q = self._grid(B)
        f = self.signs * scipy.fft.rfft(self.sp.a * q**self.sp.p, axis=-1)[..., 1:self.K + 1] / self.M
        return self.d * B + 2.0 * f.imag

    def metric(self, X, Y):
        return np.sum(self.d * X * Y, axis=-1)


def _reparametrize(path, act: _SoftAction):
    """Redistribute points at equal arc length (d-metric), endpoints fixed."""
    seg = np.sqrt(act.metric(np.diff(path, axis=0), np.diff(path, axis=0)))
    s = np.concatenate([[0.0], np.cumsum(seg)])
    if s[-1] <= 0:
        return path
    target = np.linspace(0.0, s[-1], len(path))
    out = np.empty_like(path)
    for j in range(path.shape[1]):
        out[:, j] = np.interp(target, s, path[:, j])
    return out


def mountain_pass_solve(lp: LatticeParams, wp: WaveParams, sp: SoftPotential, cfg: SolverConfig,
                        seed: Optional[FourierProfile] = None) -> SolveOutcome:
    """Mountain-pass critical point of the soft-potential action.

    1. scale the seed until the action is negative at ``u1``;
    2. lay a straight path ``0 -> u1`` of ``cfg.mpa_path_points`` points;
    3. move interior points down the preconditioned gradient, the highest
       point climbing along the path tangent instead, and re-space the
       two halves of the path by arc length;
    4. the highest point estimates the saddle; Newton finishes it.
    """
    case = ps_case(lp, wp, sp)
    act = _SoftAction(lp, wp, sp, cfg.Kmax)
    if seed is None:
        seed = FourierProfile.sine_mode(lp.L, cfg.Kmax, cfg.seed_mode, 1.0)
    u = _amps(project_X0(seed))
    if not np.any(u):
        raise PreconditionViolated("mountain-pass seed must be non-zero")
    t = 1.0
    for _ in range(64):
        if act.value(t * u) < 0:
            break
        t *= 2.0
    else:
        raise Diverged("no point of negative action found along the seed ray")
    u1 = t * u
    n = cfg.mpa_path_points
    path = np.linspace(0.0, 1.0, n)[:, None] * u1[None, :]
    step = cfg.mpa_step
    cap = math.sqrt(act.metric(u1, u1)) / (n - 1)  # at most one path spacing per move
    history = []
    it = 0
    for it in range(1, cfg.mpa_max_deform + 1):
        S = act.value(path)
        imax = int(np.argmax(S[1:-1])) + 1  # lowest index on ties
        G = act.gradient(path) / act.d
        tau = path[imax + 1] - path[imax - 1]
        tau /= math.sqrt(act.metric(tau, tau))
        g_top = G[imax]
        climb = g_top - 2.0 * act.metric(g_top, tau) * tau
        gnorm = math.sqrt(act.metric(g_top, g_top))
        history.append(gnorm)
        if gnorm < cfg.mpa_tol:
            break
        # unit tangents (d-metric) at interior points
        T = path[2:] - path[:-2]
        T /= np.sqrt(act.metric(T, T))[:, None]
        # nudged-elastic-band style: interior points move only across the path
        D = G[1:-1] - act.metric(G[1:-1], T)[:, None] * T
        D[imax - 1] = climb
        move = step * D
        size = np.sqrt(act.metric(move, move))
        move *= np.minimum(1.0, cap / np.maximum(size, 1e-300))[:, None]
        new = path.copy()
        new[1:-1] -= move
        path = np.concatenate([_reparametrize(new[:imax + 1], act)[:-1],
                               _reparametrize(new[imax:], act)])
    S = act.value(path)
    imax = int(np.argmax(S[1:-1])) + 1
    top = FourierProfile.from_sine(lp.L, path[imax])
    log.debug("mountain pass: %d deformations, S_top = %.6g", it, S[imax])

    try:
        out = newton_refine(top, lp, wp, sp, cfg)
    except (LinearSolveFailure, Diverged) as exc:
        res = residual(top, lp, wp, sp).X0
        return _outcome(top, res, Classification.DIVERGED, it, method="mountain_pass",
                        message=f"newton failed: {exc}", S_value=float(S[imax]))
    out.iterations = it + out.newton_steps
    out.method = f"mountain_pass[{case}]+newton"
    out.history = history + out.history
    out.S_value = action_S_soft(out.profile, lp, wp, sp).value
    out.grad_norm = norms(action_gradient_soft(out.profile, lp, wp, sp)).X0
    if out.converged and not out.S_value > 0:
        out.message = "critical point has non-positive action"
    return out
