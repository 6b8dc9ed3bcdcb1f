"""Energy, action and Hamiltonian functionals and the advance-delay residual.

Quadratic terms are evaluated exactly from the Fourier coefficients
(``int_{-L}^{L} f g dz = 2L sum_k f̂_k conj(ĝ_k)``); the on-site terms use
trapezoidal quadrature on a grid fine enough that polynomial potentials
are integrated without aliasing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import AliasingError
from .lattice import LatticeParams, Potential, SoftPotential, WaveParams
from .spectral import (FourierProfile, _analyze, _synth, dealiased_grid_size,
                       laplacian_symbol, norms, project_X0)


@dataclass(frozen=True)
class FunctionalValue:
    value: float
    breakdown: dict = field(default_factory=dict)

    def __float__(self):
        return self.value

    def as_record(self, prefix: str) -> dict:
        rec = {prefix: self.value}
        rec.update({f"{prefix}_{k}": v for k, v in self.breakdown.items()})
        return rec


def _grid(prof: FourierProfile, degree: Optional[int], M_grid: Optional[int]) -> int:
    need = dealiased_grid_size(prof.Kmax, degree)
    if M_grid is None:
        return need
    if M_grid < 2 * prof.Kmax + 2 or (degree is not None and M_grid <= (degree + 1) * prof.Kmax):
        raise AliasingError(f"grid of {M_grid} points aliases degree-{degree} terms at Kmax = {prof.Kmax}")
    return M_grid


def nonlinear_term(prof: FourierProfile, func, degree: Optional[int],
                   M_grid: Optional[int] = None) -> FourierProfile:
    """Coefficients of ``func(Q(z))`` (truncated to Kmax, not projected)."""
    M = _grid(prof, degree, M_grid)
    return FourierProfile(prof.L, _analyze(func(_synth(prof.coeffs, M)), prof.Kmax))


def integrate(prof: FourierProfile, func, degree: Optional[int], M_grid: Optional[int] = None) -> float:
    """Trapezoidal ``int_{-L}^{L} func(Q(z)) dz``."""
    M = _grid(prof, degree, M_grid)
    return float(2.0 * prof.L * np.mean(func(_synth(prof.coeffs, M))))


def inner(f: FourierProfile, g: FourierProfile) -> float:
    """``int_{-L}^{L} f g dz`` for real profiles."""
    return float(4.0 * f.L * np.real(np.vdot(g.coeffs, f.coeffs)))


def _quadratic(prof: FourierProfile, weight) -> float:
    return float(4.0 * prof.L * np.sum(weight * np.abs(prof.coeffs) ** 2))


class Residual(NamedTuple):
    profile: FourierProfile
    X0: float
    Linf: float


def linear_symbol(prof: FourierProfile, lp: LatticeParams, wp: WaveParams) -> np.ndarray:
    """Symbol of ``c^2 Q'' - kappa (Q(z+1) - 2Q + Q(z-1))``."""
    W = prof.Omega
    return -(wp.c * W * prof.k) ** 2 - lp.kappa * laplacian_symbol(W, prof.k)


def residual(prof: FourierProfile, lp: LatticeParams, wp: WaveParams, pot: Potential,
             M_grid: Optional[int] = None) -> Residual:
    """``r = c^2 Q'' - kappa (Q(z+1) - 2Q + Q(z-1)) + V'(Q)``, projected onto the sine subspace."""
    nl = nonlinear_term(prof, pot.dv, None if pot.degree is None else pot.degree - 1, M_grid)
    r = project_X0(FourierProfile(prof.L, linear_symbol(prof, lp, wp) * prof.coeffs + nl.coeffs))
    n = norms(r)
    return Residual(r, n.X0, n.Linf)


def energy_E(prof: FourierProfile, lp: LatticeParams, wp: WaveParams, pot: Potential,
             M_grid: Optional[int] = None) -> FunctionalValue:
    """``E = int [ (c Q')^2/2 + V(Q) + kappa/2 (Q(z+1) - Q(z))^2 ] dz``."""
    W = prof.Omega
    kinetic = 0.5 * wp.c**2 * _quadratic(prof, (W * prof.k) ** 2)
    coupling = 0.5 * lp.kappa * _quadratic(prof, -laplacian_symbol(W, prof.k))
    on_site = integrate(prof, pot.v, pot.degree, M_grid)
    parts = {"kinetic": kinetic, "on_site": on_site, "coupling": coupling}
    return FunctionalValue(kinetic + on_site + coupling, parts)


def action_S_soft(prof: FourierProfile, lp: LatticeParams, wp: WaveParams, sp: SoftPotential,
                  M_grid: Optional[int] = None) -> FunctionalValue:
    """``S = int [ c^2 Q'^2/2 + w0^2 Q^2/2 - a Q^(p+1)/(p+1) - kappa/2 (Q(z+1) - Q(z))^2 ] dz``."""
    W = prof.Omega
    kinetic = 0.5 * wp.c**2 * _quadratic(prof, (W * prof.k) ** 2)
    coupling = -0.5 * lp.kappa * _quadratic(prof, -laplacian_symbol(W, prof.k))
    on_site = -integrate(prof, sp.v, sp.degree, M_grid)
    parts = {"kinetic": kinetic, "on_site": on_site, "coupling": coupling}
    return FunctionalValue(kinetic + on_site + coupling, parts)


def action_gradient_soft(prof: FourierProfile, lp: LatticeParams, wp: WaveParams,
                         sp: SoftPotential, M_grid: Optional[int] = None) -> FourierProfile:
    """L2 representer ``g`` of ``S'(Q)``: ``<S'(Q), P> = int g P dz``.

    ``g = -c^2 Q'' + w0^2 Q - a Q^p + kappa (Q(z+1) - 2Q + Q(z-1))``.
    """
    W = prof.Omega
    lin = (wp.c * W * prof.k) ** 2 + sp.omega0**2 + lp.kappa * laplacian_symbol(W, prof.k)
    power = nonlinear_term(prof, lambda q: sp.a * q**sp.p, sp.p, M_grid)
    return project_X0(FourierProfile(prof.L, lin * prof.coeffs - power.coeffs))


def kinetic_energy_T(prof: FourierProfile) -> float:
    """``T(Q) = 1/2 int Q'^2 dz = L ||Q||_X1^2``."""
    return 0.5 * _quadratic(prof, (prof.Omega * prof.k) ** 2)


def hamiltonian(state, lp: LatticeParams, pot: Potential) -> float:
    """Lattice energy ``sum_n p_n^2/2 + V(q_n) + kappa/2 (q_{n+1} - q_n)^2`` with periodic wrap."""
    q = np.asarray(state.q, dtype=float)
    p = np.asarray(state.p, dtype=float)
    dq = np.roll(q, -1) - q
    return float(np.sum(0.5 * p**2 + pot.v(q) + 0.5 * lp.kappa * dq**2))
