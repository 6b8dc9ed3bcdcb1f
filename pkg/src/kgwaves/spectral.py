"""Truncated Fourier representation of 2L-periodic waves and the linear wave operator.

A profile stores ``Q̂_k`` for ``k = 1..Kmax``; the negative modes follow
from conjugate symmetry and the ``k = 0`` mode is absent (zero mean).
The admissible space is the odd (sine) subspace: ``Q̂_k`` purely imaginary,
``Q(z) = sum_k b_k sin(k Omega z)`` with ``b_k = -2 Im Q̂_k``.

Grids are ``z_j = -L + j 2L/M``.  Since ``Omega L = pi`` the grid origin
only contributes a factor ``(-1)**k`` to each mode, so synthesis and
analysis are plain real FFTs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
import scipy.fft

from .errors import AliasingError, SingularOperator
from .lattice import LatticeParams, WaveParams, condition_As

DEFAULT_KMAX = 64
# refuse to invert M when some |nu_k| falls below this fraction of Omega**2
RESONANCE_FLOOR = 1e-8


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FourierProfile:
    L: float
    coeffs: np.ndarray  # complex Q̂_k, k = 1..Kmax

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coeffs must be a non-empty 1-d array")
        object.__setattr__(self, "coeffs", _frozen(c))

    @property
    def Kmax(self) -> int:
        return self.coeffs.size

    @property
    def Omega(self) -> float:
        return math.pi / self.L

    @property
    def k(self) -> np.ndarray:
        return np.arange(1, self.Kmax + 1)

    @classmethod
    def zeros(cls, L: float, Kmax: int = DEFAULT_KMAX) -> "FourierProfile":
        return cls(L, np.zeros(Kmax, dtype=complex))

    @classmethod
    def from_sine(cls, L: float, amplitudes) -> "FourierProfile":
        """Profile ``sum_k amplitudes[k-1] sin(k Omega z)``."""
        b = np.asarray(amplitudes, dtype=float)
        return cls(L, -0.5j * b)

    @classmethod
    def sine_mode(cls, L: float, Kmax: int, k0: int, amplitude: float) -> "FourierProfile":
        if not 1 <= k0 <= Kmax:
            raise ValueError(f"mode {k0} outside 1..{Kmax}")
        b = np.zeros(Kmax)
        b[k0 - 1] = amplitude
        return cls.from_sine(L, b)

    @property
    def sine_amplitudes(self) -> np.ndarray:
        return -2.0 * self.coeffs.imag

    def coeff(self, k: int) -> complex:
        if k == 0:
            return 0j
        if abs(k) > self.Kmax:
            return 0j
        c = self.coeffs[abs(k) - 1]
        return c if k > 0 else c.conjugate()

    def is_odd(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs.real) <= tol))

    def with_coeffs(self, coeffs) -> "FourierProfile":
        return FourierProfile(self.L, coeffs)

    def __call__(self, z) -> np.ndarray:
        """Exact evaluation at arbitrary points."""
        z = np.asarray(z, dtype=float)
        phase = np.exp(1j * self.Omega * np.multiply.outer(z, self.k))
        return 2.0 * (phase @ self.coeffs).real

    def derivative_at(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        phase = np.exp(1j * self.Omega * np.multiply.outer(z, self.k))
        return 2.0 * (phase @ (1j * self.Omega * self.k * self.coeffs)).real

    def _check(self, other: "FourierProfile"):
        if other.Kmax != self.Kmax or not math.isclose(other.L, self.L, rel_tol=1e-14):
            raise ValueError("profiles live on different truncations")

    def __add__(self, other: "FourierProfile") -> "FourierProfile":
        self._check(other)
        return FourierProfile(self.L, self.coeffs + other.coeffs)

    def __sub__(self, other: "FourierProfile") -> "FourierProfile":
        self._check(other)
        return FourierProfile(self.L, self.coeffs - other.coeffs)

    def __mul__(self, s: float) -> "FourierProfile":
        return FourierProfile(self.L, self.coeffs * s)

    __rmul__ = __mul__

    def __neg__(self) -> "FourierProfile":
        return FourierProfile(self.L, -self.coeffs)


@dataclass(frozen=True, eq=False)
class GridFunction:
    L: float
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(np.asarray(self.values, dtype=float)))

    @property
    def M_grid(self) -> int:
        return self.values.size

    @property
    def z(self) -> np.ndarray:
        return grid_points(self.L, self.M_grid)


def grid_points(L: float, M_grid: int) -> np.ndarray:
    return -L + (2.0 * L / M_grid) * np.arange(M_grid)


def _require_grid(M_grid: int, Kmax: int):
    if M_grid < 2 * Kmax + 2:
        raise AliasingError(f"grid of {M_grid} points cannot resolve Kmax = {Kmax}"
                            f" (need >= {2 * Kmax + 2})")


def dealiased_grid_size(Kmax: int, degree: Optional[int]) -> int:
    """Grid size on which degree-``degree`` products of a band-limited
    profile are analysed back without aliasing (``M > (degree+1) Kmax``)."""
    if degree is None:
        need = 4 * Kmax
    else:
        need = max(4 * Kmax, (degree + 1) * Kmax + 1)
    M = scipy.fft.next_fast_len(need, real=True)
    return M + (M % 2)


def _signs(Kmax: int) -> np.ndarray:
    return np.where(np.arange(1, Kmax + 1) % 2, -1.0, 1.0)


def _synth(coeffs: np.ndarray, M_grid: int) -> np.ndarray:
    Kmax = coeffs.size
    spec = np.zeros(M_grid // 2 + 1, dtype=complex)
    spec[1:Kmax + 1] = M_grid * _signs(Kmax) * coeffs
    return scipy.fft.irfft(spec, n=M_grid)


def _analyze(values: np.ndarray, Kmax: int) -> np.ndarray:
    M = values.size
    spec = scipy.fft.rfft(values)
    return _signs(Kmax) * spec[1:Kmax + 1] / M


def synthesize(prof: FourierProfile, M_grid: int) -> GridFunction:
    """Sample the profile on ``M_grid`` equispaced points of ``[-L, L)``."""
    _require_grid(M_grid, prof.Kmax)
    return GridFunction(prof.L, _synth(prof.coeffs, M_grid))


def analyze(g: GridFunction, Kmax: int) -> FourierProfile:
    """Discrete Fourier coefficients of grid data, projected onto the sine subspace."""
    _require_grid(g.M_grid, Kmax)
    return project_X0(FourierProfile(g.L, _analyze(g.values, Kmax)))


def project_X0(prof: FourierProfile) -> FourierProfile:
    """Keep the odd part (purely imaginary coefficients); idempotent."""
    return FourierProfile(prof.L, 1j * prof.coeffs.imag)


def shift(prof: FourierProfile, delta: float) -> FourierProfile:
    """Exact representation of ``Q(z + delta)``."""
    return FourierProfile(prof.L, prof.coeffs * np.exp(1j * prof.Omega * prof.k * delta))


def second_derivative(prof: FourierProfile) -> FourierProfile:
    return FourierProfile(prof.L, -(prof.Omega * prof.k) ** 2 * prof.coeffs)


def laplacian_symbol(Omega: float, k) -> np.ndarray:
    """Fourier symbol ``-4 sin^2(Omega k / 2)`` of ``Q(z+1) - 2Q(z) + Q(z-1)``."""
    return -4.0 * np.sin(0.5 * Omega * np.asarray(k)) ** 2


def discrete_laplacian(prof: FourierProfile) -> FourierProfile:
    return FourierProfile(prof.L, laplacian_symbol(prof.Omega, prof.k) * prof.coeffs)


def nu(k, lp: LatticeParams, wp: WaveParams):
    """Eigenvalue of ``M P = P'' - (kappa/c^2)(P(z+1) - 2P + P(z-1))`` on mode ``k``."""
    k = np.asarray(k)
    if np.any(k == 0):
        raise ValueError("nu is undefined for k = 0")
    W = lp.Omega
    val = -(W * k) ** 2 + 4.0 * lp.kappa / wp.c**2 * np.sin(0.5 * W * k) ** 2
    return float(val) if val.ndim == 0 else val


def _check_L(prof: FourierProfile, lp: LatticeParams):
    if not math.isclose(prof.L, lp.L, rel_tol=1e-14):
        raise ValueError(f"profile period 2*{prof.L} differs from lattice 2*{lp.L}")


def invertibility_check(lp: LatticeParams, wp: WaveParams, Kmax: int) -> np.ndarray:
    """Return ``nu_k`` for ``k = 1..Kmax``; raise near resonance."""
    nus = nu(np.arange(1, Kmax + 1), lp, wp)
    if np.min(np.abs(nus)) < RESONANCE_FLOOR * lp.Omega**2:
        kbad = int(np.argmin(np.abs(nus))) + 1
        raise SingularOperator(f"nu_{kbad} = {nus[kbad - 1]:.3e} is numerically zero")
    return nus


def apply_M(prof: FourierProfile, lp: LatticeParams, wp: WaveParams) -> FourierProfile:
    _check_L(prof, lp)
    return FourierProfile(prof.L, nu(prof.k, lp, wp) * prof.coeffs)


def apply_M_inverse(prof: FourierProfile, lp: LatticeParams, wp: WaveParams) -> FourierProfile:
    """Divide each mode by ``nu_k``.

    Only genuine (near-)singularity on the truncated space is refused;
    ``condition_As`` is sufficient for invertibility but not necessary
    (``c**2 > kappa`` already keeps every ``nu_k`` negative).
    """
    _check_L(prof, lp)
    nus = invertibility_check(lp, wp, prof.Kmax)
    return FourierProfile(prof.L, prof.coeffs / nus)


class MInverseNorm(NamedTuple):
    exact_sup: float
    paper_bound_X2: float
    paper_bound_X0: float


def m_inverse_norm(lp: LatticeParams, wp: WaveParams, Kmax: int = DEFAULT_KMAX) -> MInverseNorm:
    """Operator norm of M^-1 from X0 to X2 on the truncated space, with the closed-form bounds."""
    if not condition_As(lp, wp):
        raise SingularOperator("the closed-form bounds on M^-1 need 4 kappa/c^2 < Omega^2")
    k = np.arange(1, Kmax + 1)
    W2 = lp.Omega**2
    exact = float(np.max((lp.Omega * k) ** 2 / np.abs(nu(k, lp, wp))))
    bound_X2 = W2 / (W2 - 4.0 * lp.kappa / wp.c**2)
    bound_X0 = wp.c**2 / (wp.c**2 * W2 - 4.0 * lp.kappa)
    return MInverseNorm(exact, bound_X2, bound_X0)


class Norms(NamedTuple):
    X0: float
    X1: float
    X2: float
    Linf: float


def norms(prof: FourierProfile, M_dense: Optional[int] = None) -> Norms:
    """Coefficient-sum norms; ``Linf`` is a max over a dense grid (a lower bound)."""
    a2 = 2.0 * np.abs(prof.coeffs) ** 2  # both signs of k
    wk = prof.Omega * prof.k
    if M_dense is None:
        M_dense = max(16 * prof.Kmax, 1024)
    linf = float(np.max(np.abs(_synth(prof.coeffs, M_dense))))
    return Norms(float(np.sqrt(a2.sum())), float(np.sqrt((wk**2 * a2).sum())),
                 float(np.sqrt((wk**4 * a2).sum())), linf)


def poincare_constant(L: float) -> float:
    return L**2 / math.pi**2


def profile_to_text(prof: FourierProfile) -> str:
    """Plain-text record: ``L Kmax`` header, then ``k re im`` per mode (17 digits)."""
    lines = [f"{prof.L:.17g} {prof.Kmax}"]
    for k, c in zip(prof.k, prof.coeffs):
        lines.append(f"{k} {c.real:.17g} {c.imag:.17g}")
    return "\n".join(lines) + "\n"


def profile_from_text(text: str) -> FourierProfile:
    rows = [r.split() for r in text.strip().splitlines() if r.strip()]
    L, Kmax = float(rows[0][0]), int(rows[0][1])
    coeffs = np.zeros(Kmax, dtype=complex)
    for k, re, im in rows[1:]:
        k = int(k)
        if not 1 <= k <= Kmax:
            raise ValueError(f"mode {k} outside 1..{Kmax}")
        coeffs[k - 1] = complex(float(re), float(im))
    return FourierProfile(L, coeffs)
