"""Lattice geometry, wave parameters and on-site potentials.

Two potential families are supported:

* :class:`HardPotential` -- a user-supplied even, convex-at-origin potential
  given as three closures plus the declared growth constants
  ``mbar, alpha, bigK, beta``.  The constants are data; the library checks
  them on a grid (:func:`validate_hard_assumptions`) but never infers them.
* :class:`SoftPotential` -- ``V(x) = -omega0**2/2 x**2 + a/(p+1) x**(p+1)``
  with ``p`` an odd integer.

Polynomial potentials additionally carry ``even_coeffs``: the coefficients
``e_m`` of ``V(x) = sum_m e_m x**(2m)`` for ``m = 1, 2, ...``.  The compiled
lattice integrator only accepts potentials in that form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence, Union

import numpy as np

ArrayFunc = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class LatticeParams:
    """Periodic lattice on ``(-L, L)`` with ``N`` sites and coupling ``kappa``."""

    L: float
    N: int
    kappa: float = 0.0

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError(f"L must be positive, got {self.L}")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        if not self.kappa >= 0:
            raise ValueError(f"kappa must be non-negative, got {self.kappa}")
        object.__setattr__(self, "N", int(self.N))

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def Omega(self) -> float:
        return math.pi / self.L

    @property
    def unit_spacing(self) -> bool:
        """True when ``N == 2L``; required to simulate a travelling wave."""
        return abs(self.N - 2.0 * self.L) <= 1e-12 * max(1.0, self.N)

    def sites(self) -> np.ndarray:
        """Site coordinates ``x_n = -L + n h`` for ``n = 0..N``."""
        return -self.L + self.h * np.arange(self.N + 1)

    @classmethod
    def unit(cls, L: float, kappa: float = 0.0) -> "LatticeParams":
        """Lattice with ``h = 1``, i.e. ``N = 2L`` (``2L`` must be an integer)."""
        N = round(2 * L)
        if abs(N - 2 * L) > 1e-12 * max(1.0, N):
            raise ValueError(f"2L = {2 * L} is not an integer")
        return cls(L=L, N=N, kappa=kappa)


@dataclass(frozen=True)
class WaveParams:
    """Travelling-wave velocity; only ``c > 0`` needs to be considered."""

    c: float

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"wave velocity must be positive, got {self.c}")


def _horner(x2, w):
    acc = np.zeros_like(x2)
    for c in w[::-1]:
        acc = acc * x2 + c
    return acc


def even_poly_eval(x, e, order: int = 0):
    """``V = sum_m e_m x^(2m)`` (order 0) or its derivatives, Horner in ``x^2``.

    Working in ``x^2`` makes ``V(x) == V(-x)`` hold bit for bit.
    """
    x = np.asarray(x, dtype=float)
    e = np.asarray(e, dtype=float)
    m = np.arange(1, e.size + 1)
    x2 = x * x
    if order == 0:
        return x2 * _horner(x2, e)
    if order == 1:
        return x * _horner(x2, 2.0 * m * e)
    return _horner(x2, 2.0 * m * (2.0 * m - 1.0) * e)


def _even_poly(coeffs: Sequence[float]):
    e = tuple(float(c) for c in coeffs)

    def v(x):
        return even_poly_eval(x, e, 0)

    def dv(x):
        return even_poly_eval(x, e, 1)

    def ddv(x):
        return even_poly_eval(x, e, 2)

    return v, dv, ddv


@dataclass(frozen=True, eq=False)
class HardPotential:
    """Hard on-site potential with declared growth/Lipschitz constants.

    ``degree`` is the polynomial degree of ``V`` when known; it sizes the
    dealiasing grid.  ``None`` means "not a polynomial" and the default
    oversampled grid is used instead.
    """

    v: ArrayFunc
    dv: ArrayFunc
    ddv: ArrayFunc
    mbar: float
    alpha: float
    bigK: float
    beta: float
    degree: Optional[int] = None
    even_coeffs: Optional[tuple] = None
    name: str = "hard"

    def __post_init__(self):
        for label in ("mbar", "alpha", "bigK", "beta"):
            value = getattr(self, label)
            if not value > 0:
                raise ValueError(f"{label} must be positive, got {value}")

    @classmethod
    def polynomial(cls, coeffs: Sequence[float] = (0.5, 0.25), mbar: float = 7.0,
                   alpha: float = 1.0, bigK: float = 4.0, beta: float = 2.0,
                   name: str = "hard_poly") -> "HardPotential":
        """``V(x) = sum_m coeffs[m-1] x**(2m)``.

        The defaults give ``x**2/2 + x**4/4`` with constants that pass
        :func:`validate_hard_assumptions` on ``0.5 <= |x| <= 2``.
        """
        v, dv, ddv = _even_poly(coeffs)
        return cls(v=v, dv=dv, ddv=ddv, mbar=mbar, alpha=alpha, bigK=bigK, beta=beta,
                   degree=2 * len(coeffs), even_coeffs=tuple(float(c) for c in coeffs),
                   name=name)


@dataclass(frozen=True, eq=False)
class SoftPotential:
    """``V(x) = -omega0**2/2 x**2 + a/(p+1) x**(p+1)``, ``p`` odd and > 1."""

    omega0: float
    a: float
    p: int = 3
    name: str = field(default="soft", repr=False)

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if not self.a > 0:
            raise ValueError(f"a must be positive, got {self.a}")
        if int(self.p) != self.p or self.p <= 1 or self.p % 2 != 1:
            raise ValueError(f"p must be an odd integer > 1, got {self.p}")
        object.__setattr__(self, "p", int(self.p))

    @property
    def degree(self) -> int:
        return self.p + 1

    @property
    def even_coeffs(self) -> tuple:
        coeffs = [0.0] * ((self.p + 1) // 2)
        coeffs[0] -= 0.5 * self.omega0**2
        coeffs[-1] += self.a / (self.p + 1)
        return tuple(coeffs)

    def v(self, x):
        return even_poly_eval(x, self.even_coeffs, 0)

    def dv(self, x):
        return even_poly_eval(x, self.even_coeffs, 1)

    def ddv(self, x):
        return even_poly_eval(x, self.even_coeffs, 2)


Potential = Union[HardPotential, SoftPotential]


def eval_potential(pot: Potential, x: float) -> tuple[float, float, float]:
    """Return ``(V(x), V'(x), V''(x))``."""
    return float(pot.v(x)), float(pot.dv(x)), float(pot.ddv(x))


def condition_As(lp: LatticeParams, wp: WaveParams) -> bool:
    """Sufficient invertibility condition ``4 kappa / c**2 < Omega**2``."""
    return 4.0 * lp.kappa / wp.c**2 < lp.Omega**2


class CheckResult(NamedTuple):
    name: str
    passed: bool
    worst_margin: float  # max of (lhs - rhs); <= 0 means satisfied


@dataclass
class ValidationReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def validate_hard_assumptions(pot: HardPotential, x_max: float, samples: int,
                              x_min: float) -> ValidationReport:
    """Check the hard-potential assumptions on a uniform grid over ``[-x_max, x_max]``.

    The growth bound on ``V''`` and the Lipschitz structure of ``V'`` are
    both checked only where ``|x| >= x_min``: a linear restoring force
    (``V''(0) > 0``) cannot satisfy either bound near the origin.
    Failures are reported, never raised.
    """
    if not (x_max > x_min > 0):
        raise ValueError("need x_max > x_min > 0")
    if samples < 2:
        raise ValueError("need at least two samples")
    x = np.linspace(-x_max, x_max, samples)
    V, dV, ddV = pot.v(x), pot.dv(x), pot.ddv(x)
    scale = max(1.0, float(np.max(np.abs(V))))
    checks = []

    v0, dv0, ddv0 = eval_potential(pot, 0.0)
    origin = max(abs(v0), abs(dv0))
    checks.append(CheckResult("origin", origin <= 1e-12 and ddv0 > 0,
                              max(origin, -ddv0)))

    even = float(np.max(np.abs(V - pot.v(-x))))
    checks.append(CheckResult("evenness", even <= 1e-12 * scale, even))

    nonneg = float(np.max(-V))
    checks.append(CheckResult("nonnegative", nonneg <= 1e-12 * scale, nonneg))

    far = np.abs(x) >= x_min
    xf = x[far]
    growth = np.abs(ddV[far]) - pot.mbar * np.abs(xf) ** pot.alpha
    g = float(np.max(growth)) if growth.size else -math.inf
    checks.append(CheckResult("growth", g <= 1e-12 * scale, g))

    d = dV[far]
    x1, x2 = xf[:, None], xf[None, :]
    lhs = np.abs(d[:, None] - d[None, :])
    rhs = pot.bigK * (np.abs(x1) ** pot.beta + np.abs(x2) ** pot.beta) * np.abs(x1 - x2)
    lip = float(np.max(lhs - rhs)) if lhs.size else -math.inf
    checks.append(CheckResult("lipschitz", lip <= 1e-12 * scale, lip))

    return ValidationReport(checks)
