"""Closed-form existence/non-existence thresholds.

Embedding constants are explicit Cauchy-Schwarz bounds in the
coefficient-sum norms used throughout the package (``Omega = pi/L``)::

    C_L     = L^2/pi^2                  Poincare constant
    C_star  = sqrt(2 zeta(2)) / Omega   sup|Q| <= C_star  ||Q||_X1
    C0_star = 1 / Omega^2               ||Q||_X0 <= C0_star ||Q||_X2
    C2_star = sqrt(2 zeta(4)) / Omega^2 sup|Q| <= C2_star ||Q||_X2
    C3_star = C2_star / C0_star         (independent of L)

``paper_printed_formulas=True`` switches the energy threshold and the
velocity bound to their literally printed variants (``sqrt(2 R_crit)`` and
a factor ``C(L)`` instead of ``sqrt(C(L))``) so both can be tabulated.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from .errors import InvalidRegime, PreconditionViolated
from .functionals import kinetic_energy_T
from .lattice import HardPotential, LatticeParams, SoftPotential, WaveParams, condition_As
from .spectral import FourierProfile

SQRT_2ZETA2 = math.pi / math.sqrt(3.0)
SQRT_2ZETA4 = math.pi**2 / math.sqrt(45.0)


@dataclass(frozen=True)
class EmbeddingConstants:
    C_L: float
    C_star: float
    C0_star: float
    C2_star: float
    C3_star: float


def embedding_constants(L: float) -> EmbeddingConstants:
    if not L > 0:
        raise ValueError(f"L must be positive, got {L}")
    W = math.pi / L
    C0 = 1.0 / W**2
    C2 = SQRT_2ZETA4 / W**2
    return EmbeddingConstants(C_L=L**2 / math.pi**2, C_star=SQRT_2ZETA2 / W,
                              C0_star=C0, C2_star=C2, C3_star=C2 / C0)


def _ring_base(lp: LatticeParams, wp: WaveParams, hp: HardPotential, ec: EmbeddingConstants) -> float:
    margin = wp.c**2 * lp.Omega**2 - 4.0 * lp.kappa
    if not margin > 0:
        raise InvalidRegime(f"c^2 Omega^2 - 4 kappa = {margin:.6g} <= 0; ring radii undefined")
    return margin / (hp.bigK * ec.C3_star**hp.beta)


def r_max(lp, wp, hp: HardPotential, ec: Optional[EmbeddingConstants] = None) -> float:
    """Radius of the X0 ball in which a travelling wave is guaranteed to exist."""
    ec = ec or embedding_constants(lp.L)
    return _ring_base(lp, wp, hp, ec) ** (1.0 / hp.beta)


def r_crit(lp, wp, hp: HardPotential, ec: Optional[EmbeddingConstants] = None) -> float:
    """Below this X0 radius the fixed-point map is a contraction: only Q = 0."""
    ec = ec or embedding_constants(lp.L)
    return _ring_base(lp, wp, hp, ec) ** (1.0 / (1.0 + hp.beta))


def condition_As1(lp, wp, hp: HardPotential, ec: Optional[EmbeddingConstants] = None) -> bool:
    """Strengthened condition ``Omega^2 > (4 kappa + K C3^beta) / c^2``."""
    ec = ec or embedding_constants(lp.L)
    return lp.Omega**2 > (4.0 * lp.kappa + hp.bigK * ec.C3_star**hp.beta) / wp.c**2


def ring_check(lp, wp, hp: HardPotential, ec: Optional[EmbeddingConstants] = None) -> dict:
    ec = ec or embedding_constants(lp.L)
    base = _ring_base(lp, wp, hp, ec)
    return {"R_max": base ** (1.0 / hp.beta), "R_crit": base ** (1.0 / (1.0 + hp.beta)),
            "ring_nonempty": base > 1.0, "condition_As1": condition_As1(lp, wp, hp, ec)}


def energy_threshold(R_crit: float, paper_printed_formulas: bool = False) -> float:
    """Energy below which no non-trivial wave exists.

    Inverts ``||Q||_X0 <= sqrt(2E)``: ``E_crit = R_crit^2 / 2``.
    """
    if R_crit < 0:
        raise ValueError("R_crit must be non-negative")
    if paper_printed_formulas:
        return math.sqrt(2.0 * R_crit)
    return 0.5 * R_crit**2


def contraction_constant_hard(lp, wp, hp: HardPotential, R: float,
                              ec: Optional[EmbeddingConstants] = None) -> float:
    ec = ec or embedding_constants(lp.L)
    if not R > 0:
        raise ValueError("R must be positive")
    return 2.0 / wp.c**2 * (lp.kappa + hp.bigK * ec.C_star * R**hp.beta)


def velocity_upper_bound(lp, hp: HardPotential, R: float, ec: Optional[EmbeddingConstants] = None,
                         paper_printed_formulas: bool = False) -> float:
    """Upper bound on ``c^2`` for non-trivial waves with ``||Q||_X1 <= R``.

    Solves ``M sqrt(C(L)) = 1`` for ``c^2``.
    """
    ec = ec or embedding_constants(lp.L)
    if not R > 0:
        raise ValueError("R must be positive")
    factor = ec.C_L if paper_printed_formulas else math.sqrt(ec.C_L)
    return 2.0 * (lp.kappa + hp.bigK * ec.C_star * R**hp.beta) * factor


@dataclass(frozen=True)
class SoftThresholds:
    c_crit: float
    T_thresh: float
    M_soft: float


def soft_thresholds(lp, wp, sp: SoftPotential, ec: Optional[EmbeddingConstants] = None,
                    R: float = 1.0) -> SoftThresholds:
    """Critical speed, kinetic-energy threshold and the Lipschitz constant at radius ``R``."""
    ec = ec or embedding_constants(lp.L)
    p, a, C = sp.p, sp.a, ec.C_L
    sC = math.sqrt(C)
    M_soft = (2 * lp.kappa + C * sp.omega0**2 + p * sC * a * ec.C_star ** (p - 1) * R ** (p - 1)) / wp.c**2
    c_crit2 = sC * (2 * lp.kappa + C * sp.omega0**2)
    if wp.c**2 > c_crit2:
        e = 2.0 / (p - 1)
        T = ((wp.c**2 - c_crit2) / C) ** e * (1.0 / (p * a * ec.C_star ** (p - 1))) ** e
    else:
        T = 0.0
    return SoftThresholds(math.sqrt(c_crit2), T, M_soft)


@dataclass(frozen=True)
class KineticCheck:
    applicable: bool
    passed: bool
    T_thresh: float
    twice_T: float

    def __bool__(self):
        return self.passed


def kinetic_threshold_check(prof: FourierProfile, lp, wp, sp: SoftPotential,
                            ec: Optional[EmbeddingConstants] = None) -> KineticCheck:
    """``T_thresh < 2 T(Q)``; vacuously true (not applicable) when ``c <= c_crit``."""
    st = soft_thresholds(lp, wp, sp, ec)
    twice_T = 2.0 * kinetic_energy_T(prof)
    if wp.c <= st.c_crit:
        return KineticCheck(False, True, st.T_thresh, twice_T)
    return KineticCheck(True, st.T_thresh < twice_T, st.T_thresh, twice_T)


def rho_bound(case: str, lp, wp, sp: SoftPotential, ec: Optional[EmbeddingConstants] = None,
              paper_printed_formulas: bool = False) -> float:
    """Radius of the X1 sphere on which the action is bounded below by a positive constant."""
    ec = ec or embedding_constants(lp.L)
    C, p, a, c2 = ec.C_L, sp.p, sp.a, wp.c**2
    gap = 4 * lp.kappa - sp.omega0**2
    if case == "i":
        if gap > 0:
            raise PreconditionViolated("case (i) needs omega0^2 >= 4 kappa")
        margin = c2
    elif case == "ii":
        if not gap > 0:
            raise PreconditionViolated("case (ii) needs omega0^2 < 4 kappa")
        if c2 < gap * C and not math.isclose(c2, gap * C, rel_tol=1e-12):
            raise PreconditionViolated("case (ii) needs c^2 > (4 kappa - omega0^2) C(L)")
        margin = c2 - gap * (1.0 if paper_printed_formulas else C)
        if margin < 0 and paper_printed_formulas:
            raise PreconditionViolated("printed case (ii) radius is undefined here")
        margin = max(margin, 0.0)
    else:
        raise ValueError(f"unknown case {case!r}")
    return ((p + 1) * margin / (2 * a * C)) ** (1.0 / (p - 1))


def ps_case(lp, wp, sp: SoftPotential) -> str:
    """Which Palais-Smale case applies; raises if neither does."""
    if sp.omega0**2 >= 4 * lp.kappa:
        return "i"
    C = lp.L**2 / math.pi**2
    if wp.c**2 > C * (4 * lp.kappa - sp.omega0**2):
        return "ii"
    raise PreconditionViolated("neither omega0^2 >= 4 kappa nor c^2 > C(L)(4 kappa - omega0^2)")


@dataclass
class ThresholdReport:
    condition_As: bool
    condition_As1: Optional[bool] = None
    R_max: Optional[float] = None
    R_crit: Optional[float] = None
    ring_nonempty: Optional[bool] = None
    E_crit: Optional[float] = None
    contraction_M: Optional[float] = None
    velocity_bound_c2: Optional[float] = None
    c_crit: Optional[float] = None
    T_thresh: Optional[float] = None

    FIELDS = ("condition_As", "condition_As1", "R_max", "R_crit", "ring_nonempty", "E_crit",
              "contraction_M", "velocity_bound_c2", "c_crit", "T_thresh")

    def as_record(self) -> dict:
        return {k: v for k, v in asdict(self).items()}


def threshold_report(lp: LatticeParams, wp: WaveParams, pot, R: float = 1.0,
                     paper_printed_formulas: bool = False) -> ThresholdReport:
    """Every bound that is defined for the given parameters.

    ``R`` is the radius at which the contraction constants and the
    velocity bound are evaluated.  Undefined quantities stay ``None``.
    """
    ec = embedding_constants(lp.L)
    rep = ThresholdReport(condition_As=condition_As(lp, wp))
    if isinstance(pot, HardPotential):
        rep.condition_As1 = condition_As1(lp, wp, pot, ec)
        try:
            ring = ring_check(lp, wp, pot, ec)
        except InvalidRegime:
            pass
        else:
            rep.R_max, rep.R_crit = ring["R_max"], ring["R_crit"]
            rep.ring_nonempty = ring["ring_nonempty"]
            rep.E_crit = energy_threshold(rep.R_crit, paper_printed_formulas)
        rep.contraction_M = contraction_constant_hard(lp, wp, pot, R, ec)
        rep.velocity_bound_c2 = velocity_upper_bound(lp, pot, R, ec, paper_printed_formulas)
    elif isinstance(pot, SoftPotential):
        st = soft_thresholds(lp, wp, pot, ec, R)
        rep.c_crit, rep.T_thresh, rep.contraction_M = st.c_crit, st.T_thresh, st.M_soft
    else:
        raise TypeError(f"unsupported potential {type(pot).__name__}")
    return rep
