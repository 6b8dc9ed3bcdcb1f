"""Periodic travelling waves of discrete Klein-Gordon lattices.

Spectral solvers, existence thresholds and direct lattice integration.
"""

from .errors import (AliasingError, Blowup, ConfigError, ConsistencyError, Diverged,
                     InvalidRegime, KGWavesError, LinearSolveFailure, PreconditionViolated,
                     SingularOperator)
from .lattice import (HardPotential, LatticeParams, SoftPotential, WaveParams, condition_As,
                      eval_potential, validate_hard_assumptions)
from .spectral import (FourierProfile, GridFunction, analyze, apply_M, apply_M_inverse,
                       m_inverse_norm, norms, nu, project_X0, second_derivative, shift,
                       synthesize)
from .functionals import (action_gradient_soft, action_S_soft, energy_E, hamiltonian,
                          kinetic_energy_T, residual)
from .thresholds import (embedding_constants, energy_threshold, kinetic_threshold_check,
                         r_crit, r_max, rho_bound, soft_thresholds, threshold_report,
                         velocity_upper_bound)
from .solvers import (Classification, SolveOutcome, SolverConfig, apply_N, mountain_pass_solve,
                      newton_refine, picard_solve, solve_hard)
from .dynamics import (LatticeState, Trajectory, init_from_profile, integrate, step_verlet,
                       verify_travelling)

__version__ = "0.1.0"
