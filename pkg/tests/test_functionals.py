import math

import numpy as np
import pytest
from conftest import random_odd

from kgwaves import (AliasingError, FourierProfile, HardPotential, LatticeParams, WaveParams,
                     action_gradient_soft, action_S_soft, energy_E, hamiltonian,
                     kinetic_energy_T, norms, residual, shift)
from kgwaves.dynamics import LatticeState
from kgwaves.functionals import inner, integrate, nonlinear_term
from reference_values import compute

REF = compute()
LP = LatticeParams(8.0, 16, 0.1)
WP = WaveParams(1.2)


def linear_potential():
    return HardPotential.polynomial(coeffs=(0.5,))


def test_residual_zero(hard):
    r = residual(FourierProfile.zeros(8.0, 16), LP, WP, hard)
    assert r.X0 == 0 and r.Linf == 0


def test_residual_linear_single_mode():
    lp, wp = LatticeParams(math.pi, 6, 0.3), WaveParams(1.7)
    p = FourierProfile.sine_mode(math.pi, 8, 1, 1.0)
    r = residual(p, lp, wp, linear_potential()).profile
    W = lp.Omega
    expect = (-wp.c**2 * W**2 + 4 * lp.kappa * math.sin(W / 2) ** 2 + 1) * p.coeff(1)
    assert r.coeff(1) == pytest.approx(expect, abs=1e-15)
    assert np.max(np.abs(r.coeffs[1:])) < 1e-15


def test_residual_rejects_coarse_grid(hard):
    p = FourierProfile.sine_mode(8.0, 16, 1, 1.0)
    with pytest.raises(AliasingError):
        residual(p, LP, WP, hard, M_grid=40)


def test_energy_breakdown_sums(rng, hard):
    p = random_odd(rng, 8.0, 16)
    e = energy_E(p, LP, WP, hard)
    assert e.value == pytest.approx(sum(e.breakdown.values()), rel=1e-12)
    assert energy_E(FourierProfile.zeros(8.0, 4), LP, WP, hard).value == 0


def test_energy_small_amplitude_expansion(hard):
    lp, wp = LatticeParams(math.pi, 6, 0.1), WaveParams(1.3)
    eps = 1e-4
    W = lp.Omega
    e = energy_E(FourierProfile.sine_mode(math.pi, 8, 1, eps), lp, wp, hard).value
    quad = math.pi * eps**2 * (wp.c**2 * W**2 + 1 + 4 * lp.kappa * math.sin(W / 2) ** 2) / 2
    assert e == pytest.approx(quad, rel=1e-7)


def test_energy_coercive(rng, hard):
    for _ in range(50):
        p = random_odd(rng, 8.0, 16, scale=rng.uniform(0.01, 3))
        e = energy_E(p, LP, WP, hard).value
        assert 2 * e >= 2 * p.L * norms(p).X0 ** 2 * (1 - 1e-12)


def test_energy_translation_invariant(rng, hard):
    p = random_odd(rng, 8.0, 16)
    e0 = energy_E(p, LP, WP, hard).value
    for d in (0.3, 1.0, 2.7):
        assert energy_E(shift(p, d), LP, WP, hard).value == pytest.approx(e0, rel=1e-12)


def test_action_at_zero_and_far_along_ray(rng, soft):
    assert action_S_soft(FourierProfile.zeros(8.0, 8), LP, WP, soft).value == 0
    p = random_odd(rng, 8.0, 16)
    assert action_S_soft(p * 100.0, LP, WP, soft).value < 0


def test_gradient_central_differences(rng, soft):
    eps = 1e-5
    for _ in range(50):
        q = random_odd(rng, 8.0, 16, scale=0.7)
        d = random_odd(rng, 8.0, 16, scale=0.7)
        g = action_gradient_soft(q, LP, WP, soft)
        fd = (action_S_soft(q + d * eps, LP, WP, soft).value
              - action_S_soft(q - d * eps, LP, WP, soft).value) / (2 * eps)
        assert inner(g, d) == pytest.approx(fd, rel=1e-6)


def test_gradient_at_zero(soft):
    g = action_gradient_soft(FourierProfile.zeros(8.0, 8), LP, WP, soft)
    assert not np.any(g.coeffs)


def test_gradient_linear_multiplier(rng, soft):
    q = random_odd(rng, 8.0, 16)
    g = action_gradient_soft(q, LP, WP, soft)
    power = nonlinear_term(q, lambda x: soft.a * x**soft.p, soft.p)
    W, k = q.Omega, q.k
    d = (WP.c * k * W) ** 2 + soft.omega0**2 - 4 * LP.kappa * np.sin(k * W / 2) ** 2
    assert np.allclose((g.coeffs + 1j * power.coeffs.imag), d * q.coeffs, atol=1e-13)


def test_residual_is_minus_gradient(rng, soft):
    for _ in range(10):
        q = random_odd(rng, 8.0, 16)
        r = residual(q, LP, WP, soft).profile
        g = action_gradient_soft(q, LP, WP, soft)
        assert np.max(np.abs(r.coeffs + g.coeffs)) < 1e-12


def test_kinetic_energy():
    assert kinetic_energy_T(FourierProfile.zeros(2.0, 4)) == 0
    s = FourierProfile.sine_mode(math.pi, 4, 1, 1.0)
    assert kinetic_energy_T(s) == pytest.approx(float(REF["T_sin_Lpi"]), rel=1e-15)
    assert kinetic_energy_T(s * 3.0) == pytest.approx(9 * kinetic_energy_T(s), rel=1e-15)


def test_integrate_matches_dense_quadrature(rng, hard):
    p = random_odd(rng, 8.0, 8)
    z = np.linspace(-8, 8, 20001)[:-1]
    dense = 16.0 * np.mean(hard.v(p(z)))
    assert integrate(p, hard.v, hard.degree) == pytest.approx(dense, rel=1e-12)


def test_hamiltonian(hard):
    lp0 = LatticeParams(4.0, 8, 0.0)
    assert hamiltonian(LatticeState(np.zeros(8), np.zeros(8)), LP, hard) == 0
    q = np.zeros(8)
    q[0] = 0.7
    assert hamiltonian(LatticeState(q, np.zeros(8)), lp0, hard) == pytest.approx(float(hard.v(0.7)))
