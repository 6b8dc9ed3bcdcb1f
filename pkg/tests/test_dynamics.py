import math

import numpy as np
import pytest

from kgwaves import (Blowup, ConsistencyError, FourierProfile, HardPotential, LatticeParams,
                     LatticeState, SolverConfig, WaveParams, hamiltonian, init_from_profile,
                     integrate, solve_hard, step_verlet, verify_travelling)
from kgwaves import _backend
from kgwaves.dynamics import measure_frequency, transit_time

L8 = LatticeParams(8.0, 16, 0.1)
BACKENDS = _backend.available()


@pytest.fixture(scope="module")
def wave():
    hp = HardPotential.polynomial()
    wp = WaveParams(1.5)
    out = solve_hard(L8, wp, hp, SolverConfig(seed_mode=2, seed_amplitude=0.6))
    return out.profile, wp, hp


def test_init_from_sine():
    st = init_from_profile(FourierProfile.sine_mode(8.0, 8, 1, 1.0), L8, WaveParams(2.0))
    n = np.arange(16)
    assert np.allclose(st.q, np.sin(math.pi * n / 8), atol=1e-15)
    assert np.allclose(st.p, -2.0 * math.pi / 8 * np.cos(math.pi * n / 8), atol=1e-15)
    zero = init_from_profile(FourierProfile.zeros(8.0, 4), L8, WaveParams(1.0))
    assert not np.any(zero.q) and not np.any(zero.p)


def test_init_requires_unit_spacing():
    with pytest.raises(ConsistencyError):
        init_from_profile(FourierProfile.zeros(math.pi, 4), LatticeParams(math.pi, 6, 0.1),
                          WaveParams(1.0))


def test_odd_profile_gives_antisymmetric_state(wave):
    prof, wp, _ = wave
    st = init_from_profile(prof, L8, wp)
    q = st.q
    assert np.allclose(q[1:], -q[1:][::-1], atol=1e-14) and abs(q[0]) < 1e-14


@pytest.mark.parametrize("backend", BACKENDS)
def test_zero_state_stays_zero(backend, hard):
    tr = integrate(LatticeState(np.zeros(16), np.zeros(16)), L8, hard, 0.01, 5.0, 10, backend)
    assert not np.any(tr.q) and not np.any(tr.p)


@pytest.mark.parametrize("backend", BACKENDS)
def test_reversibility(backend, wave):
    prof, wp, hp = wave
    st = init_from_profile(prof, L8, wp)
    fwd = integrate(st, L8, hp, 1e-3, 20.0, 1000, backend).final
    back = integrate(LatticeState(fwd.q, -fwd.p), L8, hp, 1e-3, 20.0, 1000, backend).final
    assert np.max(np.abs(back.q - st.q)) < 1e-10 and np.max(np.abs(back.p + st.p)) < 1e-10


def test_backends_agree(wave):
    if "cython" not in BACKENDS:
        pytest.skip("compiled kernel not built")
    prof, wp, hp = wave
    st = init_from_profile(prof, L8, wp)
    a = integrate(st, L8, hp, 1e-3, 10.0, 50, "cython")
    b = integrate(st, L8, hp, 1e-3, 10.0, 50, "python")
    assert np.array_equal(a.times, b.times)
    assert np.max(np.abs(a.q - b.q)) < 1e-12 and np.max(np.abs(a.p - b.p)) < 1e-12
    assert np.allclose(a.H, b.H, rtol=1e-13)


def test_step_matches_integrate(wave):
    prof, wp, hp = wave
    st = init_from_profile(prof, L8, wp)
    one = step_verlet(st, L8, hp, 1e-3)
    tr = integrate(st, L8, hp, 1e-3, 1e-3, 1)
    assert np.array_equal(one.q, tr.q[-1]) and one.t == pytest.approx(1e-3)


def test_recorded_energy_matches_hamiltonian(wave):
    prof, wp, hp = wave
    st = init_from_profile(prof, L8, wp)
    tr = integrate(st, L8, hp, 1e-3, 1.0, 100)
    assert tr.H[0] == pytest.approx(hamiltonian(st, L8, hp), rel=1e-14)


def test_travelling_wave_verified(wave):
    prof, wp, hp = wave
    T = 10 * transit_time(L8, wp)
    tr = integrate(init_from_profile(prof, L8, wp), L8, hp, 1e-3, T, 100)
    dev, ok = verify_travelling(tr, prof, L8, wp, tol=1e-5)
    assert ok and dev < 1e-5
    assert tr.relative_drift < 1e-8
    # deviation grows at most linearly: second half adds no more than the first
    half = len(tr.times) // 2
    z = np.arange(16)[None, :] - wp.c * tr.times[:, None]
    d = np.max(np.abs(tr.q - prof(z)), axis=1)
    assert d[-1] <= 2.5 * d[half] + 1e-9


def test_perturbed_profile_rejected(wave):
    prof, wp, hp = wave
    bad = prof.with_coeffs(prof.coeffs + np.r_[0, 0, 1e-2j, np.zeros(prof.Kmax - 3)])
    tr = integrate(init_from_profile(bad, L8, wp), L8, hp, 1e-3, 10 * transit_time(L8, wp), 100)
    assert not verify_travelling(tr, bad, L8, wp)[1]
    zero = FourierProfile.zeros(8.0, 4)
    tz = integrate(init_from_profile(zero, L8, wp), L8, hp, 1e-2, 1.0, 10)
    assert verify_travelling(tz, zero, L8, wp) == (0.0, True)


@pytest.mark.parametrize("m", [1, 3, 5])
def test_dispersion_relation(m, hard):
    N, kappa, eps = 16, 0.4, 1e-4
    lp = LatticeParams(8.0, N, kappa)
    q = 2 * math.pi * m / N
    n = np.arange(N)
    tr = integrate(LatticeState(eps * np.cos(q * n), np.zeros(N)), lp, hard, 1e-3, 60.0, 10)
    w = measure_frequency(tr.times, tr.q[:, 0])
    w2 = 1.0 + 4 * kappa * math.sin(q / 2) ** 2
    assert w**2 == pytest.approx(w2, rel=1e-3)


def test_blowup_detected():
    runaway = HardPotential.polynomial(coeffs=(0.5, -0.25))
    st = LatticeState(np.full(16, 3.0), np.zeros(16))
    with pytest.raises(Blowup):
        integrate(st, L8, runaway, 1e-3, 50.0, 100)


def test_non_polynomial_potential_uses_fallback():
    hp = HardPotential(v=lambda x: np.cosh(x) - 1, dv=np.sinh, ddv=np.cosh,
                       mbar=7, alpha=1, bigK=4, beta=2)
    st = LatticeState(0.1 * np.sin(np.arange(16)), np.zeros(16))
    tr = integrate(st, L8, hp, 1e-2, 5.0, 10)
    assert tr.backend == "python" and tr.relative_drift < 1e-4
    with pytest.raises(ValueError):
        if "cython" in BACKENDS:
            integrate(st, L8, hp, 1e-2, 1.0, 10, backend="cython")
        else:
            raise ValueError


def test_dt_must_be_positive(hard):
    with pytest.raises(ValueError):
        integrate(LatticeState(np.zeros(16), np.zeros(16)), L8, hard, 0.0, 1.0)
