"""Pure-numpy Stormer-Verlet loop; fallback for the compiled ``_verlet`` module."""

from __future__ import annotations

import numpy as np


def _horner(x2, e, deriv):
    acc = np.zeros_like(x2)
    for m in range(len(e) - 1, -1, -1):
        acc = acc * x2 + (2.0 * (m + 1) * e[m] if deriv else e[m])
    return acc


def poly_dv(x, e):
    return x * _horner(x * x, e, True)


def poly_v(x, e):
    x2 = x * x
    return x2 * _horner(x2, e, False)


def _force(q, kappa, dv):
    return kappa * ((np.roll(q, -1) - 2.0 * q) + np.roll(q, 1)) - dv(q)


def _energy(q, p, kappa, v):
    dq = np.roll(q, -1) - q
    return float(np.sum(0.5 * p * p + v(q) + 0.5 * kappa * dq * dq))


def verlet_run(q0, p0, kappa, coeffs, dt, nsteps, record_every, blowup=1e6, v=None, dv=None):
    """Same contract as the compiled kernel.

    ``v``/``dv`` replace the even polynomial given by ``coeffs`` (used for
    potentials that are not polynomials; the compiled kernel cannot take them).
    """
    q = np.array(q0, dtype=float)
    p = np.array(p0, dtype=float)
    if dv is None:
        e = np.asarray(coeffs, dtype=float)
        v = lambda x: poly_v(x, e)  # noqa: E731
        dv = lambda x: poly_dv(x, e)  # noqa: E731
    steps, Qs, Ps, Hs = [0], [q.copy()], [p.copy()], [_energy(q, p, kappa, v)]
    half = 0.5 * dt
    f = _force(q, kappa, dv)
    blown = False
    for step in range(1, nsteps + 1):
        p += half * f
        q += dt * p
        f = _force(q, kappa, dv)
        p += half * f
        blown = bool(np.any(np.abs(q) > blowup))
        if blown or step % record_every == 0 or step == nsteps:
            steps.append(step)
            Qs.append(q.copy())
            Ps.append(p.copy())
            Hs.append(_energy(q, p, kappa, v))
            if blown:
                break
    return np.array(steps), np.array(Qs), np.array(Ps), np.array(Hs), blown
