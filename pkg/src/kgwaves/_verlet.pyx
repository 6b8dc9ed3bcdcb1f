# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Stormer-Verlet loop for periodic Klein-Gordon chains.

Mirrors :func:`kgwaves._verlet_py.verlet_run` operation for operation so
both backends agree to rounding.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


cdef inline double _dv(double x, const double[::1] e, Py_ssize_t nm) noexcept nogil:
    # V'(x) = x * sum_m 2m e_m (x^2)^(m-1), Horner from the top term
    cdef double x2 = x * x
    cdef double acc = 0.0
    cdef Py_ssize_t m
    for m in range(nm - 1, -1, -1):
        acc = acc * x2 + 2.0 * (m + 1) * e[m]
    return x * acc


cdef inline double _v(double x, const double[::1] e, Py_ssize_t nm) noexcept nogil:
    cdef double x2 = x * x
    cdef double acc = 0.0
    cdef Py_ssize_t m
    for m in range(nm - 1, -1, -1):
        acc = acc * x2 + e[m]
    return x2 * acc


cdef void _force(const double[::1] q, double[::1] f, double kappa,
                 const double[::1] e, Py_ssize_t nm) noexcept nogil:
    cdef Py_ssize_t n, N = q.shape[0]
    cdef double qm, qp
    for n in range(N):
        qm = q[n - 1] if n > 0 else q[N - 1]
        qp = q[n + 1] if n < N - 1 else q[0]
        f[n] = kappa * (qp - 2.0 * q[n] + qm) - _dv(q[n], e, nm)


cdef double _energy(const double[::1] q, const double[::1] p, double kappa,
                    const double[::1] e, Py_ssize_t nm) noexcept nogil:
    cdef Py_ssize_t n, N = q.shape[0]
    cdef double h = 0.0, dq, qp
    for n in range(N):
        qp = q[n + 1] if n < N - 1 else q[0]
        dq = qp - q[n]
        h += 0.5 * p[n] * p[n] + _v(q[n], e, nm) + 0.5 * kappa * dq * dq
    return h


def verlet_run(q0, p0, double kappa, coeffs, double dt, Py_ssize_t nsteps,
               Py_ssize_t record_every, double blowup=1e6):
    """Integrate ``nsteps`` kick-drift-kick steps.

    Returns ``(steps, Q, P, H, blown)``: recorded step indices, positions,
    momenta and energies at steps ``0, r, 2r, ...`` plus the final step.
    """
    cdef double[::1] q = np.array(q0, dtype=np.float64, copy=True)
    cdef double[::1] p = np.array(p0, dtype=np.float64, copy=True)
    cdef double[::1] e = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef Py_ssize_t N = q.shape[0], nm = e.shape[0]
    cdef double[::1] f = np.empty(N, dtype=np.float64)
    cdef Py_ssize_t nrec = nsteps // record_every + 1 + (1 if nsteps % record_every else 0)
    steps_out = np.empty(nrec, dtype=np.int64)
    Q_out = np.empty((nrec, N), dtype=np.float64)
    P_out = np.empty((nrec, N), dtype=np.float64)
    H_out = np.empty(nrec, dtype=np.float64)
    cdef long long[::1] s_v = steps_out
    cdef double[:, ::1] Q_v = Q_out
    cdef double[:, ::1] P_v = P_out
    cdef double[::1] H_v = H_out
    cdef Py_ssize_t step, n, r = 0
    cdef double half = 0.5 * dt
    cdef bint blown = False

    s_v[0] = 0
    Q_v[0, :] = q
    P_v[0, :] = p
    H_v[0] = _energy(q, p, kappa, e, nm)
    r = 1
    with nogil:
        _force(q, f, kappa, e, nm)
        for step in range(1, nsteps + 1):
            for n in range(N):
                p[n] = p[n] + half * f[n]
                q[n] = q[n] + dt * p[n]
            _force(q, f, kappa, e, nm)
            for n in range(N):
                p[n] = p[n] + half * f[n]
                if fabs(q[n]) > blowup:
                    blown = True
            if blown or step % record_every == 0 or step == nsteps:
                s_v[r] = step
                Q_v[r, :] = q
                P_v[r, :] = p
                H_v[r] = _energy(q, p, kappa, e, nm)
                r += 1
                if blown:
                    break
    return steps_out[:r], Q_out[:r], P_out[:r], H_out[:r], bool(blown)
