# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled backend for the measurement-sweep hot loop.

Per direction: build the two projectors, form the measured state, and
take the trace norm of the residual with a fixed-size cyclic Jacobi
eigensolver. Everything runs on C stack arrays with the GIL released.
"""

import numpy as np

cimport cython
from libc.math cimport fabs, sqrt


cdef inline double _cabs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef void _jacobi_eigenvalues_4(double complex a[4][4], double w[4]) noexcept nogil:
    """Eigenvalues of a 4x4 Hermitian matrix by cyclic Jacobi rotations.

    The matrix is destroyed. Off-diagonal mass decays quadratically per
    sweep; 30 sweeps is far beyond what 4x4 ever needs.
    """
    cdef int sweep, p, q, k
    cdef double off, r, tau, t, c, s, app, aqq
    cdef double complex apq, phase, akp, akq

    for sweep in range(30):
        off = 0.0
        for p in range(3):
            for q in range(p + 1, 4):
                off += _cabs2(a[p][q])
        if off < 1e-30:
            break
        for p in range(3):
            for q in range(p + 1, 4):
                apq = a[p][q]
                r = sqrt(_cabs2(apq))
                if r < 1e-154:
                    continue
                phase = apq / r
                app = a[p][p].real
                aqq = a[q][q].real
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # G has G[p,p]=G[q,q]=c, G[p,q]=s*phase, G[q,p]=-s*conj(phase);
                # update a <- G^dag a G touching only rows/columns p and q.
                a[p][p] = c * c * app - 2.0 * s * c * r + s * s * aqq
                a[q][q] = s * s * app + 2.0 * s * c * r + c * c * aqq
                a[p][q] = 0.0
                a[q][p] = 0.0
                for k in range(4):
                    if k == p or k == q:
                        continue
                    akp = a[k][p]
                    akq = a[k][q]
                    a[k][p] = c * akp - s * phase.conjugate() * akq
                    a[k][q] = s * phase * akp + c * akq
                    a[p][k] = a[k][p].conjugate()
                    a[q][k] = a[k][q].conjugate()
    for k in range(4):
        w[k] = a[k][k].real


cdef double _residual_norm(const double complex rho[4][4],
                           double nx, double ny, double nz) noexcept nogil:
    """tr|rho - measured(rho)| for a measurement of qubit A along (nx,ny,nz)."""
    cdef double complex proj[2][2]
    cdef double complex big[4][4]
    cdef double complex tmp[4][4]
    cdef double complex diff[4][4]
    cdef double w[4]
    cdef int sign_index, i, j, k, bi, bj
    cdef double sign, total

    for i in range(4):
        for j in range(4):
            diff[i][j] = rho[i][j]

    for sign_index in range(2):
        sign = 1.0 if sign_index == 0 else -1.0
        # P = (I + sign n.sigma)/2
        proj[0][0] = 0.5 * (1.0 + sign * nz)
        proj[0][1] = 0.5 * sign * (nx - 1j * ny)
        proj[1][0] = 0.5 * sign * (nx + 1j * ny)
        proj[1][1] = 0.5 * (1.0 - sign * nz)
        # big = P x I2
        for i in range(4):
            for j in range(4):
                big[i][j] = 0.0
        for bi in range(2):
            for bj in range(2):
                big[2 * bi][2 * bj] = proj[bi][bj]
                big[2 * bi + 1][2 * bj + 1] = proj[bi][bj]
        # diff -= big @ rho @ big   (big is Hermitian)
        for i in range(4):
            for j in range(4):
                tmp[i][j] = 0.0
                for k in range(4):
                    tmp[i][j] += big[i][k] * rho[k][j]
        for i in range(4):
            for j in range(4):
                for k in range(4):
                    diff[i][j] -= tmp[i][k] * big[k][j]

    _jacobi_eigenvalues_4(diff, w)
    total = 0.0
    for k in range(4):
        total += fabs(w[k])
    return total


def measurement_residual_norms(rho, directions):
    """tr|rho - M(rho, n)| for each Bloch direction n (compiled loop)."""
    cdef double complex[:, ::1] r = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef double[:, ::1] dirs = np.atleast_2d(np.ascontiguousarray(directions, dtype=np.float64))
    if r.shape[0] != 4 or r.shape[1] != 4:
        raise ValueError("rho must be a 4x4 matrix")
    if hasattr(directions, "shape") and np.asarray(directions).ndim > 2:
        raise ValueError("directions must be an (N, 3) array")
    if dirs.shape[1] != 3:
        raise ValueError("directions must be an (N, 3) array")
    cdef Py_ssize_t n = dirs.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double complex rho_c[4][4]
    cdef int i, j
    cdef Py_ssize_t m
    for i in range(4):
        for j in range(4):
            rho_c[i][j] = r[i, j]
    with nogil:
        for m in range(n):
            out[m] = _residual_norm(rho_c, dirs[m, 0], dirs[m, 1], dirs[m, 2])
    return out_arr


def hermitian_eigenvalues_4(matrix):
    """Ascending eigenvalues of a 4x4 Hermitian matrix (backend parity hook)."""
    cdef double complex[:, ::1] m = np.ascontiguousarray(matrix, dtype=np.complex128)
    if m.shape[0] != 4 or m.shape[1] != 4:
        raise ValueError("matrix must be 4x4")
    cdef double complex a[4][4]
    cdef double w[4]
    cdef int i, j
    for i in range(4):
        for j in range(4):
            a[i][j] = m[i, j]
    with nogil:
        _jacobi_eigenvalues_4(a, w)
    out = np.array([w[0], w[1], w[2], w[3]])
    out.sort()
    return out
