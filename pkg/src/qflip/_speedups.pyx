# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: complex Jacobi eigensolver and family grid evaluation.

Mirrors the API of ``qflip._kernels_py``; the package selects whichever is
importable at run time.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport M_PI, acos, cos, fabs, sin, sqrt

cnp.import_array()

cdef double TWO_THIRDS_PI = 2.0 * M_PI / 3.0
cdef double ONE_THIRD = 1.0 / 3.0


cdef inline double _cabs(double complex z) noexcept nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef int _jacobi_eigvalsh(double complex* a, double* w, int n) noexcept nogil:
    """Cyclic complex Jacobi on a row-major n x n Hermitian buffer.

    Overwrites ``a``; leaves the eigenvalues (unsorted) in ``w``.  Returns the
    number of sweeps used, or -1 if the off-diagonal mass failed to vanish.
    """
    cdef int p, q, m, sweep
    cdef double app, aqq, r, tau, t, cc, ss, off, scale
    cdef double complex apq, phase, amp, amq

    scale = 0.0
    for p in range(n):
        for q in range(n):
            if _cabs(a[p * n + q]) > scale:
                scale = _cabs(a[p * n + q])
    if scale == 0.0:
        for p in range(n):
            w[p] = 0.0
        return 0

    for sweep in range(64):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                if _cabs(a[p * n + q]) > off:
                    off = _cabs(a[p * n + q])
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p * n + q]
                r = _cabs(apq)
                if r <= 1e-300:
                    a[p * n + q] = 0.0
                    a[q * n + p] = 0.0
                    continue
                app = a[p * n + p].real
                aqq = a[q * n + q].real
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                cc = 1.0 / sqrt(1.0 + t * t)
                ss = t * cc
                phase = apq / r
                a[p * n + p] = app - t * r
                a[q * n + q] = aqq + t * r
                a[p * n + q] = 0.0
                a[q * n + p] = 0.0
                for m in range(n):
                    if m == p or m == q:
                        continue
                    amp = a[m * n + p]
                    amq = a[m * n + q]
                    a[m * n + p] = cc * amp - ss * phase.conjugate() * amq
                    a[m * n + q] = ss * phase * amp + cc * amq
                    a[p * n + m] = a[m * n + p].conjugate()
                    a[q * n + m] = a[m * n + q].conjugate()
    else:
        return -1

    for p in range(n):
        w[p] = a[p * n + p].real
    return sweep


cdef void _sort_desc(double* w, int n) noexcept nogil:
    cdef int i, j
    cdef double key
    for i in range(1, n):
        key = w[i]
        j = i - 1
        while j >= 0 and w[j] < key:
            w[j + 1] = w[j]
            j -= 1
        w[j + 1] = key


def eigvalsh_small(h):
    """Eigenvalues of a Hermitian matrix (n <= 12), descending."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] buf = np.array(
        h, dtype=np.complex128, order="C"
    )
    cdef int n = buf.shape[0]
    if buf.shape[1] != n:
        raise ValueError("matrix must be square")
    if n > 12:
        raise ValueError(f"dimension {n} exceeds the cap of 12")
    cdef double w[12]
    if _jacobi_eigvalsh(<double complex*> buf.data, w, n) < 0:
        raise ArithmeticError("Jacobi eigensolver failed to converge")
    _sort_desc(w, n)
    out = np.empty(n, dtype=np.float64)
    cdef int i
    for i in range(n):
        out[i] = w[i]
    return out


cdef inline void _cubic3(double a_coeff, double b_val, double* roots, double* theta) noexcept nogil:
    """Descending roots of (1-3x)^3 - 3(1-3x)A + B = 0 plus the third-angle."""
    cdef double s, arg, th
    if a_coeff <= 0.0:
        roots[0] = ONE_THIRD
        roots[1] = ONE_THIRD
        roots[2] = ONE_THIRD
        theta[0] = acos(0.0) / 3.0
        return
    s = sqrt(a_coeff)
    arg = -b_val / (2.0 * a_coeff * s)
    if arg > 1.0:
        arg = 1.0
    elif arg < -1.0:
        arg = -1.0
    th = acos(arg) / 3.0
    theta[0] = th
    # plus-angle root is the largest, minus-angle the middle, base the smallest
    # for the principal third-angle; sort defensively anyway.
    roots[0] = (1.0 - 2.0 * s * cos(TWO_THIRDS_PI + th)) / 3.0
    roots[1] = (1.0 - 2.0 * s * cos(TWO_THIRDS_PI - th)) / 3.0
    roots[2] = (1.0 - 2.0 * s * cos(th)) / 3.0
    _sort_desc(roots, 3)


def cubic_roots_batch(a_coeff, b_val):
    """Vectorized trig roots; returns (roots (n,3) descending, theta (n,))."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] av = np.ascontiguousarray(
        np.atleast_1d(np.asarray(a_coeff, dtype=np.float64))
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] bv = np.ascontiguousarray(
        np.atleast_1d(np.asarray(b_val, dtype=np.float64))
    )
    cdef Py_ssize_t n = av.shape[0]
    if bv.shape[0] != n:
        raise ValueError("A and B arrays must have equal length")
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] roots = np.empty((n, 3), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] theta = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i
    for i in range(n):
        _cubic3(av[i], bv[i], &roots[i, 0], &theta[i])
    return roots, theta


cdef void _gram3(double complex* blocks, double complex* gram) noexcept nogil:
    """gram[j,k] = <B_k|B_j> / 3 for three 4-dim Bob vectors."""
    cdef int j, k, m
    cdef double complex acc
    for j in range(3):
        for k in range(3):
            acc = 0.0
            for m in range(4):
                acc += blocks[k * 4 + m].conjugate() * blocks[j * 4 + m]
            gram[j * 3 + k] = acc / 3.0


def grid_eval(a, c, theta):
    """Per-point family evaluation; see ``qflip._kernels_py.grid_eval``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] av = np.ascontiguousarray(
        np.asarray(a, dtype=np.float64)
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] cv = np.ascontiguousarray(
        np.asarray(c, dtype=np.float64)
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] tv = np.ascontiguousarray(
        np.asarray(theta, dtype=np.float64)
    )
    cdef Py_ssize_t n = av.shape[0]
    if cv.shape[0] != n or tv.shape[0] != n:
        raise ValueError("a, c, theta arrays must have equal length")

    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] out_A = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] out_B = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] out_Bp = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] out_deg = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] out_alpha = np.empty((n, 3), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] out_beta = np.empty((n, 3), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] out_ti = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] out_tf = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] out_na = np.empty((n, 3), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] out_nb = np.empty((n, 3), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] out_err = np.empty(n, dtype=np.float64)

    cdef double ai, ci, th, bi, di, wre, wim, w2, a2c2, err, diff
    cdef double complex psi0, psi1, phi0, phi1, pb0, pb1, qb0, qb1
    cdef double complex blocks[12]
    cdef double complex gram[9]
    cdef double wloc[3]
    cdef Py_ssize_t i
    cdef int j

    for i in range(n):
        ai = av[i]
        ci = cv[i]
        th = tv[i]
        bi = sqrt(max(0.0, 1.0 - ai * ai))
        di = sqrt(max(0.0, 1.0 - ci * ci))

        wre = ai * ci + bi * di * cos(th)
        wim = bi * di * sin(th)
        w2 = wre * wre + wim * wim
        a2c2 = ai * ai * ci * ci
        out_A[i] = (2.0 * a2c2 + w2 * w2) / 3.0
        out_B[i] = 2.0 * a2c2 * w2
        out_Bp[i] = 2.0 * a2c2 * (wre * wre - wim * wim)
        out_deg[i] = ai * bi * ci * di * sin(th)

        _cubic3(out_A[i], out_B[i], &out_alpha[i, 0], &out_ti[i])
        _cubic3(out_A[i], out_Bp[i], &out_beta[i, 0], &out_tf[i])

        psi0 = ai
        psi1 = bi
        phi0 = ci
        phi1 = di * cos(th) + 1j * di * sin(th)
        # complement convention: (amp0, amp1) -> (-conj(amp1), conj(amp0))
        pb0 = -psi1.conjugate()
        pb1 = psi0.conjugate()
        qb0 = -phi1.conjugate()
        qb1 = phi0.conjugate()

        # initial family: |0>|00> + |1>|psi phi> + |2>|phi psi>
        blocks[0] = 1.0
        blocks[1] = 0.0
        blocks[2] = 0.0
        blocks[3] = 0.0
        blocks[4] = psi0 * phi0
        blocks[5] = psi0 * phi1
        blocks[6] = psi1 * phi0
        blocks[7] = psi1 * phi1
        blocks[8] = phi0 * psi0
        blocks[9] = phi0 * psi1
        blocks[10] = phi1 * psi0
        blocks[11] = phi1 * psi1
        _gram3(blocks, gram)
        if _jacobi_eigvalsh(gram, wloc, 3) < 0:
            raise ArithmeticError("Jacobi eigensolver failed to converge")
        _sort_desc(wloc, 3)
        for j in range(3):
            out_na[i, j] = wloc[j]

        # flipped family: |0>|01> + |1>|psi phibar> + |2>|phi psibar>
        blocks[0] = 0.0
        blocks[1] = 1.0
        blocks[2] = 0.0
        blocks[3] = 0.0
        blocks[4] = psi0 * qb0
        blocks[5] = psi0 * qb1
        blocks[6] = psi1 * qb0
        blocks[7] = psi1 * qb1
        blocks[8] = phi0 * pb0
        blocks[9] = phi0 * pb1
        blocks[10] = phi1 * pb0
        blocks[11] = phi1 * pb1
        _gram3(blocks, gram)
        if _jacobi_eigvalsh(gram, wloc, 3) < 0:
            raise ArithmeticError("Jacobi eigensolver failed to converge")
        _sort_desc(wloc, 3)
        for j in range(3):
            out_nb[i, j] = wloc[j]

        err = 0.0
        for j in range(3):
            diff = fabs(out_alpha[i, j] - out_na[i, j])
            if diff > err:
                err = diff
            diff = fabs(out_beta[i, j] - out_nb[i, j])
            if diff > err:
                err = diff
        out_err[i] = err

    return {
        "A": out_A,
        "B": out_B,
        "Bprime": out_Bp,
        "degeneracy": out_deg,
        "alpha": out_alpha,
        "beta": out_beta,
        "theta_i": out_ti,
        "theta_f": out_tf,
        "num_alpha": out_na,
        "num_beta": out_nb,
        "max_err": out_err,
    }
