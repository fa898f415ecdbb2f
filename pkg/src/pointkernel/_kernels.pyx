# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Same API as ``_kernels_py``."""
import numpy as np

from libc.math cimport exp, sqrt, cos, sin, M_PI

cdef double _SQRT_4PI = sqrt(4 * M_PI)


cpdef double heat_kernel(double z, double tau):
    return exp(-z * z / (4 * tau)) / (_SQRT_4PI * sqrt(tau))


cpdef double heat_kernel_dz(double z, double tau):
    return -z / (2 * tau) * heat_kernel(z, tau)


cdef inline double complex _free(double z, double tau) noexcept nogil:
    cdef double ph = z * z / (4 * tau) - 0.25 * M_PI
    cdef double amp = 1.0 / (_SQRT_4PI * sqrt(tau))
    return amp * (cos(ph) + 1j * sin(ph))


cpdef double complex free_kernel(double z, double tau):
    return _free(z, tau)


cpdef double complex free_kernel_dz(double z, double tau):
    return -z / (2j * tau) * _free(z, tau)


cdef inline void _s_entries(double c1, double c2re, double c2im, double c3, double k,
                            double complex *tp, double complex *tm,
                            double complex *rp, double complex *rm) noexcept nogil:
    cdef double D = c1 * c3 + c2re * c2re + c2im * c2im
    cdef double complex den = (1 + D / 4) + 0.5j * (c1 / k - k * c3)
    cdef double complex rsum = 0.5j * (c1 / k + k * c3)
    tp[0] = ((1 - D / 4) + 1j * c2im) / den
    tm[0] = ((1 - D / 4) - 1j * c2im) / den
    rp[0] = (-c2re - rsum) / den
    rm[0] = (c2re - rsum) / den


def scattering_sweep(double c1, double c2re, double c2im, double c3, ks):
    cdef double[::1] kv = np.ascontiguousarray(ks, dtype=np.float64).ravel()
    cdef Py_ssize_t n = kv.shape[0], i
    out = np.empty((4, n), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double complex tp, tm, rp, rm
    with nogil:
        for i in range(n):
            _s_entries(c1, c2re, c2im, c3, kv[i], &tp, &tm, &rp, &rm)
            o[0, i] = tp
            o[1, i] = tm
            o[2, i] = rp
            o[3, i] = rm
    return out


cdef inline double _cabs(double complex z) noexcept nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


def unitarity_defects(c1, c2re, c2im, c3, ks):
    cdef double[::1] a = np.ascontiguousarray(c1, dtype=np.float64).ravel()
    cdef double[::1] br = np.ascontiguousarray(c2re, dtype=np.float64).ravel()
    cdef double[::1] bi = np.ascontiguousarray(c2im, dtype=np.float64).ravel()
    cdef double[::1] c = np.ascontiguousarray(c3, dtype=np.float64).ravel()
    cdef double[::1] kv = np.ascontiguousarray(ks, dtype=np.float64).ravel()
    cdef Py_ssize_t n = kv.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double complex tp, tm, rp, rm
    cdef double e11, e22, e12, m
    with nogil:
        for i in range(n):
            _s_entries(a[i], br[i], bi[i], c[i], kv[i], &tp, &tm, &rp, &rm)
            e11 = _cabs(tp * tp.conjugate() + rm * rm.conjugate() - 1)
            e22 = _cabs(rp * rp.conjugate() + tm * tm.conjugate() - 1)
            e12 = _cabs(tp * rp.conjugate() + rm * tm.conjugate())
            m = e11
            if e22 > m:
                m = e22
            if e12 > m:
                m = e12
            o[i] = m
    return out


cdef inline double complex _phase(double ph) noexcept nogil:
    return cos(ph) + 1j * sin(ph)


def delta_prime_grid(double c, ys, xs, double tau, bint imaginary):
    cdef double[::1] yv = np.ascontiguousarray(ys, dtype=np.float64).ravel()
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef Py_ssize_t ny = yv.shape[0], nx = xv.shape[0], i, j
    out = np.empty((ny, nx), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double mirror = 4 * c / (4 + c * c)
    cdef double cross = 1 - 2 * c * c / (4 + c * c)
    cdef double inv4tau = 1.0 / (4 * tau)
    cdef double amp = 1.0 / (_SQRT_4PI * sqrt(tau))
    cdef double complex amp_rt = amp * _phase(-0.25 * M_PI)
    cdef double x, y, d, m, w
    with nogil:
        for i in range(ny):
            y = yv[i]
            for j in range(nx):
                x = xv[j]
                d = (y - x) * (y - x) * inv4tau
                if (y > 0) == (x > 0):
                    # same side: direct plus signed mirror image
                    m = (y + x) * (y + x) * inv4tau
                    w = mirror if x > 0 else -mirror
                    if imaginary:
                        o[i, j] = amp * (exp(-d) + w * exp(-m))
                    else:
                        o[i, j] = amp_rt * (_phase(d) + w * _phase(m))
                elif imaginary:
                    o[i, j] = amp * cross * exp(-d)
                else:
                    o[i, j] = amp_rt * cross * _phase(d)
    return out
