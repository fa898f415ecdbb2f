"""Pure-Python/numpy implementations of the hot kernels.

Mirrors ``_kernels.pyx`` function for function; :mod:`pointkernel._backend`
picks one at import time.
"""
import cmath
import math

import numpy as np

_SQRT_4PI = math.sqrt(4 * math.pi)
_PHASE = cmath.exp(-0.25j * math.pi)  # (i)**(-1/2) on the principal branch


def heat_kernel(z, tau):
    return math.exp(-z * z / (4 * tau)) / (_SQRT_4PI * math.sqrt(tau))


def heat_kernel_dz(z, tau):
    return -z / (2 * tau) * heat_kernel(z, tau)


def free_kernel(z, tau):
    # (4 pi i tau)^(-1/2) exp(-z^2 / (4 i tau)) = (4 pi tau)^(-1/2) exp(i (z^2/(4 tau) - pi/4))
    return cmath.exp(1j * (z * z / (4 * tau) - 0.25 * math.pi)) / (_SQRT_4PI * math.sqrt(tau))


def free_kernel_dz(z, tau):
    return -z / (2j * tau) * free_kernel(z, tau)


def _s_entries(c1, c2re, c2im, c3, k):
    D = c1 * c3 + c2re * c2re + c2im * c2im
    den = (1 + D / 4) + 0.5j * (c1 / k - k * c3)
    t_plus = ((1 - D / 4) + 1j * c2im) / den
    t_minus = ((1 - D / 4) - 1j * c2im) / den
    r_plus = (-c2re - 0.5j * (c1 / k + k * c3)) / den
    r_minus = (c2re - 0.5j * (c1 / k + k * c3)) / den
    return t_plus, t_minus, r_plus, r_minus


def scattering_sweep(c1, c2re, c2im, c3, ks):
    ks = np.asarray(ks, dtype=float)
    return np.array(_s_entries(c1, c2re, c2im, c3, ks), dtype=complex).reshape(4, ks.size)


def unitarity_defects(c1, c2re, c2im, c3, ks):
    c1, c2re, c2im, c3, ks = (np.asarray(a, dtype=float) for a in (c1, c2re, c2im, c3, ks))
    tp, tm, rp, rm = _s_entries(c1, c2re, c2im, c3, ks)
    # S = [[tp, rm], [rp, tm]]
    e11 = np.abs(tp * tp.conj() + rm * rm.conj() - 1)
    e22 = np.abs(rp * rp.conj() + tm * tm.conj() - 1)
    e12 = np.abs(tp * rp.conj() + rm * tm.conj())
    return np.maximum(np.maximum(e11, e22), e12)


def delta_prime_grid(c, ys, xs, tau, imaginary):
    ys = np.asarray(ys, dtype=float)[:, None]
    xs = np.asarray(xs, dtype=float)[None, :]
    mirror = 4 * c / (4 + c * c)
    cross = 1 - 2 * c * c / (4 + c * c)
    if imaginary:
        direct_k = np.exp(-(ys - xs) ** 2 / (4 * tau)) / (_SQRT_4PI * math.sqrt(tau))
        mirror_k = np.exp(-(ys + xs) ** 2 / (4 * tau)) / (_SQRT_4PI * math.sqrt(tau))
    else:
        norm = _PHASE / (_SQRT_4PI * math.sqrt(tau))
        direct_k = norm * np.exp(1j * (ys - xs) ** 2 / (4 * tau))
        mirror_k = norm * np.exp(1j * (ys + xs) ** 2 / (4 * tau))
    same = (ys > 0) == (xs > 0)
    sign = np.where(xs > 0, 1.0, -1.0)
    out = np.where(same, direct_k + sign * mirror * mirror_k, cross * direct_k)
    return out.astype(complex)
