"""JIT-compiled propagation of psi'' + (k^2 - U(z)) psi = 0.

Adaptive Dormand-Prince 8(5,3) stepper on the complex second-order system,
specialized to the attractive potential families so the right-hand side
stays allocation-free inside the hot loop.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from . import _dp853

KIND_HOM3 = 0
KIND_HOM4 = 1
KIND_HOM_N = 2
KIND_INTERP = 3
KIND_TABLE = 4

STATUS_OK = 0
STATUS_MAX_STEPS = 1

_A = np.ascontiguousarray(_dp853.A)
_B = np.ascontiguousarray(_dp853.B)
_C = np.ascontiguousarray(_dp853.C)
_E3 = np.ascontiguousarray(_dp853.E3)
_E5 = np.ascontiguousarray(_dp853.E5)
_NS = _dp853.N_STAGES

_EMPTY_KNOTS = np.array([0.0, 1.0])
_EMPTY_COEFS = np.zeros((4, 1))


@njit(cache=True)
def _u_eval(kind, pa, pb, knots, coefs, z):
    if kind == KIND_HOM3:
        return -pa / (z * z * z)
    if kind == KIND_HOM4:
        z2 = z * z
        return -pa / (z2 * z2)
    if kind == KIND_HOM_N:
        return -pb * z ** (-pa)
    if kind == KIND_INTERP:
        z2 = z * z
        return -pa / (z2 * z * (z + pb))
    # tabulated: cubic pieces of ln|U| against ln z, power-law pieces at
    # both ends so polynomial extrapolation continues the tails exactly
    w = np.log(z)
    n = knots.shape[0]
    if w <= knots[0]:
        i = 0
    elif w >= knots[n - 1]:
        i = n - 2
    else:
        lo = 0
        hi = n - 1
        while hi - lo > 1:
            mid = (lo + hi) >> 1
            if w < knots[mid]:
                hi = mid
            else:
                lo = mid
        i = lo
    t = w - knots[i]
    s = ((coefs[0, i] * t + coefs[1, i]) * t + coefs[2, i]) * t + coefs[3, i]
    return -np.exp(s)


@njit(cache=True)
def propagate(kind, pa, pb, knots, coefs, ksq, z0, z1, psi0, dpsi0, rtol, atol, max_steps):
    """Integrate from z0 to z1 (z1 > z0) given (psi, psi') at z0.

    Returns (psi, dpsi, status, n_accepted, n_rejected, floor_hit).
    """
    kk = np.empty((_NS + 1, 2), dtype=np.complex128)
    y0 = psi0
    y1 = dpsi0
    z = z0

    u = _u_eval(kind, pa, pb, knots, coefs, z)
    f0 = y1
    f1 = -(ksq - u) * y0

    # start at a small fraction of the local wavelength
    h = 0.3 / np.sqrt(abs(ksq - u))
    if h > z1 - z0:
        h = z1 - z0

    n_acc = 0
    n_rej = 0
    floor_hit = 0
    status = STATUS_OK

    while z < z1:
        if n_acc + n_rej >= max_steps:
            status = STATUS_MAX_STEPS
            break
        h_floor = 32.0 * 2.220446049250313e-16 * abs(z)
        forced = False
        if h <= h_floor:
            h = h_floor
            forced = True
            floor_hit = 1
        if z + h >= z1:
            h = z1 - z
            forced = forced or h <= h_floor

        kk[0, 0] = f0
        kk[0, 1] = f1
        for s in range(1, _NS):
            acc0 = 0.0 + 0.0j
            acc1 = 0.0 + 0.0j
            for j in range(s):
                acc0 += _A[s, j] * kk[j, 0]
                acc1 += _A[s, j] * kk[j, 1]
            zp = z + _C[s] * h
            p0 = y0 + h * acc0
            p1 = y1 + h * acc1
            u = _u_eval(kind, pa, pb, knots, coefs, zp)
            kk[s, 0] = p1
            kk[s, 1] = -(ksq - u) * p0

        acc0 = 0.0 + 0.0j
        acc1 = 0.0 + 0.0j
        for j in range(_NS):
            acc0 += _B[j] * kk[j, 0]
            acc1 += _B[j] * kk[j, 1]
        yn0 = y0 + h * acc0
        yn1 = y1 + h * acc1
        zn = z + h
        u = _u_eval(kind, pa, pb, knots, coefs, zn)
        fn0 = yn1
        fn1 = -(ksq - u) * yn0
        kk[_NS, 0] = fn0
        kk[_NS, 1] = fn1

        e50 = 0.0 + 0.0j
        e51 = 0.0 + 0.0j
        e30 = 0.0 + 0.0j
        e31 = 0.0 + 0.0j
        for j in range(_NS + 1):
            e50 += _E5[j] * kk[j, 0]
            e51 += _E5[j] * kk[j, 1]
            e30 += _E3[j] * kk[j, 0]
            e31 += _E3[j] * kk[j, 1]
        sc0 = atol + rtol * max(abs(y0), abs(yn0))
        sc1 = atol + rtol * max(abs(y1), abs(yn1))
        r50 = abs(e50) / sc0
        r51 = abs(e51) / sc1
        r30 = abs(e30) / sc0
        r31 = abs(e31) / sc1
        err5 = r50 * r50 + r51 * r51
        err3 = r30 * r30 + r31 * r31
        if err5 == 0.0 and err3 == 0.0:
            err_norm = 0.0
        else:
            err_norm = h * err5 / np.sqrt((err5 + 0.01 * err3) * 2.0)

        if err_norm < 1.0 or forced:
            z = zn
            y0 = yn0
            y1 = yn1
            f0 = fn0
            f1 = fn1
            n_acc += 1
            if err_norm == 0.0:
                factor = 10.0
            else:
                factor = 0.9 * err_norm ** (-0.125)
                if factor > 10.0:
                    factor = 10.0
                elif factor < 0.2:
                    factor = 0.2
            h = h * factor
        else:
            n_rej += 1
            factor = 0.9 * err_norm ** (-0.125)
            if factor < 0.2:
                factor = 0.2
            h = h * factor

    return y0, y1, status, n_acc, n_rej, floor_hit


def kernel_params(model):
    """Map a potential model onto the (kind, pa, pb, knots, coefs) tuple."""
    # local import keeps this module importable before potentials
    from .potentials import (
        HomogeneousPotential,
        InterpolatedPotential,
        TabulatedPotential,
    )

    if isinstance(model, HomogeneousPotential):
        if model.n == 3:
            return (KIND_HOM3, model.strength, 0.0, _EMPTY_KNOTS, _EMPTY_COEFS)
        if model.n == 4:
            return (KIND_HOM4, model.strength, 0.0, _EMPTY_KNOTS, _EMPTY_COEFS)
        return (KIND_HOM_N, float(model.n), model.strength, _EMPTY_KNOTS, _EMPTY_COEFS)
    if isinstance(model, InterpolatedPotential):
        return (KIND_INTERP, model.ell4**2, model.crossover, _EMPTY_KNOTS, _EMPTY_COEFS)
    if isinstance(model, TabulatedPotential):
        spline = model._spline
        knots = np.ascontiguousarray(spline.x, dtype=np.float64)
        coefs = np.ascontiguousarray(spline.c, dtype=np.float64)
        return (KIND_TABLE, 0.0, 0.0, knots, coefs)
    raise TypeError(f"unsupported potential model: {type(model)!r}")
