"""Shared semiclassical helpers: badlands function, WKB tail integrals.

Everything works on the reduced problem psi'' + F psi = 0 with
F(z) = k^2 - U(z) and attractive U, so F > 0 on the whole half line.
"""

from __future__ import annotations

import math

import numpy as np

# Translation constant fixing the symmetric convention of the transformed
# 1/z^4 landscape: Gamma(3/4)^2 / sqrt(pi).
ZSTAR = math.gamma(0.75) ** 2 / math.sqrt(math.pi)

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)


def zstar() -> float:
    """Translation constant z* = Gamma(3/4)^2 / sqrt(pi)."""
    return ZSTAR


def badlands_q(model, k: float, z):
    """Badlands function Q = F''/(4 F^2) - (5/16) F'^2 / F^3.

    Q measures where the WKB approximation fails; the transformed potential
    is E * Q with E = (reference wavevector)^2.  Uses the model's analytic
    first and second derivatives.
    """
    if k <= 0.0:
        raise ValueError("wavevector must be positive")
    z = np.asarray(z, dtype=float)
    u = model.reduced_potential(z)
    up = model.d1(z)
    upp = model.d2(z)
    f = k * k - u
    return -upp / (4.0 * f * f) - (5.0 / 16.0) * up * up / f**3


def tail_deficit(model, k: float, z: float) -> float:
    """Integral of (sqrt(F) - k) from z to infinity.

    Evaluated as -U / (sqrt(F) + k) to avoid cancellation, on log-spaced
    Gauss-Legendre panels until the running total stops changing.
    """
    if z <= 0.0:
        raise ValueError("z must be positive")
    total = 0.0
    a = z
    for _ in range(80):
        b = 10.0 * a
        half = 0.5 * (b - a)
        x = 0.5 * (a + b) + half * _GL_NODES
        u = model.reduced_potential(x)
        integrand = -u / (np.sqrt(k * k - u) + k)
        contrib = half * float(np.dot(_GL_WEIGHTS, integrand))
        total += contrib
        if contrib <= 1e-16 * abs(total) + 1e-300:
            break
        a = b
    return total


def segment_phase(model, k: float, z_a: float, z_b: float, n_panels: int = 8) -> float:
    """Integral of sqrt(F) over [z_a, z_b], by Gauss-Legendre in log z."""
    if not 0.0 < z_a <= z_b:
        raise ValueError("need 0 < z_a <= z_b")
    if z_a == z_b:
        return 0.0
    edges = np.geomspace(z_a, z_b, n_panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        x = 0.5 * (a + b) + half * _GL_NODES
        f = k * k - model.reduced_potential(x)
        total += half * float(np.dot(_GL_WEIGHTS, np.sqrt(f)))
    return total


def map_normalization(model, k: float) -> tuple[float, float]:
    """Reference wavevector and translation for the coordinate map.

    Returns (kbold, zbold_phi) such that zbold(z) -> z * kbold / ell_ref
    + zbold_phi at large z.  Models with a 1/z^4 tail use the retarded
    scale, kbold = sqrt(k * ell4), and the symmetric convention
    zbold_phi = -z* that centers the transformed 1/z^4 landscape.  A pure
    1/z^3 model has no such symmetry; it uses its own natural scale
    z3 = (ell3/k^2)^(1/3) with zero translation, and likewise for other
    single power laws.
    """
    ell3, ell4 = model.length_scales()
    if ell4 is not None:
        return math.sqrt(k * ell4), -ZSTAR
    if ell3 is not None:
        return k * (ell3 / k**2) ** (1.0 / 3.0), 0.0
    n = model.n
    return k * (model.strength / k**2) ** (1.0 / n), 0.0


def wkb_phase(model, k: float, z) -> np.ndarray | float:
    """WKB phase from the symmetry-fixed reference point.

    phi(z) = k z - tail_deficit(z) + kbold * zbold_phi, which satisfies
    phi(z) - k z -> kbold * zbold_phi as z -> infinity.
    """
    kbold, zphi = map_normalization(model, k)
    scalar = np.isscalar(z)
    zs = np.atleast_1d(np.asarray(z, dtype=float))
    out = np.array([k * zz - tail_deficit(model, k, zz) + kbold * zphi for zz in zs])
    return float(out[0]) if scalar else out
