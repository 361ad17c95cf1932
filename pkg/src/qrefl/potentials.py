"""
Reduced Casimir-Polder potential models
=======================================

All models evaluate the reduced potential U(z) = 2mV(z)/hbar^2 in units
where hbar^2/2m = 1, lengths in Bohr radii.  In these units the local
equation reads psi'' + (k^2 - U) psi = 0, so U carries dimension 1/length^2.

Three attractive model families are provided:

- ``HomogeneousPotential``: U(z) = -c_n / z^n with c_n = ell_n^(n-2),
  the single-power-law idealization (n = 4 is the retarded limit,
  n = 3 the Van der Waals limit).
- ``InterpolatedPotential``: U(z) = -ell4^2 / (z^3 (z + ell4^2/ell3)),
  the simplest smooth two-scale model with U ~ -ell3/z^3 near the wall
  and U ~ -ell4^2/z^4 far from it.
- ``TabulatedPotential``: monotone-cubic interpolation of a sampled
  potential in (log z, log|U|) space, continued outside the samples by
  the power-law tails.

Models are immutable after construction and evaluation is pure, so they
are safe to share across threads/processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.interpolate import PchipInterpolator

# Built-in length scales (ell3, ell4) in Bohr radii for antihydrogen above
# a helium film and a silica surface.
HE_SCALES = (16.54, 75.51)
SIO2_SCALES = (321.3, 194.7)


class PotentialFormatError(ValueError):
    """Raised when a potential table file violates the expected format."""


def _check_positive_z(z):
    arr = np.asarray(z, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("potential is only defined for z > 0")
    return arr


@dataclass(frozen=True)
class HomogeneousPotential:
    """Single power law U(z) = -ell_n^(n-2) / z^n for integer n >= 3."""

    n: int
    ell_n: float

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"homogeneous exponent must be >= 3, got {self.n}")
        if self.ell_n <= 0.0:
            raise ValueError("length scale must be positive")

    @property
    def strength(self) -> float:
        """Coefficient c_n = ell_n^(n-2) of the -c_n/z^n law."""
        return self.ell_n ** (self.n - 2)

    def reduced_potential(self, z):
        z = _check_positive_z(z)
        return -self.strength / z**self.n

    def d1(self, z):
        z = _check_positive_z(z)
        return self.n * self.strength / z ** (self.n + 1)

    def d2(self, z):
        z = _check_positive_z(z)
        return -self.n * (self.n + 1) * self.strength / z ** (self.n + 2)

    def length_scales(self):
        ell3 = self.ell_n if self.n == 3 else None
        ell4 = self.ell_n if self.n == 4 else None
        return (ell3, ell4)

    def describe(self) -> str:
        return f"homogeneous(n={self.n}, ell{self.n}={self.ell_n:g})"


@dataclass(frozen=True)
class InterpolatedPotential:
    """Two-scale model U(z) = -ell4^2 / (z^3 (z + b)) with b = ell4^2/ell3.

    Reproduces both asymptotic power laws: U z^3 -> -ell3 as z -> 0 and
    U z^4 -> -ell4^2 as z -> infinity.
    """

    ell3: float
    ell4: float

    def __post_init__(self):
        if self.ell3 <= 0.0 or self.ell4 <= 0.0:
            raise ValueError("length scales must be positive")

    @property
    def crossover(self) -> float:
        """Length b = ell4^2/ell3 separating the two power-law regimes."""
        return self.ell4**2 / self.ell3

    def reduced_potential(self, z):
        z = _check_positive_z(z)
        return -self.ell4**2 / (z**3 * (z + self.crossover))

    def d1(self, z):
        z = _check_positive_z(z)
        b = self.crossover
        return self.ell4**2 * (3.0 / (z**4 * (z + b)) + 1.0 / (z**3 * (z + b) ** 2))

    def d2(self, z):
        z = _check_positive_z(z)
        b = self.crossover
        return -self.ell4**2 * (
            12.0 / (z**5 * (z + b))
            + 6.0 / (z**4 * (z + b) ** 2)
            + 2.0 / (z**3 * (z + b) ** 3)
        )

    def length_scales(self):
        return (self.ell3, self.ell4)

    def describe(self) -> str:
        return f"interpolated(ell3={self.ell3:g}, ell4={self.ell4:g})"


@dataclass(frozen=True)
class TabulatedPotential:
    """Sampled potential with monotone-cubic log-log interpolation.

    The interpolant runs through every sample exactly.  Outside the sampled
    range the potential continues as the declared power laws (-ell3-like
    1/z^3 inward, 1/z^4 outward), with coefficients matched to the endpoint
    values so the curve stays continuous; matching is done by extending the
    log-log data with exact-slope nodes, which keeps the interpolant C^1.
    """

    z_samples: np.ndarray
    u_samples: np.ndarray
    ell3: float | None = None
    ell4: float | None = None
    _spline: PchipInterpolator = field(init=False, repr=False, compare=False)
    _d1: PchipInterpolator = field(init=False, repr=False, compare=False)
    _d2: PchipInterpolator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        z = np.asarray(self.z_samples, dtype=float)
        u = np.asarray(self.u_samples, dtype=float)
        if z.ndim != 1 or z.size == 0:
            raise PotentialFormatError("tabulated model needs at least one sample")
        if z.size < 4:
            raise PotentialFormatError("tabulated model needs at least 4 samples")
        if np.any(z <= 0.0):
            raise PotentialFormatError("sample positions must be positive")
        if np.any(np.diff(z) <= 0.0):
            raise PotentialFormatError("sample positions must be strictly increasing")
        if np.any(u >= 0.0):
            raise PotentialFormatError("potential samples must be negative")
        object.__setattr__(self, "z_samples", z)
        object.__setattr__(self, "u_samples", u)

        # Work in w = ln z, s = ln|U|.  Power-law segments are straight
        # lines there, which PCHIP reproduces exactly; three decades of
        # synthetic tail nodes on each side pin the declared exponents.
        w = np.log(z)
        s = np.log(-u)
        pad = np.arange(1, 4) * math.log(10.0)
        w_lo = w[0] - pad[::-1]
        s_lo = s[0] + 3.0 * pad[::-1]          # |U| ~ z^-3 inward
        w_hi = w[-1] + pad
        s_hi = s[-1] - 4.0 * pad               # |U| ~ z^-4 outward
        w_all = np.concatenate([w_lo, w, w_hi])
        s_all = np.concatenate([s_lo, s, s_hi])
        spline = PchipInterpolator(w_all, s_all, extrapolate=True)
        object.__setattr__(self, "_spline", spline)
        object.__setattr__(self, "_d1", spline.derivative(1))
        object.__setattr__(self, "_d2", spline.derivative(2))

    def reduced_potential(self, z):
        z = _check_positive_z(z)
        return -np.exp(self._spline(np.log(z)))

    def d1(self, z):
        z = _check_positive_z(z)
        w = np.log(z)
        u = -np.exp(self._spline(w))
        return u * self._d1(w) / z

    def d2(self, z):
        z = _check_positive_z(z)
        w = np.log(z)
        u = -np.exp(self._spline(w))
        sp = self._d1(w)
        spp = self._d2(w)
        return u * (sp * sp + spp - sp) / z**2

    def length_scales(self):
        ell3 = self.ell3
        ell4 = self.ell4
        if ell3 is None:
            # endpoint-matched 1/z^3 coefficient, c3 = ell3 in reduced units
            ell3 = float(-self.u_samples[0] * self.z_samples[0] ** 3)
        if ell4 is None:
            c4 = float(-self.u_samples[-1] * self.z_samples[-1] ** 4)
            ell4 = math.sqrt(c4)
        return (ell3, ell4)

    def describe(self) -> str:
        return (
            f"tabulated({self.z_samples.size} samples, "
            f"z in [{self.z_samples[0]:g}, {self.z_samples[-1]:g}])"
        )


PotentialModel = HomogeneousPotential | InterpolatedPotential | TabulatedPotential


def eval_reduced_potential(model: PotentialModel, z):
    """Evaluate U(z) for any model kind; z may be a scalar or array."""
    return model.reduced_potential(z)


def length_scales(model: PotentialModel):
    """Return (ell3, ell4); an entry is None when the model has no such tail."""
    return model.length_scales()


def he_model() -> InterpolatedPotential:
    """Two-scale model bound to the built-in helium-surface length scales."""
    return InterpolatedPotential(*HE_SCALES)


def sio2_model() -> InterpolatedPotential:
    """Two-scale model bound to the built-in silica-surface length scales."""
    return InterpolatedPotential(*SIO2_SCALES)


def load_tabulated(path) -> TabulatedPotential:
    """Read a two-column potential table.

    Format: optional ``#`` comment lines (including a conventional header
    ``# z_bohr  U_reduced``), whitespace-separated numeric rows with z
    strictly increasing and U < 0, and optional metadata comments
    ``# ell3 = <value>`` / ``# ell4 = <value>`` declaring the tail scales.

    Raises
    ------
    PotentialFormatError
        On malformed rows, non-increasing z or non-negative U; the message
        names the offending 1-based line number.
    """
    path = Path(path)
    zs: list[float] = []
    us: list[float] = []
    meta: dict[str, float] = {}
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                for key in ("ell3", "ell4"):
                    if body.replace(" ", "").startswith(f"{key}="):
                        try:
                            meta[key] = float(body.split("=", 1)[1])
                        except ValueError as exc:
                            raise PotentialFormatError(
                                f"{path}:{lineno}: bad {key} metadata value"
                            ) from exc
                continue
            parts = line.split()
            if len(parts) != 2:
                raise PotentialFormatError(
                    f"{path}:{lineno}: expected two columns, got {len(parts)}"
                )
            try:
                z_val = float(parts[0])
                u_val = float(parts[1])
            except ValueError as exc:
                raise PotentialFormatError(
                    f"{path}:{lineno}: non-numeric entry"
                ) from exc
            if zs and z_val <= zs[-1]:
                raise PotentialFormatError(
                    f"{path}:{lineno}: z values must be strictly increasing"
                )
            if z_val <= 0.0:
                raise PotentialFormatError(f"{path}:{lineno}: z must be positive")
            if u_val >= 0.0:
                raise PotentialFormatError(
                    f"{path}:{lineno}: potential must be attractive (U < 0)"
                )
            zs.append(z_val)
            us.append(u_val)
    if not zs:
        raise PotentialFormatError(f"{path}: table contains no samples")
    return TabulatedPotential(
        np.array(zs), np.array(us), meta.get("ell3"), meta.get("ell4")
    )
