"""Shared domain types, physical constants and unit conversions.

Everything internal is SI: meters, seconds, joules, rad/s.  Display
units (nm, fs, eV, PHz) are converted only at the command-line
boundary, so the formulas that mix hbar, c, K and R never see mixed
units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# CODATA: c and hbar (J s).  c is exact by definition.
SPEED_OF_LIGHT = 2.99792458e8
HBAR = 1.054571817e-34
# Electron-volt in joules (exact since the 2019 SI redefinition).
ELECTRON_VOLT = 1.602176634e-19


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class NumericalError(RuntimeError):
    """A numerical procedure failed to converge or lost all precision."""


def physical_constants() -> tuple[float, float]:
    """Return (c, hbar) in SI units: m/s and J s."""
    return SPEED_OF_LIGHT, HBAR


# unit helpers -------------------------------------------------------------

def nm_to_m(x: float) -> float:
    return x * 1e-9


def m_to_nm(x: float) -> float:
    return x * 1e9


def fs_to_s(x: float) -> float:
    return x * 1e-15


def s_to_fs(x: float) -> float:
    return x * 1e15


def joule_to_ev(x: float) -> float:
    return x / ELECTRON_VOLT


def ev_to_joule(x: float) -> float:
    return x * ELECTRON_VOLT


def rad_s_to_phz(omega: float) -> float:
    """Angular frequency (rad/s) to ordinary frequency in PHz."""
    return omega / (2.0 * math.pi) * 1e-15


def phz_to_rad_s(nu: float) -> float:
    return nu * 2.0 * math.pi * 1e15


def _require_positive(name: str, value: float) -> None:
    if not (value > 0.0) or not math.isfinite(value):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")


# domain types --------------------------------------------------------------

@dataclass(frozen=True)
class MediumTransition:
    """Refractive indices of the gas before/after the change and its timescale.

    n_in, n_out are the dimensionless indices before and after; t0 is the
    physical timescale of the change in seconds.  The pseudo-time scale
    tau0 and the mean squared index are derived on access so they can
    never go stale.
    """

    n_in: float
    n_out: float
    t0: float = 1e-15

    def __post_init__(self) -> None:
        _require_positive("n_in", self.n_in)
        _require_positive("n_out", self.n_out)
        _require_positive("t0", self.t0)

    @property
    def n_sq_mean(self) -> float:
        """(n_in^2 + n_out^2)/2."""
        return 0.5 * (self.n_in**2 + self.n_out**2)

    @property
    def tau0(self) -> float:
        """Pseudo-time timescale: t0 = tau0 * (n_in^2 + n_out^2) / 2."""
        return 2.0 * self.t0 / (self.n_in**2 + self.n_out**2)

    @property
    def delta_n(self) -> float:
        return self.n_in - self.n_out


@dataclass(frozen=True)
class BubbleGeometry:
    """Bubble radius, ambient liquid index and the observed cutoff.

    The sharp high-frequency cutoff is specified as a wavelength
    lambda_obs observed *in the liquid*; k_observed = 2 pi / lambda_obs.
    The gas-side cutoff wavevector appearing in the step function
    Theta(K - k) is K = k_observed * n_out / n_liquid, the unique
    convention under which the closed-form photon count and its
    "(k_observed R)^3 / (9 pi n_liquid^3)" rewriting coincide.
    """

    radius: float
    n_liquid: float
    lambda_obs: float
    n_out: float

    def __post_init__(self) -> None:
        _require_positive("radius", self.radius)
        _require_positive("lambda_obs", self.lambda_obs)
        _require_positive("n_out", self.n_out)
        if not (self.n_liquid >= 1.0) or not math.isfinite(self.n_liquid):
            raise DomainError(
                f"n_liquid must be >= 1 and finite, got {self.n_liquid!r}")

    @property
    def k_observed(self) -> float:
        """Cutoff wavevector in the liquid, 1/m."""
        return 2.0 * math.pi / self.lambda_obs

    @property
    def omega_max(self) -> float:
        """Cutoff angular frequency, rad/s (same on both sides of the wall)."""
        return SPEED_OF_LIGHT * self.k_observed / self.n_liquid

    @property
    def k_gas_cutoff(self) -> float:
        """Gas-side cutoff wavevector K, 1/m."""
        return self.k_observed * self.n_out / self.n_liquid

    @property
    def volume(self) -> float:
        return 4.0 / 3.0 * math.pi * self.radius**3

    @property
    def k_obs_r(self) -> float:
        """Diagnostic: k_observed * radius (dimensionless)."""
        return self.k_observed * self.radius


def build_geometry(radius: float, n_liquid: float, lambda_obs: float,
                   n_out: float) -> BubbleGeometry:
    """Construct a BubbleGeometry from physical inputs (SI units)."""
    return BubbleGeometry(radius=radius, n_liquid=n_liquid,
                          lambda_obs=lambda_obs, n_out=n_out)


def build_geometry_from_kr(k_obs_r: float, n_liquid: float, n_out: float,
                           radius: float = 500e-9) -> BubbleGeometry:
    """Construct a geometry with a prescribed dimensionless k_observed * R.

    Useful when the cutoff is calibrated as a pure number (e.g. 15)
    rather than as a physical wavelength; lambda_obs is back-computed.
    """
    _require_positive("k_obs_r", k_obs_r)
    _require_positive("radius", radius)
    return BubbleGeometry(radius=radius, n_liquid=n_liquid,
                          lambda_obs=2.0 * math.pi * radius / k_obs_r,
                          n_out=n_out)


@dataclass(frozen=True)
class EmissionSummary:
    """Total photon number, emitted energy and mean photon energy.

    photon_count is an expectation value of a mode-density integral and
    therefore a real number, not an integer.  mean_over_cutoff is
    <E> / (hbar omega_max), dimensionless.
    """

    photon_count: float
    total_energy: float
    mean_energy: float
    mean_over_cutoff: float

    def __post_init__(self) -> None:
        if self.photon_count < 0.0 or self.total_energy < 0.0:
            raise DomainError("photon_count and total_energy must be >= 0")

    @classmethod
    def from_totals(cls, photon_count: float, total_energy: float,
                    hbar_omega_max: float) -> "EmissionSummary":
        mean = total_energy / photon_count if photon_count > 0.0 else 0.0
        ratio = mean / hbar_omega_max if hbar_omega_max > 0.0 else 0.0
        return cls(photon_count=photon_count, total_energy=total_energy,
                   mean_energy=mean, mean_over_cutoff=ratio)


@dataclass(frozen=True)
class SpectralDensity:
    """Sampled dN/d omega_out curve.

    grid is strictly increasing in rad/s; values are in seconds (photons
    per unit angular frequency); dimensionless_x, when present, is
    x = k_out * R for each grid point.
    """

    grid: tuple[float, ...]
    values: tuple[float, ...]
    dimensionless_x: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.grid) != len(self.values):
            raise DomainError("grid and values must have equal length")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise DomainError("grid must be strictly increasing")
        if any(v < 0.0 for v in self.values):
            raise DomainError("spectral values must be >= 0")
        if self.dimensionless_x is not None and \
                len(self.dimensionless_x) != len(self.grid):
            raise DomainError("dimensionless_x length mismatch")

    def trapezoid(self, weight=None) -> float:
        """Trapezoidal integral of values (optionally weighted) over grid.

        Accumulated with compensated summation in grid order, so the
        result is bit-identical however the samples were produced.
        """
        terms = []
        for i in range(len(self.grid) - 1):
            h = self.grid[i + 1] - self.grid[i]
            y0 = self.values[i]
            y1 = self.values[i + 1]
            if weight is not None:
                y0 *= weight(self.grid[i])
                y1 *= weight(self.grid[i + 1])
            terms.append(0.5 * h * (y0 + y1))
        return math.fsum(terms)
