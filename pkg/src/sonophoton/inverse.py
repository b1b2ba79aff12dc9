"""Inverse problem on the closed-form photon count.

The count N(n_in) = C0 / n_liquid^3 (n_out - n_in)^2 n_out^2 / n_in is
rational in n_in, so fixing (n_out, N) gives the quadratic

    n_in^2 - (2 n_out + L) n_in + n_out^2 = 0,
    L = N n_liquid^3 / (C0 n_out^2),  C0 = (k_observed R)^3 / (9 pi),

whose two positive roots are the two branches of the target-count
curve.  Vieta gives n_in_low * n_in_high = n_out^2 exactly, which makes
the branch pair an involution under n_in -> n_out^2 / n_in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import DomainError, NumericalError
from .homogeneous import photons_from_count_formula

RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class BranchPair:
    """Both refractive-index branches solving the target photon count."""

    n_in_low: float
    n_in_high: float
    discriminant: float

    def __post_init__(self) -> None:
        if self.discriminant >= 0.0 and not (
                0.0 < self.n_in_low <= self.n_in_high):
            raise DomainError("branch roots must satisfy 0 < low <= high")


def solve_n_in(n_out: float, n_target: float, n_liquid: float = 1.3,
               k_obs_r: float = 15.0) -> BranchPair:
    """Both n_in values that give n_target photons at fixed n_out.

    Closed-form quadratic; the larger root is taken from the stable
    branch of the formula and the smaller from the Vieta product, so
    neither suffers cancellation.  Each root is verified by substitution
    back into the count formula to RESIDUAL_TOL relative.
    """
    for name, val in (("n_out", n_out), ("n_target", n_target),
                      ("n_liquid", n_liquid), ("k_obs_r", k_obs_r)):
        if not (val > 0.0) or not math.isfinite(val):
            raise DomainError(f"{name} must be positive and finite, got {val!r}")
    c0 = k_obs_r**3 / (9.0 * math.pi)
    lam = n_target * n_liquid**3 / (c0 * n_out * n_out)
    s = 2.0 * n_out + lam
    # disc = s^2 - 4 n_out^2 algebraically; this form avoids the
    # catastrophic cancellation near the double root lam -> 0
    disc = lam * (lam + 4.0 * n_out)
    if disc < 0.0:
        raise NumericalError(
            f"negative discriminant {disc!r} for n_out={n_out}, "
            f"n_target={n_target} (unreachable for positive targets)")
    high = 0.5 * (s + math.sqrt(disc))
    low = n_out * n_out / high
    for root in (low, high):
        # near the double root the count is quadratically flat in n_in and
        # the root-to-count map is too ill-conditioned for a meaningful
        # count residual; the quadratic's own residual takes over there
        if abs(root - n_out) >= 1e-7 * root:
            back = photons_from_count_formula(root, n_out, n_liquid, k_obs_r)
            if abs(back - n_target) > RESIDUAL_TOL * n_target:
                raise NumericalError(
                    f"back-substitution residual "
                    f"{abs(back - n_target) / n_target:.3e} exceeds "
                    f"{RESIDUAL_TOL} at n_in={root!r}, n_out={n_out!r}")
        else:
            resid = root * root - s * root + n_out * n_out
            scale = max(root * root, s * root, n_out * n_out)
            if abs(resid) > 64.0 * 2.220446049250313e-16 * scale:
                raise NumericalError(
                    f"quadratic residual {resid!r} too large at "
                    f"n_in={root!r}, n_out={n_out!r}")
    return BranchPair(n_in_low=low, n_in_high=high, discriminant=disc)


def sweep_figure1(n_target: float, n_liquid: float, k_obs_r: float,
                  n_out_grid: Sequence[float]) -> list[tuple[float, float, float]]:
    """Apply solve_n_in across a strictly increasing n_out grid.

    Returns rows (n_out, n_in_low, n_in_high) in grid order; every row
    satisfies the Vieta identity n_in_low * n_in_high = n_out^2.
    """
    grid = list(n_out_grid)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("n_out grid must be strictly increasing")
    if grid and grid[0] <= 0.0:
        raise DomainError("n_out grid must be positive")
    rows = []
    for n_out in grid:
        pair = solve_n_in(n_out, n_target, n_liquid, k_obs_r)
        product = pair.n_in_low * pair.n_in_high
        if abs(product - n_out * n_out) > 1e-10 * n_out * n_out:
            raise NumericalError(
                f"Vieta identity violated at n_out={n_out!r}: {product!r}")
        rows.append((n_out, pair.n_in_low, pair.n_in_high))
    return rows
