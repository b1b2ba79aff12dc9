"""Shared numerical oracle for the delta-normalization of matched modes."""

import math

import numpy as np

from sonophoton.core import SPEED_OF_LIGHT as C
from sonophoton.specfun import sph_jn_table, sph_yn_table

from oracles import fit_line

R500 = 500e-9


def omega_for(x1, n_inside, radius=R500):
    """Frequency placing the interior argument k1 R at x1."""
    return x1 * C / (n_inside * radius)


def mode_profile(mm, radius, r):
    """Radial profile of the matched (un-normalized) mode at radii r."""
    k1 = mm.n_inside * mm.omega / C
    k2 = mm.n_outside * mm.omega / C
    r = np.asarray(r)
    out = np.empty_like(r)
    inside = r <= radius
    if np.any(inside):
        out[inside] = sph_jn_table(mm.l, k1 * r[inside])[mm.l]
    if np.any(~inside):
        xs = k2 * r[~inside]
        out[~inside] = (mm.amp_regular * sph_jn_table(mm.l, xs)[mm.l]
                        + mm.amp_irregular * sph_yn_table(mm.l, xs)[mm.l])
    return out


def normalization_slope(mm, span=50.0):
    """Growth rate of the cumulative eps-weighted norm integral of the
    delta-normalized mode, and its analytic target n_outside / (pi c)."""
    k1 = mm.n_inside * mm.omega / C
    k2 = mm.n_outside * mm.omega / C
    n_sq_mode = mm.a_nu_sq * 2.0 * k1 / math.pi  # delta-norm amplitude^2
    kmax = max(k1, k2)
    n_pts = int(kmax * span * R500 / (2.0 * math.pi) * 60) + 500
    r = np.linspace(1e-4 * R500, span * R500, n_pts)
    f = mode_profile(mm, R500, r)
    eps = np.where(r <= R500, mm.n_inside**2, mm.n_outside**2)
    integrand = 2.0 * mm.omega * eps * n_sq_mode * f * f * r * r
    cumulative = np.concatenate(
        ([0.0], np.cumsum(0.5 * np.diff(r) * (integrand[1:] + integrand[:-1]))))
    window = r > 0.6 * span * R500
    slope, _ = fit_line(list(r[window]), list(cumulative[window]))
    return slope, mm.n_outside / (math.pi * C)
