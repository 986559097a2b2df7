"""Anisotropy and smoothness estimation from hyperbolic wavelet coefficients.

The per-scale statistic T(jbar) of a field obeying the weight law
lambda ~ 2^(-s * max_i j_i/alpha_i) is affine in x(jbar) = max_i j_i/alpha_i.
The estimator grid-searches candidate anisotropies on the simplex
{sum alpha_i = d}, fits (intercept, -s) by least squares for each candidate,
and keeps the residual minimizer; ties break to the lexicographically
smallest candidate, which makes the search fully deterministic.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, InsufficientDataError, ParameterError
from .bands import Anisotropy
from .seqnorm import level_statistics
from .wavelet import CoefficientField


def fit_loglog(xs, ys):
    """Ordinary least squares; returns (slope, intercept, r_squared)."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.size != ys.size or xs.size < 3:
        raise ParameterError("need at least 3 paired points")
    sxx = float(np.sum((xs - xs.mean()) ** 2))
    if sxx <= 0.0:
        raise ParameterError("degenerate abscissae: all x equal")
    sxy = float(np.sum((xs - xs.mean()) * (ys - ys.mean())))
    syy = float(np.sum((ys - ys.mean()) ** 2))
    slope = sxy / sxx
    intercept = float(ys.mean() - slope * xs.mean())
    rss = max(syy - slope * sxy, 0.0)
    r2 = 1.0 if syy == 0.0 else 1.0 - rss / syy
    return slope, intercept, r2


def _ols_rss(xs: np.ndarray, ys: np.ndarray):
    xm = xs.mean()
    ym = ys.mean()
    sxx = float(np.sum((xs - xm) ** 2))
    if sxx <= 0.0:
        return None
    sxy = float(np.sum((xs - xm) * (ys - ym)))
    syy = float(np.sum((ys - ym) ** 2))
    slope = sxy / sxx
    rss = max(syy - slope * sxy, 0.0)
    return slope, float(ym - slope * xm), rss


def alpha_candidates(d: int, step: float) -> list:
    """Lexicographically ordered grid on the simplex {alpha > 0, sum = d}."""
    if not 0 < step < 1:
        raise ParameterError(f"alpha step must be in (0,1), got {step}")
    n_units = round(d / step)
    if abs(n_units * step - d) > 1e-9:
        raise ParameterError(f"step {step} does not divide the dimension {d}")
    out = []
    if d == 1:
        return [Anisotropy((1.0,))]
    if d == 2:
        for k in range(1, n_units):
            a1 = k * step
            out.append(Anisotropy((round(a1, 12), round(d - a1, 12))))
        return out
    for k1 in range(1, n_units - 1):
        for k2 in range(1, n_units - k1):
            k3 = n_units - k1 - k2
            if k3 < 1:
                continue
            out.append(Anisotropy((round(k1 * step, 12), round(k2 * step, 12),
                                   round(k3 * step, 12))))
    return out


@dataclass(frozen=True)
class DetectionResult:
    s_hat: float
    alpha_hat: Anisotropy
    intercept: float
    rss: float
    levels_used: int

    def to_dict(self) -> dict:
        return {
            "s_hat": self.s_hat,
            "alpha_hat": list(self.alpha_hat.alphas),
            "intercept": self.intercept,
            "rss": self.rss,
            "levels_used": self.levels_used,
        }


def detect_anisotropy(c: CoefficientField, p: float = 2.0,
                      alpha_step: float = 0.05, j_min: int = 2,
                      j_max: int | None = None) -> DetectionResult:
    """Recover (s, alpha) from the per-scale statistics of a coefficient field.

    Coarse scales with max_i j_i < j_min are excluded: the weight law is a
    high-frequency statement and the lowest levels carry the field's mean
    structure instead.
    """
    stats = level_statistics(c, p)
    if not stats:
        raise DegenerateInputError("all coefficient levels are empty")
    selected = {
        jb: t for jb, t in stats.items()
        if max(jb) >= j_min and (j_max is None or max(jb) <= j_max)
    }
    if len(selected) < 6:
        raise InsufficientDataError(
            f"need at least 6 populated levels with max_i j_i >= {j_min}, "
            f"got {len(selected)}"
        )
    jbars = list(selected.keys())
    ts = np.asarray([selected[jb] for jb in jbars], dtype=np.float64)
    jmat = np.asarray(jbars, dtype=np.float64)
    best = None
    for cand in alpha_candidates(c.grid.d, alpha_step):
        xs = np.max(jmat / np.asarray(cand.alphas), axis=1)
        fitted = _ols_rss(xs, ts)
        if fitted is None:
            continue
        slope, intercept, rss = fitted
        if best is None or rss < best[0]:
            best = (rss, cand, slope, intercept)
    if best is None:
        raise DegenerateInputError("no anisotropy candidate admits a fit")
    rss, cand, slope, intercept = best
    return DetectionResult(s_hat=-slope, alpha_hat=cand, intercept=intercept,
                           rss=rss, levels_used=len(selected))
