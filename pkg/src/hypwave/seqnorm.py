"""Discrete sequence-space (quasi-)norms on hyperbolic wavelet coefficients.

Both norms view the coefficients at scale jbar through indicator fields on
the dyadic cell system.  One coefficient carries the measure
2^-||jbar||_1 (the squared L2 norm of its wavelet), which makes the s=0,
p=q=2 norm coincide exactly with the lattice L2 norm of the analyzed field.
The pointwise (f-type) norm materializes levels on the finest partition via
ancestor-cell lookup, one level block at a time, so peak memory stays at a
single finest-grid buffer.
"""

import math

import numpy as np

from .errors import ParameterError
from .bands import NormParams, weight, _lq_aggregate
from .field import SampledField, lp_norm
from .wavelet import CoefficientField, cell_measure, coefficient_measure


def _level_bracket(block: np.ndarray, jbar, p: float) -> float:
    """Exact L_p norm of the level-jbar indicator sum under the cell measure."""
    mod = np.abs(block)
    if math.isinf(p):
        return float(mod.max(initial=0.0))
    return (coefficient_measure(jbar) * float(np.sum(mod ** p))) ** (1.0 / p)


def btilde_norm(c: CoefficientField, params: NormParams) -> float:
    """l_q over scales of weight * (level L_p bracket)."""
    params = params.for_dimension(c.grid.d)
    terms = []
    for jbar in c.scale_vectors():
        blk = c.block(jbar)
        if not np.any(blk):
            continue
        terms.append(weight(jbar, params) * _level_bracket(blk, jbar, params.p))
    return _lq_aggregate(terms, params.q)


def _upsample_to_grid(block: np.ndarray, grid) -> np.ndarray:
    """Spread a level block over the finest grid by ancestor-cell lookup."""
    out = block
    for axis in range(grid.d):
        factor = grid.n // out.shape[axis]
        if factor > 1:
            out = np.repeat(out, factor, axis=axis)
    return out


def ftilde_norm(c: CoefficientField, params: NormParams) -> float:
    """L_p of the pointwise l_q across scales of the weighted indicator sums."""
    params = params.for_dimension(c.grid.d)
    if math.isinf(params.p):
        raise ParameterError("f-type sequence norms require p < inf")
    grid = c.grid
    q = params.q
    acc = None
    for jbar in c.scale_vectors():
        blk = c.block(jbar)
        if not np.any(blk):
            continue
        # per-coefficient density so the level's L_p mass matches the bracket
        # of btilde_norm exactly (coefficient measure vs strict-cell volume)
        density = (coefficient_measure(jbar) / cell_measure(jbar)) ** (1.0 / params.p)
        level_vals = np.abs(blk) * (weight(jbar, params) * density)
        up = _upsample_to_grid(level_vals, grid)
        if acc is None:
            acc = up if math.isinf(q) else up ** q
        elif math.isinf(q):
            np.maximum(acc, up, out=acc)
        else:
            acc += up ** q
    if acc is None:
        return 0.0
    v = acc if math.isinf(q) else acc ** (1.0 / q)
    return lp_norm(SampledField(grid, v), params.p)


def level_statistics(c: CoefficientField, p: float = 2.0) -> dict:
    """Map jbar -> log2 of the strict-cell level L_p norm.

    Uses the tiling cell measure (cell volume times coefficient count is 1
    at every scale), which makes the statistic exactly linear in the weight
    exponent for cascade-generated inputs.  All-zero levels are absent from
    the map rather than carrying -inf.
    """
    if not (p > 0):
        raise ParameterError(f"p must be positive or inf, got {p}")
    out = {}
    for jbar in c.scale_vectors():
        blk = c.block(jbar)
        mod = np.abs(blk)
        if not np.any(mod):
            continue
        if math.isinf(p):
            val = float(mod.max())
        else:
            val = (cell_measure(jbar) * float(np.sum(mod ** p))) ** (1.0 / p)
        out[jbar] = math.log2(val)
    return out
