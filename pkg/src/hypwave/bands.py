"""Resolutions of unity, Littlewood-Paley projections, and Fourier-side norms.

Two band ladders act on the integer frequency lattice:

* hyperbolic -- tensor products theta_{j1} x ... x theta_{jd} of one fixed
  univariate dyadic ladder, indexed by scale vectors jbar in {0..Jmax}^d;
* classical anisotropic -- a single ladder of rectangle annuli
  phi_j = phi_0(2^{-j*alpha} .) - phi_0(2^{-(j-1)*alpha} .) whose aspect
  follows the anisotropy vector alpha.

The univariate generator equals 1 on [-1,1], vanishes outside [-2,2], and
interpolates with the C^infinity step S(t) = g(t)/(g(t)+g(1-t)),
g(t) = exp(-1/t), so every table is reproducible bit-for-bit.  Anisotropy
enters the norms only through the weight 2^{s * max_i(j_i/alpha_i)}
(or 2^{r*||jbar||_1} in dominating-mixed mode), never through the bands.
"""

import math
import warnings
from dataclasses import dataclass, field as dc_field
from functools import reduce

import numpy as np

from .errors import BandRangeError, ParameterError, TruncationWarning
from .field import DyadicGrid, SampledField, SpectralField, dft, idft, lp_norm
from .runtime import get_max_workers, ordered_map

_SUM_TOL = 1e-9


def smooth_step(t):
    """C^infinity monotone step: 0 for t<=0, 1 for t>=1."""
    t = np.asarray(t, dtype=np.float64)
    out = np.zeros_like(t)
    out[t >= 1.0] = 1.0
    mid = (t > 0.0) & (t < 1.0)
    if np.any(mid):
        tm = t[mid]
        with np.errstate(divide="ignore", over="ignore"):
            g = np.exp(-1.0 / tm)
            g1 = np.exp(-1.0 / (1.0 - tm))
        out[mid] = g / (g + g1)
    return out


def _plateau_profile(u, edge: float):
    """1 on |u|<=1, 0 on |u|>=edge, smooth-step transition in between."""
    a = np.abs(np.asarray(u, dtype=np.float64))
    return smooth_step((edge - a) / (edge - 1.0))


def theta0(u):
    """Univariate generator: plateau [-1,1], support [-2,2]."""
    return _plateau_profile(u, 2.0)


@dataclass(frozen=True)
class Anisotropy:
    """Per-axis positive weights summing to the dimension."""

    alphas: tuple

    def __post_init__(self):
        al = tuple(float(a) for a in self.alphas)
        object.__setattr__(self, "alphas", al)
        if len(al) < 1:
            raise ParameterError("anisotropy needs at least one component")
        if any(a <= 0 for a in al):
            raise ParameterError(f"anisotropy components must be positive, got {al}")
        if abs(sum(al) - len(al)) > _SUM_TOL:
            raise ParameterError(
                f"anisotropy must sum to the dimension d={len(al)}, got sum {sum(al)}"
            )

    @property
    def d(self) -> int:
        return len(self.alphas)

    @property
    def alpha_min(self) -> float:
        return min(self.alphas)

    @property
    def alpha_max(self) -> float:
        return max(self.alphas)

    def __getitem__(self, i):
        return self.alphas[i]


def isotropic(d: int) -> Anisotropy:
    return Anisotropy((1.0,) * d)


@dataclass(frozen=True)
class NormParams:
    """Smoothness s, integrability p, fine index q, anisotropy, weight mode.

    weight_mode 'aniso-sup' uses 2^(s*max_i j_i/alpha_i); 'mixed' uses the
    dominating-mixed weight 2^(r*||jbar||_1), in which case ``r`` replaces
    (s, alpha).
    """

    s: float = 0.0
    p: float = 2.0
    q: float = 2.0
    alpha: Anisotropy | None = None
    weight_mode: str = "aniso-sup"
    r: float | None = None

    def __post_init__(self):
        if not (self.p > 0):
            raise ParameterError(f"p must be positive or inf, got {self.p}")
        if not (self.q > 0):
            raise ParameterError(f"q must be positive or inf, got {self.q}")
        if self.weight_mode not in ("aniso-sup", "mixed"):
            raise ParameterError(f"unknown weight mode {self.weight_mode!r}")
        if self.weight_mode == "mixed" and self.r is None:
            raise ParameterError("mixed weight mode requires the exponent r")

    @property
    def sigma_p(self) -> float:
        return max(1.0 / self.p - 1.0, 0.0)

    @property
    def sigma_pq(self) -> float:
        return max(1.0 / self.p - 1.0, 1.0 / self.q - 1.0, 0.0)

    def for_dimension(self, d: int) -> "NormParams":
        """Fill in an isotropic alpha when none was given."""
        if self.weight_mode == "mixed" or self.alpha is not None:
            return self
        return NormParams(self.s, self.p, self.q, isotropic(d), self.weight_mode, self.r)


def weight(jbar, params: NormParams) -> float:
    """Level weight; 1 at jbar = 0 for every parameter choice."""
    if any(j < 0 for j in jbar):
        raise ParameterError("scale vector components must be >= 0")
    if params.weight_mode == "mixed":
        return 2.0 ** (params.r * sum(jbar))
    alpha = params.alpha
    if alpha is None or alpha.d != len(jbar):
        raise ParameterError("anisotropy dimension does not match the scale vector")
    return 2.0 ** (params.s * max(j / a for j, a in zip(jbar, alpha.alphas)))


class UnivariateResolution:
    """Dyadic ladder theta_j = theta_0(2^-j .) - theta_0(2^-(j-1) .), j <= J_max."""

    def __init__(self, J_max: int):
        if J_max < 1:
            raise ParameterError(f"J_max must be >= 1, got {J_max}")
        self.J_max = int(J_max)

    def band(self, j: int, m) -> np.ndarray:
        if not 0 <= j <= self.J_max:
            raise BandRangeError(f"band {j} outside 0..{self.J_max}")
        m = np.asarray(m, dtype=np.float64)
        if j == 0:
            return theta0(m)
        return theta0(m * 2.0 ** (-j)) - theta0(m * 2.0 ** (-(j - 1)))

    def support(self, j: int):
        """Closed |m|-interval outside of which band j vanishes."""
        if j == 0:
            return (0.0, 2.0)
        return (2.0 ** (j - 1), 2.0 ** (j + 1))

    def tables(self, m) -> list:
        m = np.asarray(m, dtype=np.float64)
        return [self.band(j, m) for j in range(self.J_max + 1)]


class HyperbolicResolution:
    """Tensor-product bands theta_jbar(m) = prod_i theta_{j_i}(m_i)."""

    def __init__(self, base: UnivariateResolution, d: int):
        self.base = base
        self.d = int(d)

    @property
    def J_max(self) -> int:
        return self.base.J_max

    def band(self, jbar, m_axes) -> np.ndarray:
        if len(jbar) != self.d:
            raise ParameterError("scale vector dimension mismatch")
        factors = [self.base.band(j, m) for j, m in zip(jbar, m_axes)]
        return _outer(factors)

    def scale_vectors(self):
        return _lex_vectors(self.d, self.J_max)


class AnisotropicResolution:
    """Rectangle-annulus ladder driven by an anisotropy vector."""

    def __init__(self, alpha: Anisotropy, J_max: int):
        if J_max < 0:
            raise ParameterError(f"J_max must be >= 0, got {J_max}")
        self.alpha = alpha
        self.J_max = int(J_max)

    def _axis_plateau(self, i: int, u) -> np.ndarray:
        edge = 2.0 ** self.alpha[i]
        return _plateau_profile(u, edge)

    def generator(self, m_axes) -> np.ndarray:
        factors = [self._axis_plateau(i, m) for i, m in enumerate(m_axes)]
        return _outer(factors)

    def band(self, j: int, m_axes) -> np.ndarray:
        if not 0 <= j <= self.J_max:
            raise BandRangeError(f"level {j} outside 0..{self.J_max}")
        scaled = [m * 2.0 ** (-j * self.alpha[i]) for i, m in enumerate(m_axes)]
        cur = self.generator(scaled)
        if j == 0:
            return cur
        prev_scaled = [m * 2.0 ** (-(j - 1) * self.alpha[i]) for i, m in enumerate(m_axes)]
        return cur - self.generator(prev_scaled)

    def rectangle(self, j: int):
        """Half-widths of R_j: |m_i| <= 2^(alpha_i * j)."""
        return tuple(2.0 ** (a * j) for a in self.alpha.alphas)


def _outer(factors):
    return reduce(lambda a, b: np.multiply.outer(a, b), factors)


def _lex_vectors(d, j_top):
    if d == 1:
        return [(j,) for j in range(j_top + 1)]
    tails = _lex_vectors(d - 1, j_top)
    return [(j, *t) for j in range(j_top + 1) for t in tails]


def hyperbolic_band_cap(grid: DyadicGrid) -> int:
    """Largest per-axis band representable without wraparound."""
    return grid.J - 2


def anisotropic_level_cap(grid: DyadicGrid, alpha: Anisotropy) -> int:
    return int(math.floor((grid.J - 2) / alpha.alpha_max))


def hyperbolic_project(
    f: SampledField, jbar, res: HyperbolicResolution | None = None
) -> SampledField:
    """Band projection: inverse transform of theta_jbar times the spectrum."""
    grid = f.grid
    cap = hyperbolic_band_cap(grid)
    if max(jbar) > cap:
        raise BandRangeError(f"band {tuple(jbar)} above the anti-aliasing cap {cap}")
    if res is None:
        res = HyperbolicResolution(UnivariateResolution(max(cap, 1)), grid.d)
    mask = res.band(jbar, grid.frequencies())
    F = dft(f)
    return idft(SpectralField(grid, mask * F.coefficients), real=None)


def anisotropic_project(
    f: SampledField, j: int, res: AnisotropicResolution
) -> SampledField:
    grid = f.grid
    cap = anisotropic_level_cap(grid, res.alpha)
    if j > cap:
        raise BandRangeError(f"level {j} above the anti-aliasing cap {cap}")
    mask = res.band(j, grid.frequencies())
    F = dft(f)
    return idft(SpectralField(grid, mask * F.coefficients), real=None)


def _truncate_spectrum(F: SpectralField, caps) -> SpectralField:
    """Zero spectral mass outside |m_i| <= caps[i]; warn when any is lost."""
    grid = F.grid
    axes = grid.frequencies()
    keep = _outer([np.abs(m) <= c for m, c in zip(axes, caps)]).astype(bool)
    total = float(np.sum(np.abs(F.coefficients) ** 2))
    if total == 0.0:
        return F
    lost = float(np.sum(np.abs(F.coefficients[~keep]) ** 2))
    if lost > 1e-24 * total:
        warnings.warn(
            f"spectral mass fraction {lost / total:.3e} above the usable box was discarded",
            TruncationWarning,
            stacklevel=3,
        )
        coeffs = np.where(keep, F.coefficients, 0.0)
        return SpectralField(grid, coeffs)
    return F


def _lq_aggregate(terms, q: float) -> float:
    if math.isinf(q):
        return max(terms, default=0.0)
    return float(sum(t ** q for t in terms)) ** (1.0 / q)


@dataclass
class _BandedSpectrum:
    """Shared state for iterating active bands of one field."""

    grid: DyadicGrid
    F: SpectralField
    axis_mass: list = dc_field(default_factory=list)

    @classmethod
    def prepare(cls, f: SampledField, caps) -> "_BandedSpectrum":
        F = _truncate_spectrum(dft(f), caps)
        power = np.abs(F.coefficients) ** 2
        d = f.grid.d
        axis_mass = [
            power.sum(axis=tuple(k for k in range(d) if k != i)) for i in range(d)
        ]
        return cls(grid=f.grid, F=F, axis_mass=axis_mass)

    def axis_active(self, res: UnivariateResolution) -> list:
        """Per axis, the band indices whose support carries spectral mass."""
        out = []
        for i in range(self.grid.d):
            m = self.grid.frequencies()[i]
            absm = np.abs(m)
            active = []
            for j in range(res.J_max + 1):
                lo, hi = res.support(j)
                sel = (absm >= lo) & (absm <= hi) if j > 0 else (absm <= hi)
                if float(self.axis_mass[i][sel].sum()) > 0.0:
                    active.append(j)
            out.append(active)
        return out


def _hyperbolic_moduli(f: SampledField, res=None, keep_fields=False):
    """Yield (jbar, |band field|) over active bands in jbar-lex order."""
    grid = f.grid
    cap = hyperbolic_band_cap(grid)
    if cap < 0:
        raise ParameterError(f"grid level J={grid.J} too small for band analysis")
    if res is None:
        res = UnivariateResolution(max(cap, 1))
    state = _BandedSpectrum.prepare(f, caps=(2.0 ** cap,) * grid.d)
    axes = grid.frequencies()
    tables = [res.tables(m) for m in axes]
    axis_active = state.axis_active(res)
    bands = [
        jb
        for jb in _lex_vectors(grid.d, min(cap, res.J_max))
        if all(j in axis_active[i] for i, j in enumerate(jb))
    ]

    def one(jb):
        mask = _outer([tables[i][j] for i, j in enumerate(jb)])
        vals = np.fft.ifftn(mask * state.F.coefficients) * grid.size
        return jb, np.abs(vals)

    chunk = max(get_max_workers(), 1) * 2
    for start in range(0, len(bands), chunk):
        for item in ordered_map(one, bands[start : start + chunk]):
            yield item


def _classical_moduli(f: SampledField, alpha: Anisotropy):
    grid = f.grid
    cap = anisotropic_level_cap(grid, alpha)
    if cap < 0:
        raise ParameterError(
            f"grid level J={grid.J} too small for the anisotropic ladder at alpha={alpha.alphas}"
        )
    res = AnisotropicResolution(alpha, cap)
    state = _BandedSpectrum.prepare(f, caps=res.rectangle(cap))
    axes = grid.frequencies()

    def one(j):
        mask = res.band(j, axes)
        vals = np.fft.ifftn(mask * state.F.coefficients) * grid.size
        return (j,), np.abs(vals)

    chunk = max(get_max_workers(), 1) * 2
    levels = list(range(cap + 1))
    for start in range(0, len(levels), chunk):
        for item in ordered_map(one, levels[start : start + chunk]):
            yield item


def band_moduli(f: SampledField, flavor: str, alpha: Anisotropy | None = None):
    """Public band iterator used by norms and by the experiment harness.

    flavor 'hyperbolic' yields scale vectors jbar; 'classical' yields
    singleton level tuples (j,).
    """
    if flavor == "hyperbolic":
        return _hyperbolic_moduli(f)
    if flavor == "classical":
        if alpha is None:
            raise ParameterError("classical flavor needs an anisotropy")
        return _classical_moduli(f, alpha)
    raise ParameterError(f"unknown flavor {flavor!r}")


def _classical_weight(j: int, params: NormParams) -> float:
    return 2.0 ** (params.s * j)


def _band_weight_fn(flavor: str, params: NormParams):
    if flavor == "hyperbolic":
        return lambda jb: weight(jb, params)
    if flavor == "classical":
        if params.weight_mode != "aniso-sup":
            raise ParameterError("classical flavor supports only the aniso-sup weight")
        return lambda jb: _classical_weight(jb[0], params)
    raise ParameterError(f"unknown flavor {flavor!r}")


def aggregate_besov(grid: DyadicGrid, moduli, params: NormParams, weight_fn) -> float:
    """l_q of weight * L_p(band modulus) over an iterable of (jbar, |field|)."""
    terms = [
        weight_fn(jb) * lp_norm(SampledField(grid, mod), params.p)
        for jb, mod in moduli
    ]
    return _lq_aggregate(terms, params.q)


def aggregate_triebel(grid: DyadicGrid, moduli, params: NormParams, weight_fn) -> float:
    """L_p of the pointwise l_q across an iterable of (jbar, |field|)."""
    if math.isinf(params.p):
        raise ParameterError("F-type norms require p < inf")
    q = params.q
    acc = None
    for jb, mod in moduli:
        w = weight_fn(jb)
        contrib = (w * mod) if math.isinf(q) else (w * mod) ** q
        if acc is None:
            acc = contrib
        elif math.isinf(q):
            np.maximum(acc, contrib, out=acc)
        else:
            acc += contrib
    if acc is None:
        return 0.0
    v = acc if math.isinf(q) else acc ** (1.0 / q)
    return lp_norm(SampledField(grid, v), params.p)


def besov_norm(f: SampledField, params: NormParams, flavor: str = "hyperbolic") -> float:
    """l_q over bands of weight * L_p(band field); supremum at q = inf."""
    params = params.for_dimension(f.grid.d)
    wfun = _band_weight_fn(flavor, params)
    return aggregate_besov(f.grid, band_moduli(f, flavor, params.alpha), params, wfun)


def triebel_norm(f: SampledField, params: NormParams, flavor: str = "hyperbolic") -> float:
    """L_p of the pointwise l_q across bands; requires p < inf."""
    params = params.for_dimension(f.grid.d)
    if math.isinf(params.p):
        raise ParameterError("F-type norms require p < inf")
    wfun = _band_weight_fn(flavor, params)
    return aggregate_triebel(f.grid, band_moduli(f, flavor, params.alpha), params, wfun)


def sobolev_multiplier_norm(f: SampledField, s: float, alpha: Anisotropy, p: float) -> float:
    """L_p norm after the anisotropic Bessel-type multiplier
    (sum_i (1+m_i^2)^(1/(2*alpha_i)))^s."""
    if not (1.0 < p < math.inf):
        raise ParameterError(f"the W-norm requires 1 < p < inf, got p={p}")
    if alpha.d != f.grid.d:
        raise ParameterError("anisotropy dimension does not match the field")
    mult = _sobolev_multiplier(f.grid, s, alpha)
    F = dft(f)
    g = idft(SpectralField(f.grid, mult * F.coefficients))
    return lp_norm(g, p)


def _sobolev_multiplier(grid: DyadicGrid, s: float, alpha: Anisotropy) -> np.ndarray:
    axes = grid.frequencies()
    total = None
    for i, m in enumerate(axes):
        term = (1.0 + m.astype(np.float64) ** 2) ** (1.0 / (2.0 * alpha[i]))
        shape = [1] * grid.d
        shape[i] = m.size
        term = term.reshape(shape)
        total = term if total is None else total + term
    return total ** s


def mixed_sobolev_norm(f: SampledField, r: float, p: float) -> float:
    """Dominating-mixed Sobolev norm: multiplier prod_i (1+m_i^2)^(r/2)."""
    if not (1.0 < p < math.inf):
        raise ParameterError(f"the mixed W-norm requires 1 < p < inf, got p={p}")
    grid = f.grid
    factors = [(1.0 + m.astype(np.float64) ** 2) ** (r / 2.0) for m in grid.frequencies()]
    mult = _outer(factors)
    F = dft(f)
    g = idft(SpectralField(grid, mult * F.coefficients))
    return lp_norm(g, p)
