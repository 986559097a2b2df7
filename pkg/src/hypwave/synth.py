"""Generators for the experiment corpus.

Every generator is a pure function of its parameters and an RngSpec, so two
calls with the same seed produce bit-identical fields on any platform (the
RNG is the counter-based Philox generator keyed by (seed, stream)).

Families built here:

* weight-law cascades with prescribed (s, alpha) in a chosen wavelet basis;
* three univariate scaling families driving the norm-divergence fits
  (sign-randomized full-level sums, disjoint-support stacks, and dilated
  low-pass kernels);
* the spectral tensor embedding that turns a univariate profile into a
  d-variate field occupying one anisotropic band but many hyperbolic bands;
* band-limited Gaussian random fields.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SupportViolationError
from .field import DyadicGrid, SampledField, SpectralField, dft, idft
from .bands import Anisotropy, smooth_step, theta0
from .wavelet import CoefficientField, WaveletSpec, inverse

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class RngSpec:
    """Counter-based RNG identity: algorithm fixed, stream splits substreams."""

    seed: int
    stream: int = 0
    algorithm: str = "philox4x64"

    def __post_init__(self):
        if self.algorithm != "philox4x64":
            raise ParameterError(f"unsupported RNG algorithm {self.algorithm!r}")

    def generator(self) -> np.random.Generator:
        key = [self.seed & 0xFFFFFFFFFFFFFFFF, self.stream & 0xFFFFFFFFFFFFFFFF]
        return np.random.Generator(np.random.Philox(key=key))

    def substream(self, k: int) -> "RngSpec":
        return RngSpec(seed=self.seed, stream=self.stream + 1 + k)


@dataclass(frozen=True)
class GroundTruth:
    """Expected scaling exponents for a generated family.

    ``exponents`` maps a measurement name to either a number or a formula
    string in p and q ('1/q', '1-1/p', ...) resolved at fit time; the
    provenance entry records whether a target comes from asymptotic theory,
    was derived from an independent computation, or is definitional.
    """

    family: str
    params: dict
    exponents: dict
    provenance: dict
    levels: int = 0
    notes: str = ""


def resolve_exponent(value, p: float, q: float) -> float:
    if isinstance(value, (int, float)):
        return float(value)
    table = {
        "1/q": 0.0 if math.isinf(q) else 1.0 / q,
        "1/p": 0.0 if math.isinf(p) else 1.0 / p,
        "1/2": 0.5,
        "1-1/p": 1.0 - (0.0 if math.isinf(p) else 1.0 / p),
        "1/q-1/2": (0.0 if math.isinf(q) else 1.0 / q) - 0.5,
    }
    if value not in table:
        raise ParameterError(f"unknown exponent formula {value!r}")
    return table[value]


# ---------------------------------------------------------------------------
# weight-law cascades

def synth_cascade(grid: DyadicGrid, s: float, alpha: Anisotropy, rng: RngSpec,
                  mode: str = "deterministic",
                  spec: WaveletSpec | None = None):
    """Coefficients lambda = eps * 2^(-s * max_i j_i/alpha_i) at every
    position, synthesized through the chosen wavelet basis."""
    if mode not in ("deterministic", "rademacher"):
        raise ParameterError(f"unknown cascade mode {mode!r}")
    if alpha.d != grid.d:
        raise ParameterError("anisotropy dimension does not match the grid")
    spec = spec or WaveletSpec.haar()
    gen = rng.generator() if mode == "rademacher" else None
    coeffs = CoefficientField.zeros(grid, spec)
    for jbar in coeffs.scale_vectors():
        amp = 2.0 ** (-s * max(j / a for j, a in zip(jbar, alpha.alphas)))
        blk = coeffs.block(jbar)
        if mode == "rademacher":
            signs = gen.integers(0, 2, size=blk.shape) * 2.0 - 1.0
            blk[...] = amp * signs
        else:
            blk[...] = amp
    f = inverse(coeffs)
    gt = GroundTruth(
        family="cascade",
        params={"s": s, "alpha": alpha.alphas, "mode": mode, "wavelet": spec.kind},
        exponents={"level_stat_slope": -s},
        provenance={"level_stat_slope": "definition"},
        levels=(grid.J + 1) ** grid.d,
    )
    return f, gt


# ---------------------------------------------------------------------------
# univariate scaling families

def _require_1d(grid: DyadicGrid):
    if grid.d != 1:
        raise ParameterError("this family is univariate; pass a d=1 grid")


def window_octaves(N: int) -> list:
    """Occupied octaves of the modulated-window family: 3, 5, ..., <= N.

    The one-octave gap keeps the two dyadic bands each summand touches
    disjoint from every other summand's bands, so both the L_p and the
    band-aggregated norms follow exact power laws in the summand count.
    """
    return list(range(3, N + 1, 2))


def synth_lemma1(grid: DyadicGrid, N: int, rng: RngSpec, basis: str = "modulated-window"):
    """Sign-randomized sum of spectrally separated unit pieces.

    'haar' variant: f = sum_{j<=N} eps_j * (sum over all positions of the
    sup-normalized level-j functions); every level's spatial modulus is 1.

    'modulated-window' variant: f = sum_j eps_j w_j(x) cos(2 pi 3*2^(j-2) x)
    over the octaves j in window_octaves(N), with the constant-Q window
    w_j(x) = 1 + cos(2 pi 2^(j-3) x): summand j has spectral teeth at
    {5,6,7} * 2^(j-3), strictly inside the octave (2^(j-1), 2^j), and the
    teeth pattern is an exact dyadic dilation across j, so per-summand and
    per-band L_p norms do not depend on j at all.

    The averaged L_p norm grows like (summand count)^(1/2), the
    band-aggregated norms like (summand count)^(1/q).
    """
    _require_1d(grid)
    if N > grid.J - 2:
        raise ParameterError(f"N={N} exceeds the band cap J-2={grid.J - 2}")
    gen = rng.generator()
    if basis == "haar":
        if N < 0:
            raise ParameterError("N must be >= 0")
        signs = gen.integers(0, 2, size=N + 1) * 2.0 - 1.0
        coeffs = CoefficientField.zeros(grid, WaveletSpec.haar())
        for j in range(N + 1):
            amp = signs[j] * (1.0 if j == 0 else _SQRT2)
            coeffs.block((j,))[...] = amp
        f = inverse(coeffs)
        levels = N + 1
    elif basis == "modulated-window":
        octaves = window_octaves(N)
        if not octaves:
            raise ParameterError("the modulated-window variant needs N >= 3")
        signs = gen.integers(0, 2, size=len(octaves)) * 2.0 - 1.0
        n = grid.n
        F = np.zeros(n, dtype=np.complex128)
        for idx, j in enumerate(octaves):
            base = 1 << (j - 3)
            for tooth, w_hat in ((5, 0.25), (6, 0.5), (7, 0.25)):
                m = tooth * base
                F[m % n] += signs[idx] * w_hat
                F[(-m) % n] += signs[idx] * w_hat
        f = idft(SpectralField(grid, F), real=True)
        levels = len(octaves)
    else:
        raise ParameterError(f"unknown basis {basis!r}")
    gt = GroundTruth(
        family="level-sum",
        params={"N": N, "basis": basis},
        exponents={"lp": 0.5, "band_sum": "1/q"},
        provenance={"lp": "theory", "band_sum": "theory"},
        levels=levels,
    )
    return f, gt


def stack_levels(N: int, j_cap: int | None = None) -> list:
    """Occupied levels of the disjoint-support stack: 2, 4, ..., <= N.

    Level 0/1 pieces would cover the whole torus; the one-level gap keeps
    the pieces' dyadic bands from being shared, mirroring window_octaves.
    """
    top = N if j_cap is None else min(N, j_cap)
    return list(range(2, top + 1, 2))


def stack_positions(N: int, j_cap: int | None = None) -> dict:
    """Left-to-right disjoint packing: level j owns a cell of side 2^-(j-1)."""
    out = {}
    offset = 0.0
    for j in stack_levels(N, j_cap):
        side = 2.0 ** (-(j - 1))
        out[j] = int(round(offset / side))
        offset += side
    return out


def _atom_profile(u: np.ndarray) -> np.ndarray:
    """Oscillating bump on [0,1): spectral teeth at {2, 3, 4} in cell units,
    C^1 contact with zero at both ends (tails decay like |xi|^-3)."""
    return np.sin(np.pi * u) ** 2 * np.cos(2.0 * np.pi * 3.0 * u)


def synth_lemma2(grid: DyadicGrid, N: int, p: float, basis: str = "modulated-atom"):
    """Disjoint-support stack f = sum_j 2^(j/p) a_j with one unit piece per
    level, packed left to right.

    'modulated-atom' pieces are smooth oscillating bumps a_j(x) =
    profile(2^(j-1) x - k_j): compact disjoint supports give the exact
    l_p addition ||f||_p^p = sum_j 2^j ||a_j||_p^p (slope 1/p in the piece
    count), and the C^infinity envelope keeps spectral leakage across dyadic
    bands negligible, so band-aggregated norms scale like count^(1/q).
    The 'haar' variant (sup-normalized Haar pieces) has the same exact L_p
    law and exact sequence-side level norms, but its jump discontinuities
    spread mass over every band, so it is not used for band-norm fits.
    """
    _require_1d(grid)
    if N > grid.J - 2:
        raise ParameterError(f"N={N} exceeds the band cap J-2={grid.J - 2}")
    if N < 2:
        raise ParameterError(
            "supports cannot be packed disjointly on the torus below level 2"
        )
    if not (p > 0) or math.isinf(p):
        raise ParameterError(f"finite positive p required, got {p}")
    # atom teeth reach 2^(j+1), which must stay inside the usable box
    positions = stack_positions(N, j_cap=grid.J - 3)
    if not positions:
        raise ParameterError(f"no packable level at N={N} on a J={grid.J} grid")
    if basis == "haar":
        coeffs = CoefficientField.zeros(grid, WaveletSpec.haar())
        for j, k in positions.items():
            coeffs.block((j,))[k] = 2.0 ** (j / p) * _SQRT2
        f = inverse(coeffs)
    elif basis == "modulated-atom":
        x = grid.coordinates()[0]
        vals = np.zeros(grid.n, dtype=np.float64)
        for j, k in positions.items():
            u = x * 2.0 ** (j - 1) - k
            inside = (u >= 0.0) & (u < 1.0)
            vals[inside] += 2.0 ** (j / p) * _atom_profile(u[inside])
        f = SampledField(grid, vals.astype(np.complex128), real=True)
    else:
        raise ParameterError(f"unknown basis {basis!r}")
    gt = GroundTruth(
        family="disjoint-stack",
        params={"N": N, "p": p, "basis": basis},
        exponents={"lp": "1/p", "band_sum": "1/q"},
        provenance={"lp": "theory", "band_sum": "theory"},
        levels=len(positions),
    )
    return f, gt


def synth_lemma3(grid: DyadicGrid, N: int):
    """Dilated low-pass kernel: spectrum theta_0(2^-N m) on the lattice."""
    _require_1d(grid)
    if not 0 <= N <= grid.J - 2:
        raise ParameterError(f"N={N} outside 0..J-2={grid.J - 2}")
    m = grid.frequencies()[0]
    F = theta0(m * 2.0 ** (-N)).astype(np.complex128)
    f = idft(SpectralField(grid, F), real=True)
    gt = GroundTruth(
        family="dilated-kernel",
        params={"N": N},
        exponents={"lp_log2_slope": "1-1/p", "band_growth_lower": "1/p"},
        provenance={"lp_log2_slope": "theory", "band_growth_lower": "theory"},
        levels=N + 1,
    )
    return f, gt


# ---------------------------------------------------------------------------
# spectral tensor embedding

def _interval_dyadic(k: int, alpha_min: float):
    """[2^(k-1+alpha_min/3), 2^k]: plateau interval of the narrow unit ladder."""
    return (2.0 ** (k - 1 + alpha_min / 3.0), 2.0 ** k)


def _interval_aniso(ell: int, a: float, alpha_min: float):
    """[2^((ell-1)a + alpha_min/3), 2^(ell a)]."""
    return (2.0 ** ((ell - 1) * a + alpha_min / 3.0), 2.0 ** (ell * a))


def pick_bump_interval(ell: int, a: float, alpha_min: float):
    """Intersect the anisotropic plateau interval with one of its two dyadic
    neighbours; the pick rule keys on the fractional part of ell*a and is
    guaranteed to leave an interval of log-length >= alpha_min^2/8."""
    lo_a, hi_a = _interval_aniso(ell, a, alpha_min)
    k0 = math.floor(ell * a)
    delta = ell * a - k0
    sigma = 8.0 * alpha_min / (3.0 * alpha_min + 12.0)
    order = (k0, k0 + 1) if delta < sigma else (k0 + 1, k0)
    for k in order:
        if k < 1:
            continue
        lo_d, hi_d = _interval_dyadic(k, alpha_min)
        lo, hi = max(lo_a, lo_d), min(hi_a, hi_d)
        if hi > lo:
            return lo, hi
    raise ParameterError(
        f"no usable bump interval at level ell={ell}, axis weight {a}"
    )


def _bump_vector(grid_n: int, lo: float, hi: float) -> np.ndarray:
    """Smooth bump on the centered half of [lo, hi], sampled at integer
    frequencies, normalized to peak 1; FFT-layout vector."""
    width = hi - lo
    wlo, whi = lo + 0.25 * width, hi - 0.25 * width
    m_lo, m_hi = math.ceil(wlo), math.floor(whi)
    if m_hi < m_lo:
        raise ParameterError(
            f"empty usable bump window [{wlo:.3f}, {whi:.3f}] at this grid size"
        )
    ms = np.arange(m_lo, m_hi + 1, dtype=np.int64)
    if m_hi == m_lo:
        vals = np.ones(1)
    else:
        u = (ms - wlo) / (whi - wlo)
        vals = smooth_step(2.0 * u) * smooth_step(2.0 * (1.0 - u))
        vals = vals / vals.max()
    vec = np.zeros(grid_n, dtype=np.complex128)
    vec[ms % grid_n] = vals
    return vec


def _embed_axis_spectrum(g: SampledField, n_out: int) -> np.ndarray:
    """Copy the 1-D spectrum of g onto an axis of length n_out by integer
    frequency."""
    G = dft(g).coefficients
    n_g = g.grid.n
    half = min(n_g, n_out) // 2
    out = np.zeros(n_out, dtype=np.complex128)
    for m in range(-half, half):
        out[m % n_out] = G[m % n_g]
    lost = float(np.sum(np.abs(G) ** 2)) - float(np.sum(np.abs(out) ** 2))
    if lost > 1e-24 * max(float(np.sum(np.abs(G) ** 2)), 1e-300):
        raise SupportViolationError("spectrum of g does not fit the target axis")
    return out


def tensor_embed_spectra(g: SampledField, ell: int, alpha: Anisotropy,
                         grid_out: DyadicGrid) -> list:
    """Per-axis spectral vectors of the embedded field: smooth bumps on the
    first d-1 axes, the spectrum of g on the last axis."""
    if g.grid.d != 1:
        raise ParameterError("the embedded profile g must be univariate")
    d = grid_out.d
    if d < 2 or alpha.d != d:
        raise ParameterError("target grid must be multivariate and match alpha")
    if ell < 1:
        raise ParameterError("ell must be >= 1")
    cap_d = 2.0 ** (ell * alpha[d - 1])
    G = dft(g).coefficients
    m_g = g.grid.frequencies()[0]
    outside = float(np.sum(np.abs(G[np.abs(m_g) > cap_d]) ** 2))
    total = float(np.sum(np.abs(G) ** 2))
    if total == 0.0:
        raise ParameterError("embedded profile g is identically zero")
    if outside > 1e-24 * total:
        raise SupportViolationError(
            f"spectrum of g extends beyond |m| <= 2^(ell*alpha_d) = {cap_d:.1f}"
        )
    usable = 2.0 ** (grid_out.J - 2)
    for i in range(d - 1):
        if 2.0 ** (ell * alpha[i]) > usable:
            raise ParameterError(
                f"ell={ell} puts the axis-{i} bump above the usable box of J={grid_out.J}"
            )
    axes = []
    for i in range(d - 1):
        lo, hi = pick_bump_interval(ell, alpha[i], alpha.alpha_min)
        axes.append(_bump_vector(grid_out.n, lo, hi))
    axes.append(_embed_axis_spectrum(g, grid_out.n))
    return axes


def tensor_embed(g: SampledField, ell: int, alpha: Anisotropy,
                 grid_out: DyadicGrid) -> SampledField:
    """Multivariate field whose spectrum is bump_1 x ... x bump_{d-1} x Fg."""
    axes = tensor_embed_spectra(g, ell, alpha, grid_out)
    F = axes[0]
    for v in axes[1:]:
        F = np.multiply.outer(F, v)
    return idft(SpectralField(grid_out, F), real=False)


# ---------------------------------------------------------------------------
# random band-limited corpus

def random_bandlimited(grid: DyadicGrid, band_cap: int, spectrum_profile,
                       rng: RngSpec) -> SampledField:
    """Real field with independent shaped Gaussian spectral coefficients
    supported in |m_i| <= band_cap."""
    if not 1 <= band_cap <= 2 ** (grid.J - 2):
        raise ParameterError(
            f"band cap {band_cap} outside 1..2^(J-2)={2 ** (grid.J - 2)}"
        )
    gen = rng.generator()
    side = 2 * band_cap + 1
    shape = (side,) * grid.d
    z = gen.standard_normal(shape) + 1j * gen.standard_normal(shape)
    ms = np.arange(-band_cap, band_cap + 1)
    if spectrum_profile is not None:
        mesh = np.meshgrid(*([ms] * grid.d), indexing="ij")
        z = z * np.asarray(spectrum_profile(*mesh), dtype=np.float64)
    # F(-m) = conj(F(m)) makes the synthesized field real
    rev = tuple(slice(None, None, -1) for _ in range(grid.d))
    z = 0.5 * (z + np.conj(z[rev]))
    F = np.zeros(grid.shape, dtype=np.complex128)
    idx = [m % grid.n for m in ms]
    F[np.ix_(*([idx] * grid.d))] = z
    return idft(SpectralField(grid, F), real=True)


def dilate_spectrum(f: SampledField, factor: int) -> SampledField:
    """Move every spectral coefficient from m to factor*m."""
    if factor < 1 or factor != int(factor):
        raise ParameterError("dilation factor must be a positive integer")
    factor = int(factor)
    if factor == 1:
        return f
    grid = f.grid
    F = dft(f).coefficients
    half_new = grid.n // (2 * factor)
    m_src = np.arange(-half_new, half_new)
    m_axis = grid.frequencies()[0]
    keep = np.abs(m_axis) < half_new
    total = float(np.sum(np.abs(F) ** 2))
    if total > 0:
        mask = np.ones(grid.shape, dtype=bool)
        for axis in range(grid.d):
            shape = [1] * grid.d
            shape[axis] = grid.n
            mask &= keep.reshape(shape)
        lost = float(np.sum(np.abs(F[~mask]) ** 2))
        if lost > 1e-24 * total:
            raise SupportViolationError(
                f"dilation by {factor} would push spectral mass past the lattice"
            )
    src = [list((m_src % grid.n))] * grid.d
    dst = [list(((factor * m_src) % grid.n))] * grid.d
    out = np.zeros(grid.shape, dtype=np.complex128)
    out[np.ix_(*dst)] = F[np.ix_(*src)]
    return idft(SpectralField(grid, out), real=f.real)
