"""Hyperbolic (full tensor-product) wavelet analysis and synthesis.

The per-axis ladder reserves index 0 for the scaling block (one coefficient
on the torus) and index j >= 1 for wavelets of support side 2^-(j-1), giving
2^(j-1) positions per axis and, tensorised over all scale combinations,
a critically sampled transform: coefficient count == sample count.

Coefficients are dual-normalized, lambda_{jbar,kbar} = 2^||jbar||_1 <f, psi_{jbar,kbar}>,
which makes lambda the plain expansion coefficient in the wavelet system
(since ||psi_{jbar,kbar}||_2^2 = 2^-||jbar||_1).  The Haar route computes these
exactly via a separable averaging pyramid; smooth filter (CQF) wavelets run a
periodized orthonormal pyramid on measure-normalized samples and rescale each
level by 2^||jbar||_1/2, a consistent discrete proxy for the same normalization.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import FileFormatError, ParameterError
from .field import DyadicGrid, SampledField, make_grid
from .bands import NormParams

_SQRT2 = math.sqrt(2.0)
_ORTHO_TOL = 1e-10

HWC_MAGIC = "HWC1"

# Standard orthonormal low-pass tables (minimum-phase families with 2 and 4
# vanishing moments).  These are configuration inputs: every spec instance is
# re-validated against the CQF invariants below before use.
_S3 = math.sqrt(3.0)
BUILTIN_FILTERS = {
    "cqf4": {
        "lowpass": (
            (1.0 + _S3) / (4.0 * _SQRT2),
            (3.0 + _S3) / (4.0 * _SQRT2),
            (3.0 - _S3) / (4.0 * _SQRT2),
            (1.0 - _S3) / (4.0 * _SQRT2),
        ),
        "vanishing_moments": 2,
        "smoothness": 0,
    },
    "cqf8": {
        "lowpass": (
            0.23037781330885523,
            0.7148465705525415,
            0.6308807679295904,
            -0.02798376941698385,
            -0.18703481171888114,
            0.030841381835986965,
            0.032883011666982945,
            -0.010597401784997278,
        ),
        "vanishing_moments": 4,
        "smoothness": 1,
    },
}


@dataclass(frozen=True)
class WaveletSpec:
    """Analysis family: 'haar', or 'cqf' with an orthonormal low-pass filter."""

    kind: str
    lowpass: tuple = ()
    vanishing_moments: int = 1
    smoothness: int = 0
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("haar", "cqf"):
            raise ParameterError(f"unknown wavelet kind {self.kind!r}")
        if self.kind == "cqf":
            h = np.asarray(self.lowpass, dtype=np.float64)
            if h.size < 2 or h.size % 2:
                raise ParameterError("cqf low-pass filter needs even length >= 2")
            if abs(float(h.sum()) - _SQRT2) > _ORTHO_TOL:
                raise ParameterError("cqf filter does not sum to sqrt(2)")
            for lag in range(0, h.size, 2):
                target = 1.0 if lag == 0 else 0.0
                val = float(np.dot(h[: h.size - lag], h[lag:]))
                if abs(val - target) > _ORTHO_TOL:
                    raise ParameterError(
                        f"cqf filter violates orthonormality at even lag {lag}"
                    )
            if self.vanishing_moments < 1:
                raise ParameterError("cqf wavelet needs at least one vanishing moment")

    @classmethod
    def haar(cls) -> "WaveletSpec":
        return cls(kind="haar", lowpass=(1.0 / _SQRT2, 1.0 / _SQRT2),
                   vanishing_moments=1, smoothness=0, name="haar")

    @classmethod
    def builtin(cls, name: str) -> "WaveletSpec":
        if name == "haar":
            return cls.haar()
        if name not in BUILTIN_FILTERS:
            raise ParameterError(
                f"unknown wavelet {name!r}; available: haar, {', '.join(sorted(BUILTIN_FILTERS))}"
            )
        entry = BUILTIN_FILTERS[name]
        return cls(kind="cqf", lowpass=tuple(entry["lowpass"]),
                   vanishing_moments=entry["vanishing_moments"],
                   smoothness=entry["smoothness"], name=name)

    def highpass(self) -> np.ndarray:
        h = np.asarray(self.lowpass, dtype=np.float64)
        g = h[::-1].copy()
        g[1::2] *= -1.0
        return g


# ---------------------------------------------------------------------------
# cell map: per-axis counts, strict-support cells, and measures

def level_count(j: int) -> int:
    """Coefficients per axis at level j."""
    return 1 if j == 0 else 1 << (j - 1)


def cell_side(j: int) -> float:
    """Side of the strict-support cell at axis level j."""
    return 1.0 if j == 0 else 2.0 ** (-(j - 1))


def cell_interval(j: int, k: int):
    side = cell_side(j)
    return (side * k, side * (k + 1))


def cell_measure(jbar) -> float:
    """Volume of the strict-support cell Q_jbar (cells tile the torus)."""
    return float(np.prod([cell_side(j) for j in jbar]))


def coefficient_measure(jbar) -> float:
    """Squared L2 norm 2^-||jbar||_1 of the wavelet carrying (jbar, kbar);
    this is the measure the sequence norms attach to one coefficient."""
    return 2.0 ** (-float(sum(jbar)))


def block_shape(jbar) -> tuple:
    return tuple(level_count(j) for j in jbar)


def axis_slice(j: int) -> slice:
    """Position of level j inside the packed per-axis layout."""
    if j == 0:
        return slice(0, 1)
    return slice(1 << (j - 1), 1 << j)


def lex_scale_vectors(d: int, j_top: int) -> list:
    if d == 1:
        return [(j,) for j in range(j_top + 1)]
    tails = lex_scale_vectors(d - 1, j_top)
    return [(j, *t) for j in range(j_top + 1) for t in tails]


@dataclass(frozen=True)
class CoefficientField:
    """Dual-normalized coefficients, stored packed: along each axis the
    concatenation [level 0 | level 1 | ... | level J]."""

    grid: DyadicGrid
    spec: WaveletSpec
    packed: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.packed, dtype=np.complex128)
        if arr.shape != self.grid.shape:
            raise ParameterError("packed coefficient array does not match the grid")
        object.__setattr__(self, "packed", arr)

    def block(self, jbar) -> np.ndarray:
        """Dense lambda block at scale vector jbar (a view, row-major in kbar)."""
        if len(jbar) != self.grid.d or any(not 0 <= j <= self.grid.J for j in jbar):
            raise ParameterError(f"scale vector {tuple(jbar)} invalid for J={self.grid.J}")
        return self.packed[tuple(axis_slice(j) for j in jbar)]

    def scale_vectors(self) -> list:
        return lex_scale_vectors(self.grid.d, self.grid.J)

    def copy(self) -> "CoefficientField":
        return CoefficientField(self.grid, self.spec, self.packed.copy())

    @classmethod
    def zeros(cls, grid: DyadicGrid, spec: WaveletSpec) -> "CoefficientField":
        return cls(grid, spec, np.zeros(grid.shape, dtype=np.complex128))

    @classmethod
    def from_block_map(cls, grid, spec, mapping) -> "CoefficientField":
        out = cls.zeros(grid, spec)
        for jbar, values in mapping.items():
            blk = out.block(jbar)
            blk[...] = np.asarray(values, dtype=np.complex128).reshape(blk.shape)
        return out


def parseval_sum(c: CoefficientField) -> float:
    """sum over (jbar,kbar) of 2^-||jbar||_1 |lambda|^2; equals the squared
    lattice L2 norm of the field for orthonormal-up-to-scaling transforms."""
    total = 0.0
    for jbar in c.scale_vectors():
        blk = c.block(jbar)
        total += coefficient_measure(jbar) * float(np.sum(np.abs(blk) ** 2))
    return total


# ---------------------------------------------------------------------------
# fast separable pyramids

def _haar_axis_forward(arr: np.ndarray) -> np.ndarray:
    """Full averaging pyramid along the last axis; packed output layout."""
    out = arr.copy()
    n = out.shape[-1]
    t = n
    while t >= 2:
        even = out[..., 0:t:2]
        odd = out[..., 1:t:2]
        s = (even + odd) / 2.0
        d = (even - odd) / _SQRT2
        out[..., : t // 2] = s
        out[..., t // 2 : t] = d
        t //= 2
    return out


def _haar_axis_inverse(arr: np.ndarray) -> np.ndarray:
    out = arr.copy()
    n = out.shape[-1]
    t = 2
    while t <= n:
        s = out[..., : t // 2].copy()
        d = out[..., t // 2 : t].copy()
        out[..., 0:t:2] = s + d / _SQRT2
        out[..., 1:t:2] = s - d / _SQRT2
        t *= 2
    return out


def _cqf_stage_forward(x: np.ndarray, h: np.ndarray, g: np.ndarray):
    n = x.shape[-1]
    acc_a = np.zeros(x.shape[:-1] + (n // 2,), dtype=x.dtype)
    acc_d = np.zeros_like(acc_a)
    for m in range(h.size):
        shifted = np.roll(x, -m, axis=-1)[..., 0::2]
        acc_a += h[m] * shifted
        acc_d += g[m] * shifted
    return acc_a, acc_d


def _cqf_stage_inverse(a: np.ndarray, d: np.ndarray, h: np.ndarray, g: np.ndarray):
    n = 2 * a.shape[-1]
    up_a = np.zeros(a.shape[:-1] + (n,), dtype=a.dtype)
    up_d = np.zeros_like(up_a)
    up_a[..., 0::2] = a
    up_d[..., 0::2] = d
    out = np.zeros_like(up_a)
    for m in range(h.size):
        out += h[m] * np.roll(up_a, m, axis=-1) + g[m] * np.roll(up_d, m, axis=-1)
    return out


def _cqf_axis_forward(arr: np.ndarray, spec: WaveletSpec) -> np.ndarray:
    h = np.asarray(spec.lowpass, dtype=np.float64)
    g = spec.highpass()
    n = arr.shape[-1]
    J = n.bit_length() - 1
    out = np.empty_like(arr)
    a = arr * (2.0 ** (-J / 2.0))
    t = n
    while t >= 2:
        a, d = _cqf_stage_forward(a, h, g)
        j = t.bit_length() - 1  # detail level produced by this stage
        out[..., t // 2 : t] = d * (2.0 ** (j / 2.0))
        t //= 2
    out[..., 0:1] = a
    return out


def _cqf_axis_inverse(arr: np.ndarray, spec: WaveletSpec) -> np.ndarray:
    h = np.asarray(spec.lowpass, dtype=np.float64)
    g = spec.highpass()
    n = arr.shape[-1]
    J = n.bit_length() - 1
    a = arr[..., 0:1].copy()
    t = 2
    while t <= n:
        j = t.bit_length() - 1
        d = arr[..., t // 2 : t] * (2.0 ** (-j / 2.0))
        a = _cqf_stage_inverse(a, d, h, g)
        t *= 2
    return a * (2.0 ** (J / 2.0))


def _apply_axiswise(values: np.ndarray, axis_fn) -> np.ndarray:
    out = values
    for axis in range(values.ndim):
        moved = np.moveaxis(out, axis, -1)
        moved = axis_fn(np.ascontiguousarray(moved))
        out = np.moveaxis(moved, -1, axis)
    return np.ascontiguousarray(out)


def forward(f: SampledField, spec: WaveletSpec) -> CoefficientField:
    """Analyze a sampled field; critically sampled, orthogonal up to the
    documented diagonal renormalization."""
    if spec.kind == "cqf":
        if 2 ** (f.grid.J - 1) < len(spec.lowpass):
            raise ParameterError(
                f"grid J={f.grid.J} too small for a {len(spec.lowpass)}-tap filter: "
                "periodization would self-overlap more than once"
            )
        packed = _apply_axiswise(f.values, lambda a: _cqf_axis_forward(a, spec))
    else:
        packed = _apply_axiswise(f.values, _haar_axis_forward)
    return CoefficientField(f.grid, spec, packed)


def inverse(c: CoefficientField) -> SampledField:
    if c.spec.kind == "cqf":
        vals = _apply_axiswise(c.packed, lambda a: _cqf_axis_inverse(a, c.spec))
    else:
        vals = _apply_axiswise(c.packed, _haar_axis_inverse)
    scale = float(np.max(np.abs(vals))) or 1.0
    real = float(np.max(np.abs(vals.imag))) <= 1e-12 * scale
    return SampledField(c.grid, vals, real=real)


# ---------------------------------------------------------------------------
# independent oracle: direct lattice pairing against tabulated Haar values

def haar_axis_values(grid: DyadicGrid, j: int, k: int) -> np.ndarray:
    """Values of the level-j Haar function at the 2^J lattice points of one axis."""
    n = grid.n
    if j == 0:
        if k != 0:
            raise ParameterError("axis level 0 has a single position k=0")
        return np.ones(n)
    if not 0 <= k < level_count(j):
        raise ParameterError(f"position k={k} out of range at level {j}")
    if j > grid.J:
        raise ParameterError(f"level {j} exceeds grid level {grid.J}")
    span = 1 << (grid.J - j + 1)  # samples under the support
    half = span // 2
    vals = np.zeros(n)
    start = k * span
    vals[start : start + half] = 1.0 / _SQRT2
    vals[start + half : start + span] = -1.0 / _SQRT2
    return vals


def brute_pairing(f: SampledField, jbar, kbar, spec: WaveletSpec) -> complex:
    """Direct summation 2^||jbar||_1 * 2^-dJ * sum_c f(x_c) h_{jbar,kbar}(x_c)."""
    if spec.kind != "haar":
        raise ParameterError("brute pairing is only defined for the haar system")
    acc = f.values
    for j, k in zip(jbar, kbar):
        axis_vals = haar_axis_values(f.grid, j, k)
        acc = np.tensordot(acc, axis_vals, axes=([0], [0]))
    scale = 2.0 ** float(sum(jbar)) / f.grid.size
    return complex(acc * scale)


# ---------------------------------------------------------------------------
# admissibility ranges

@dataclass(frozen=True)
class AdmissibilityCheck:
    name: str
    lhs: float
    rhs: float
    ok: bool

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


@dataclass(frozen=True)
class AdmissibilityReport:
    characterization: str
    checks: tuple
    valid: bool

    def to_dict(self) -> dict:
        return {
            "characterization": self.characterization,
            "valid": self.valid,
            "checks": [
                {"name": c.name, "lhs": c.lhs, "rhs": c.rhs,
                 "margin": c.margin, "ok": c.ok}
                for c in self.checks
            ],
        }


def admissibility_check(spec: WaveletSpec, params: NormParams,
                        characterization: str) -> AdmissibilityReport:
    """Evaluate the parameter-range inequalities for a wavelet characterization.

    'general-F'      smoothness/moment orders must exceed sigma_{p,q} + |s|/alpha_min
    'general-B'      same with sigma_p instead of sigma_{p,q}
    'haar-F'         |s|/alpha_min < min(1/p, 1/q, 1-1/p, 1-1/q)
    'haar-besov'     |s|/alpha_min < min(1/p, 1-1/p)
    'haar-sobolev'   |s|/alpha_min < min(1/p, 1-1/p)

    An out-of-range verdict is a result, not an error.
    """
    if params.alpha is None:
        raise ParameterError("admissibility checks need the anisotropy")
    ratio = abs(params.s) / params.alpha.alpha_min
    inv_p = 0.0 if math.isinf(params.p) else 1.0 / params.p
    inv_q = 0.0 if math.isinf(params.q) else 1.0 / params.q
    checks = []
    if characterization in ("general-F", "general-B"):
        sigma = params.sigma_pq if characterization == "general-F" else params.sigma_p
        bound = sigma + ratio
        checks.append(AdmissibilityCheck("smoothness order K > bound",
                                         lhs=bound, rhs=float(spec.smoothness),
                                         ok=spec.smoothness > bound))
        checks.append(AdmissibilityCheck("vanishing moments L > bound",
                                         lhs=bound, rhs=float(spec.vanishing_moments),
                                         ok=spec.vanishing_moments > bound))
    elif characterization in ("haar-F", "haar-besov", "haar-sobolev"):
        if spec.kind != "haar":
            raise ParameterError(f"{characterization} applies to the haar system only")
        if characterization == "haar-F":
            cap = min(inv_p, inv_q, 1.0 - inv_p, 1.0 - inv_q)
        else:
            cap = min(inv_p, 1.0 - inv_p)
        checks.append(AdmissibilityCheck("|s|/alpha_min < range cap",
                                         lhs=ratio, rhs=cap, ok=ratio < cap))
    else:
        raise ParameterError(f"unknown characterization {characterization!r}")
    return AdmissibilityReport(characterization=characterization,
                               checks=tuple(checks),
                               valid=all(c.ok for c in checks))


# ---------------------------------------------------------------------------
# coefficient container I/O

def write_coefficients(c: CoefficientField, path) -> None:
    header = {
        "magic": HWC_MAGIC,
        "d": c.grid.d,
        "J": c.grid.J,
        "wavelet": {
            "kind": c.spec.kind,
            "name": c.spec.name,
            "lowpass": list(c.spec.lowpass),
            "vanishing_moments": c.spec.vanishing_moments,
            "smoothness": c.spec.smoothness,
        },
        "order": "j-lex",
    }
    with open(path, "wb") as fh:
        fh.write((json.dumps(header, sort_keys=True) + "\n").encode("ascii"))
        for jbar in c.scale_vectors():
            blk = np.ascontiguousarray(c.block(jbar), dtype="<c16")
            fh.write(blk.tobytes())


def read_coefficients(path) -> CoefficientField:
    with open(path, "rb") as fh:
        line = fh.readline()
        if not line.endswith(b"\n"):
            raise FileFormatError("truncated-header", "header line not terminated")
        try:
            header = json.loads(line.decode("ascii"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise FileFormatError("malformed-header", f"header is not a JSON line: {exc}") from exc
        if not isinstance(header, dict) or header.get("magic") != HWC_MAGIC:
            raise FileFormatError("bad-magic", "missing or wrong magic marker")
        if header.get("order") != "j-lex":
            raise FileFormatError("unsupported-order", f"order {header.get('order')!r}")
        try:
            d = int(header["d"])
            J = int(header["J"])
            wav = header["wavelet"]
            kind = wav["kind"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FileFormatError("malformed-header", f"incomplete header: {exc}") from exc
        if kind == "haar":
            spec = WaveletSpec.haar()
        else:
            try:
                spec = WaveletSpec(kind="cqf", lowpass=tuple(wav["lowpass"]),
                                   vanishing_moments=int(wav["vanishing_moments"]),
                                   smoothness=int(wav.get("smoothness", 0)),
                                   name=wav.get("name", ""))
            except ParameterError as exc:
                raise FileFormatError("invalid-wavelet", str(exc)) from exc
        try:
            grid = make_grid(d, J)
        except ParameterError as exc:
            raise FileFormatError("unsupported-dimension", str(exc)) from exc
        out = CoefficientField.zeros(grid, spec)
        for jbar in out.scale_vectors():
            blk = out.block(jbar)
            raw = fh.read(blk.size * 16)
            if len(raw) < blk.size * 16:
                raise FileFormatError("truncated-payload",
                                      f"coefficient block {jbar} incomplete")
            blk[...] = np.frombuffer(raw, dtype="<c16").reshape(blk.shape)
        if fh.read(1):
            raise FileFormatError("trailing-bytes", "payload longer than header declares")
    return out
