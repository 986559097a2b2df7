"""Dyadic grids on the unit torus, sampled fields, and discrete transforms.

A field lives on the uniform lattice x_k = k * 2^-J (componentwise) of the
torus [0,1)^d and is stored as a C-ordered complex128 array of shape
(2^J,)*d.  The spectral counterpart indexes integer frequencies
m in {-2^(J-1), ..., 2^(J-1)-1}^d in standard FFT layout and uses the
convention

    f(x) = sum_m F(m) * exp(2*pi*i*<m, x>),

so a pure tone exp(2*pi*i*m0.x) has a single unit spectral entry at m0.
All reductions run in a fixed deterministic order.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import FileFormatError, ParameterError

# largest per-axis level by dimension; keeps the densest grid at ~2^21 cells
_J_CAP = {1: 14, 2: 11, 3: 7}

_REAL_TOL = 1e-12

GRD_MAGIC = "GRD1"


@dataclass(frozen=True)
class DyadicGrid:
    """Uniform 2^J-per-axis sampling lattice of the unit torus [0,1)^d."""

    d: int
    J: int

    @property
    def n(self) -> int:
        """Samples per axis."""
        return 1 << self.J

    @property
    def shape(self):
        return (self.n,) * self.d

    @property
    def size(self) -> int:
        return self.n ** self.d

    def coordinates(self):
        """Per-axis sample coordinates k * 2^-J."""
        ax = np.arange(self.n) / self.n
        return (ax,) * self.d

    def frequencies(self):
        """Per-axis integer frequencies in FFT layout."""
        m = np.fft.fftfreq(self.n, d=1.0 / self.n).astype(np.int64)
        return (m,) * self.d


def make_grid(d: int, J: int) -> DyadicGrid:
    if d not in _J_CAP:
        raise ParameterError(f"dimension d={d} out of range, supported: 1 <= d <= 3")
    if not 1 <= J <= _J_CAP[d]:
        raise ParameterError(
            f"level J={J} out of range for d={d}, supported: 1 <= J <= {_J_CAP[d]}"
        )
    return DyadicGrid(d=d, J=J)


@dataclass(frozen=True)
class SampledField:
    """Complex samples on a DyadicGrid, plus a real-valuedness tag."""

    grid: DyadicGrid
    values: np.ndarray
    real: bool = False

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.complex128)
        if v.shape != self.grid.shape:
            v = v.reshape(self.grid.shape)
        object.__setattr__(self, "values", v)
        if self.real:
            scale = float(np.max(np.abs(v))) or 1.0
            if float(np.max(np.abs(v.imag))) > _REAL_TOL * scale:
                raise ParameterError("field tagged real has non-negligible imaginary part")

    def map_values(self, fn) -> "SampledField":
        return SampledField(self.grid, fn(self.values), real=False)


@dataclass(frozen=True)
class SpectralField:
    """Spectral coefficients of a field, FFT frequency layout."""

    grid: DyadicGrid
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(self.coefficients, dtype=np.complex128)
        if c.shape != self.grid.shape:
            c = c.reshape(self.grid.shape)
        object.__setattr__(self, "coefficients", c)

    def coefficient(self, m) -> complex:
        """Coefficient at integer frequency vector m (negatives allowed)."""
        n = self.grid.n
        idx = tuple(int(mi) % n for mi in m)
        half = n // 2
        for mi in m:
            if not -half <= int(mi) < half:
                raise ParameterError(f"frequency {m} not representable at J={self.grid.J}")
        return complex(self.coefficients[idx])


def constant_field(grid: DyadicGrid, c=1.0) -> SampledField:
    vals = np.full(grid.shape, c, dtype=np.complex128)
    return SampledField(grid, vals, real=bool(np.isrealobj(c) or np.imag(c) == 0))


def field_from_function(grid: DyadicGrid, fn, real=False) -> SampledField:
    axes = grid.coordinates()
    mesh = np.meshgrid(*axes, indexing="ij")
    return SampledField(grid, np.asarray(fn(*mesh), dtype=np.complex128), real=real)


def lp_norm(f: SampledField, p: float) -> float:
    """Discrete L_p on the torus: (2^-dJ sum |f|^p)^(1/p); max modulus at p=inf.

    Exact for fields piecewise constant on the finest dyadic cells.
    """
    if not (p > 0):
        raise ParameterError(f"L_p exponent must be positive or inf, got {p}")
    mod = np.abs(f.values)
    if math.isinf(p):
        return float(mod.max(initial=0.0))
    mean_pow = float(np.mean(mod ** p))
    return mean_pow ** (1.0 / p)


def dft(f: SampledField) -> SpectralField:
    coeffs = np.fft.fftn(f.values) / f.grid.size
    return SpectralField(f.grid, coeffs)


def idft(F: SpectralField, real: bool | None = None) -> SampledField:
    vals = np.fft.ifftn(F.coefficients) * F.grid.size
    if real is None:
        scale = float(np.max(np.abs(vals))) or 1.0
        real = float(np.max(np.abs(vals.imag))) <= _REAL_TOL * scale
    return SampledField(F.grid, vals, real=bool(real))


def write_field(f: SampledField, path) -> None:
    """Write the `.grd` container: one JSON header line, then raw payload."""
    dtype = "f64" if f.real else "c128"
    header = {
        "magic": GRD_MAGIC,
        "d": f.grid.d,
        "J": f.grid.J,
        "dtype": dtype,
        "layout": "row-major",
    }
    with open(path, "wb") as fh:
        fh.write((json.dumps(header, sort_keys=True) + "\n").encode("ascii"))
        if dtype == "f64":
            payload = np.ascontiguousarray(f.values.real, dtype="<f8")
        else:
            payload = np.ascontiguousarray(f.values, dtype="<c16")
        fh.write(payload.tobytes())


def read_field(path) -> SampledField:
    with open(path, "rb") as fh:
        line = fh.readline()
        if not line.endswith(b"\n"):
            raise FileFormatError("truncated-header", "header line not terminated")
        try:
            header = json.loads(line.decode("ascii"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise FileFormatError("malformed-header", f"header is not a JSON line: {exc}") from exc
        if not isinstance(header, dict) or header.get("magic") != GRD_MAGIC:
            raise FileFormatError("bad-magic", "missing or wrong magic marker")
        try:
            d = int(header["d"])
            J = int(header["J"])
            dtype = header["dtype"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FileFormatError("malformed-header", f"incomplete header: {exc}") from exc
        if header.get("layout", "row-major") != "row-major":
            raise FileFormatError("unsupported-layout", f"layout {header.get('layout')!r}")
        if d not in _J_CAP:
            raise FileFormatError("unsupported-dimension", f"d={d} not supported")
        if not 1 <= J <= _J_CAP[d]:
            raise FileFormatError("unsupported-level", f"J={J} out of range for d={d}")
        if dtype not in ("f64", "c128"):
            raise FileFormatError("unsupported-dtype", f"dtype {dtype!r}")
        grid = DyadicGrid(d=d, J=J)
        itemsize = 8 if dtype == "f64" else 16
        payload = fh.read(grid.size * itemsize + 1)
        if len(payload) < grid.size * itemsize:
            raise FileFormatError(
                "truncated-payload",
                f"expected {grid.size * itemsize} payload bytes, got {len(payload)}",
            )
        if len(payload) > grid.size * itemsize:
            raise FileFormatError("trailing-bytes", "payload longer than header declares")
    if dtype == "f64":
        vals = np.frombuffer(payload, dtype="<f8").astype(np.complex128)
        return SampledField(grid, vals.reshape(grid.shape), real=True)
    vals = np.frombuffer(payload, dtype="<c16").astype(np.complex128)
    return SampledField(grid, vals.reshape(grid.shape), real=False)
