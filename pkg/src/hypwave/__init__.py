"""Hyperbolic wavelet analysis of anisotropic smoothness on sampled fields."""

from .errors import (
    AdmissibilityError,
    BandRangeError,
    DegenerateInputError,
    FileFormatError,
    InsufficientDataError,
    ParameterError,
    SupportViolationError,
    TruncationWarning,
)
from .field import (
    DyadicGrid,
    SampledField,
    SpectralField,
    constant_field,
    dft,
    field_from_function,
    idft,
    lp_norm,
    make_grid,
    read_field,
    write_field,
)
from .bands import (
    Anisotropy,
    AnisotropicResolution,
    HyperbolicResolution,
    NormParams,
    UnivariateResolution,
    anisotropic_level_cap,
    anisotropic_project,
    band_moduli,
    besov_norm,
    hyperbolic_band_cap,
    hyperbolic_project,
    isotropic,
    mixed_sobolev_norm,
    smooth_step,
    sobolev_multiplier_norm,
    theta0,
    triebel_norm,
    weight,
)
from .wavelet import (
    AdmissibilityReport,
    CoefficientField,
    WaveletSpec,
    admissibility_check,
    brute_pairing,
    cell_interval,
    cell_measure,
    coefficient_measure,
    forward,
    inverse,
    level_count,
    lex_scale_vectors,
    parseval_sum,
    read_coefficients,
    write_coefficients,
)
from .seqnorm import btilde_norm, ftilde_norm, level_statistics
from .synth import (
    GroundTruth,
    RngSpec,
    dilate_spectrum,
    random_bandlimited,
    resolve_exponent,
    synth_cascade,
    synth_lemma1,
    synth_lemma2,
    synth_lemma3,
    tensor_embed,
)
from .estimate import DetectionResult, alpha_candidates, detect_anisotropy, fit_loglog

__version__ = "0.1.0"
