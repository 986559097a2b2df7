"""Command-line interface.

Exit codes: 0 success, 2 parameter error, 3 I/O or container-format error,
4 admissibility failure under --strict.  Every command prints a single JSON
document to stdout (or writes it to --report) and is a pure function of its
flags, input files, and seed.
"""

import argparse
import json
import math
import sys
import warnings

from . import runtime
from .errors import (
    AdmissibilityError,
    FileFormatError,
    ParameterError,
    TruncationWarning,
)
from .field import lp_norm, make_grid, read_field, write_field
from .bands import (
    Anisotropy,
    NormParams,
    besov_norm,
    mixed_sobolev_norm,
    sobolev_multiplier_norm,
    triebel_norm,
)
from .wavelet import (
    WaveletSpec,
    admissibility_check,
    forward,
    inverse,
    read_coefficients,
    write_coefficients,
)
from .seqnorm import btilde_norm, ftilde_norm
from .synth import (
    RngSpec,
    random_bandlimited,
    synth_cascade,
    synth_lemma1,
    synth_lemma2,
    synth_lemma3,
)
from .estimate import detect_anisotropy
from .harness import EXPERIMENTS

SPACES = ("B", "F", "W", "Bt", "Ft", "Wt", "SrB", "SrF", "SrW")
SEQ_SPACES = ("bt", "ft")


def _parse_alpha(text, d):
    if text is None:
        return Anisotropy((1.0,) * d)
    parts = tuple(float(x) for x in text.split(","))
    return Anisotropy(parts)


def _emit(payload: dict, args) -> None:
    doc = json.dumps(payload, sort_keys=True)
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="ascii") as fh:
            fh.write(doc + "\n")
    else:
        print(doc)


def _wavelet(name: str) -> WaveletSpec:
    return WaveletSpec.builtin(name)


def cmd_synth(args) -> dict:
    rng = RngSpec(args.seed)
    if args.family == "cascade":
        grid = make_grid(args.d, args.J)
        alpha = _parse_alpha(args.alpha, args.d)
        f, _ = synth_cascade(grid, args.s, alpha, rng, args.mode, _wavelet(args.wavelet))
    elif args.family == "lemma1":
        grid = make_grid(1, args.J)
        f, _ = synth_lemma1(grid, args.N, rng, args.basis)
    elif args.family == "lemma2":
        grid = make_grid(1, args.J)
        f, _ = synth_lemma2(grid, args.N, args.p)
    elif args.family == "lemma3":
        grid = make_grid(1, args.J)
        f, _ = synth_lemma3(grid, args.N)
    elif args.family == "random":
        grid = make_grid(args.d, args.J)
        f = random_bandlimited(grid, args.band_cap, None, rng)
    else:
        raise ParameterError(f"unknown family {args.family!r}")
    write_field(f, args.out)
    return {"written": args.out, "d": f.grid.d, "J": f.grid.J, "real": f.real}


def cmd_transform(args) -> dict:
    if args.inverse:
        coeffs = read_coefficients(args.infile)
        f = inverse(coeffs)
        write_field(f, args.out)
        return {"written": args.out, "direction": "inverse",
                "wavelet": coeffs.spec.name or coeffs.spec.kind}
    f = read_field(args.infile)
    coeffs = forward(f, _wavelet(args.wavelet))
    write_coefficients(coeffs, args.out)
    return {"written": args.out, "direction": "forward", "wavelet": args.wavelet}


def _norm_params(args, d) -> NormParams:
    alpha = _parse_alpha(args.alpha, d)
    if args.space.startswith("Sr"):
        if args.r is None:
            raise ParameterError("mixed-weight spaces need --r")
        return NormParams(s=0.0, p=args.p, q=args.q, alpha=alpha,
                          weight_mode="mixed", r=args.r)
    return NormParams(s=args.s, p=args.p, q=args.q, alpha=alpha)


def cmd_norm(args) -> dict:
    f = read_field(args.infile)
    d = f.grid.d
    space = args.space
    if space not in SPACES:
        raise ParameterError(f"unknown space {space!r}; choose from {SPACES}")
    truncated = False
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        if space == "W":
            value = sobolev_multiplier_norm(f, args.s, _parse_alpha(args.alpha, d), args.p)
        elif space == "SrW":
            if args.r is None:
                raise ParameterError("mixed-weight spaces need --r")
            value = mixed_sobolev_norm(f, args.r, args.p)
        else:
            params = _norm_params(args, d)
            if space == "Wt":
                params = NormParams(s=args.s, p=args.p, q=2.0, alpha=params.alpha)
            flavor = "hyperbolic" if space in ("Bt", "Ft", "Wt", "SrB", "SrF") else "classical"
            kind = "besov" if space in ("B", "Bt", "SrB") else "triebel"
            if kind == "besov":
                value = besov_norm(f, params, flavor)
            else:
                value = triebel_norm(f, params, flavor)
        truncated = any(issubclass(w.category, TruncationWarning) for w in caught)
    out = {"norm": value, "space": space}
    if truncated:
        out["truncated"] = True
    return out


def cmd_seqnorm(args) -> dict:
    coeffs = read_coefficients(args.infile)
    d = coeffs.grid.d
    alpha = _parse_alpha(args.alpha, d)
    params = NormParams(s=args.s, p=args.p, q=args.q, alpha=alpha)
    if args.strict:
        if coeffs.spec.kind == "haar":
            mode = "haar-F" if args.space == "ft" else "haar-besov"
        else:
            mode = "general-F" if args.space == "ft" else "general-B"
        gate = admissibility_check(coeffs.spec, params, mode)
        if not gate.valid:
            raise AdmissibilityError(
                f"parameters outside the {mode} range: "
                + "; ".join(f"{c.name} (margin {c.margin:.3f})" for c in gate.checks if not c.ok)
            )
    if args.space == "ft":
        value = ftilde_norm(coeffs, params)
    elif args.space == "bt":
        value = btilde_norm(coeffs, params)
    else:
        raise ParameterError(f"unknown sequence space {args.space!r}")
    return {"norm": value, "space": args.space}


def cmd_detect(args) -> dict:
    if args.infile.endswith(".hwc"):
        coeffs = read_coefficients(args.infile)
    else:
        f = read_field(args.infile)
        coeffs = forward(f, _wavelet(args.wavelet))
    det = detect_anisotropy(coeffs, args.p, alpha_step=args.alpha_step,
                            j_min=args.j_min)
    return det.to_dict()


def cmd_experiment(args) -> dict:
    if args.id not in EXPERIMENTS:
        raise ParameterError(
            f"unknown experiment {args.id!r}; choose from {sorted(EXPERIMENTS)}"
        )
    kwargs = {}
    if args.config:
        with open(args.config, "r", encoding="ascii") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ParameterError("experiment config must be a JSON object")
        kwargs.update(loaded)
    if args.seed is not None:
        kwargs["seed"] = args.seed
    report = EXPERIMENTS[args.id](**kwargs)
    if args.strict and not report.passed:
        raise AdmissibilityError(f"experiment {args.id} failed its criteria")
    return report.to_dict()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hypwave",
        description="Anisotropic hyperbolic wavelet/band norms of sampled fields",
    )
    ap.add_argument("--threads", type=int, default=None,
                    help="worker cap (default: HYPWAVE_THREADS or 1)")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("synth", help="generate a field and write a .grd file")
    sp.add_argument("--family", required=True,
                    choices=("cascade", "lemma1", "lemma2", "lemma3", "random"))
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--J", type=int, required=True)
    sp.add_argument("--N", type=int, default=4)
    sp.add_argument("--s", type=float, default=0.0)
    sp.add_argument("--p", type=float, default=2.0)
    sp.add_argument("--alpha", type=str, default=None)
    sp.add_argument("--mode", choices=("deterministic", "rademacher"),
                    default="deterministic")
    sp.add_argument("--basis", default="modulated-window")
    sp.add_argument("--wavelet", default="haar")
    sp.add_argument("--band-cap", type=int, default=8)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.add_argument("--report", default=None)
    sp.set_defaults(fn=cmd_synth)

    tp = sub.add_parser("transform", help="wavelet analysis/synthesis between .grd and .hwc")
    tp.add_argument("--wavelet", default="haar")
    tp.add_argument("--inverse", action="store_true")
    tp.add_argument("--in", dest="infile", required=True)
    tp.add_argument("--out", required=True)
    tp.add_argument("--report", default=None)
    tp.set_defaults(fn=cmd_transform)

    np_ = sub.add_parser("norm", help="Fourier-side norm of a .grd field")
    np_.add_argument("--space", required=True)
    np_.add_argument("--s", type=float, default=0.0)
    np_.add_argument("--p", type=float, default=2.0)
    np_.add_argument("--q", type=float, default=2.0)
    np_.add_argument("--r", type=float, default=None)
    np_.add_argument("--alpha", type=str, default=None)
    np_.add_argument("--in", dest="infile", required=True)
    np_.add_argument("--strict", action="store_true")
    np_.add_argument("--report", default=None)
    np_.set_defaults(fn=cmd_norm)

    sq = sub.add_parser("seqnorm", help="sequence-space norm of a .hwc file")
    sq.add_argument("--space", required=True, choices=SEQ_SPACES)
    sq.add_argument("--s", type=float, default=0.0)
    sq.add_argument("--p", type=float, default=2.0)
    sq.add_argument("--q", type=float, default=2.0)
    sq.add_argument("--alpha", type=str, default=None)
    sq.add_argument("--in", dest="infile", required=True)
    sq.add_argument("--strict", action="store_true")
    sq.add_argument("--report", default=None)
    sq.set_defaults(fn=cmd_seqnorm)

    dt = sub.add_parser("detect", help="estimate (s, alpha) from coefficients")
    dt.add_argument("--in", dest="infile", required=True)
    dt.add_argument("--wavelet", default="haar")
    dt.add_argument("--p", type=float, default=2.0)
    dt.add_argument("--alpha-step", type=float, default=0.05)
    dt.add_argument("--j-min", type=int, default=2)
    dt.add_argument("--report", default=None)
    dt.set_defaults(fn=cmd_detect)

    ex = sub.add_parser("experiment", help="run a named experiment")
    ex.add_argument("--id", required=True)
    ex.add_argument("--seed", type=int, default=None)
    ex.add_argument("--config", default=None,
                    help="JSON object of keyword overrides")
    ex.add_argument("--strict", action="store_true")
    ex.add_argument("--report", default=None)
    ex.set_defaults(fn=cmd_experiment)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads is not None:
        runtime.set_max_workers(args.threads)
    try:
        payload = args.fn(args)
    except ParameterError as exc:
        print(f"hypwave: parameter error: {exc}", file=sys.stderr)
        return 2
    except FileFormatError as exc:
        print(f"hypwave: format error [{exc.code}]: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"hypwave: i/o error: {exc}", file=sys.stderr)
        return 3
    except AdmissibilityError as exc:
        print(f"hypwave: admissibility: {exc}", file=sys.stderr)
        return 4
    _emit(payload, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
