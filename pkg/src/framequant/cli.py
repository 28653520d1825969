"""Command-line front end.

Exit codes: 0 success, 1 invariant failure, 2 usage or spec error,
3 eigenvectors could not be ordered (degenerate spectrum).

Examples::

    framequant verify --dims 3,5,7 --out report.json
    framequant wigner --spec job.json --format csv --out grid.csv
    framequant quantize --spec job.json
    framequant eigen --dim 7 --alpha 0.5
    framequant channel --spec bipartite.json --input-state rho.json
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import channels, composite, states
from .coherent import coherent_frame
from .errors import InvalidFunctionError, OrderingError
from .hilbert import DEFAULT_TOL, HilbertSpace, identity
from .jobs import (
    SpecError,
    dumps,
    load_json,
    operator_from_json,
    operator_to_json,
    parse_dim,
    resolve_bipartite,
    resolve_function,
    wigner_csv,
    wigner_json,
)
from .quantize import (
    fourier_eigen_residuals,
    frac_fourier,
    harmonic_operator,
    harper_operator,
    hermite_gauss_samples,
    order_by_sign_alternations,
    quantize,
)
from .verify import run_battery

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _job(args) -> dict:
    return load_json(args.spec) if args.spec else {}


def _space(args, job) -> HilbertSpace:
    dim = args.dim if args.dim is not None else job.get("dim")
    if dim is None:
        raise SpecError("no dimension given (use --dim or 'dim' in the spec)")
    return HilbertSpace.from_dim(parse_dim(dim))


def _function_spec(job, default):
    return job.get("function", default)


def cmd_verify(args) -> int:
    if args.dims is None and args.dim is None:
        raise SpecError("give --dims (comma-separated) or --dim")
    raw = args.dims.split(",") if args.dims else [args.dim]
    dims = [parse_dim(x.strip() if isinstance(x, str) else x) for x in raw if str(x).strip()]
    if not dims:
        raise SpecError("no dimensions given")
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    report = {"dims": {}, "samples": args.samples, "seed": args.seed, "tol": tol}
    ok = True
    for d in dims:
        rep = run_battery(d, samples=args.samples, seed=args.seed, tol=tol)
        report["dims"][str(d)] = rep.as_dict()
        ok &= rep.passed
        status = "ok" if rep.passed else "FAILED: " + ", ".join(rep.failures())
        print(f"d={d}: {status}", file=sys.stderr)
    report["passed"] = ok
    _emit(dumps(report), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_wigner(args) -> int:
    job = _job(args)
    space = _space(args, job)
    f = resolve_function(_function_spec(job, {"kind": "uniform"}), space, "state")
    rho = states.density_from_function(coherent_frame(space), f)
    method = job.get("method", "direct")
    if method == "direct":
        grid = states.wigner(rho, tol=args.tol or DEFAULT_TOL)
    elif method == "theta":
        grid = states.wigner_theta_form(rho, int(job.get("theta_window", 4)))
    else:
        raise SpecError(f"unknown Wigner method {method!r}; expected 'direct' or 'theta'")
    fmt = args.format or "csv"
    _emit(wigner_csv(grid) if fmt == "csv" else dumps(wigner_json(grid)), args.out)
    return EXIT_OK


def cmd_quantize(args) -> int:
    job = _job(args)
    space = _space(args, job)
    f = resolve_function(_function_spec(job, {"kind": "uniform"}), space, "operator")
    _emit(dumps(operator_to_json(quantize(coherent_frame(space), f))), args.out)
    return EXIT_OK


def _eigen_operator(job, space):
    which = job.get("operator", "harmonic" if "function" not in job else "function")
    if which == "harmonic":
        return harmonic_operator(coherent_frame(space))
    if which == "harper":
        return harper_operator(space)
    if which == "identity":
        return identity(space)
    if which == "function":
        f = resolve_function(_function_spec(job, {"kind": "harmonic"}), space, "operator")
        return quantize(coherent_frame(space), f)
    raise SpecError(f"unknown operator {which!r}; expected harmonic, harper, identity or function")


def cmd_eigen(args) -> int:
    job = _job(args)
    space = _space(args, job)
    op = _eigen_operator(job, space)
    try:
        basis = order_by_sign_alternations(op)
    except OrderingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValueError as exc:
        # complex or non-symmetric operators, e.g. functions without k -> -k symmetry
        raise SpecError(str(exc)) from None
    res = fourier_eigen_residuals(basis)
    overlaps = [abs(complex(np.vdot(hermite_gauss_samples(space, n), psi)))
                for n, psi in enumerate(basis.vectors)]
    report = {
        "dim": space.d,
        "operator": job.get("operator", "harmonic" if "function" not in job else "function"),
        "eigenvalues": basis.eigenvalues.tolist(),
        "alternation_counts": basis.alternation_counts.tolist(),
        "fourier_residual_best": res["best"],
        "fourier_residual_best_power": res["best_power"],
        "fourier_residual_nominal": res["nominal"],
        "hermite_gauss_overlap": overlaps,
    }
    alpha = args.alpha if args.alpha is not None else job.get("alpha")
    if alpha is not None:
        report["alpha"] = float(alpha)
        report["frac_fourier"] = operator_to_json(frac_fourier(basis, float(alpha)))
    _emit(dumps(report), args.out)
    return EXIT_OK


def cmd_channel(args) -> int:
    job = _job(args)
    if args.dim is not None:
        da = db = parse_dim(args.dim)
    else:
        da = parse_dim(job.get("dim_a", job.get("dim")), "dim_a")
        db = parse_dim(job.get("dim_b", job.get("dim")), "dim_b")
    sa, sb = HilbertSpace.from_dim(da), HilbertSpace.from_dim(db)
    bspace = composite.BipartiteSpace(sa, sb)
    f = resolve_bipartite(_function_spec(job, {"kind": "uniform"}), bspace)
    norm = job.get("normalization", "trace_preserving")
    if norm not in channels.NORMALIZATIONS:
        raise SpecError(f"normalization must be one of {channels.NORMALIZATIONS}")
    ch = channels.kraus_from_function(coherent_frame(sa), coherent_frame(sb), f, norm)
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    defect = channels.completeness_defect(ch)
    report = {
        "dim_a": da,
        "dim_b": db,
        "normalization": norm,
        "kraus_count": len(ch),
        "completeness_defect": defect,
        "trace_preserving": defect < tol,
        "choi_residual": channels.choi_reconstruction_residual(ch),
    }
    if args.input_state:
        rho_in = operator_from_json(load_json(args.input_state))
        if rho_in.shape != (da, da):
            raise SpecError(f"input state must be {da}x{da}, got {rho_in.shape[0]}x{rho_in.shape[1]}")
        report["output_state"] = operator_to_json(channels.apply_channel(ch, rho_in))
    _emit(dumps(report), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=None, help="odd Hilbert-space dimension")
    common.add_argument("--spec", default=None, help="JSON job specification")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--tol", type=float, default=None, help=f"tolerance (default {DEFAULT_TOL:g})")

    ap = argparse.ArgumentParser(prog="framequant", description="Finite frame quantization toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the invariant battery")
    p.add_argument("--dims", default=None, help="comma-separated odd dimensions, e.g. 3,5,7")
    p.add_argument("--samples", type=int, default=10, help="random functions per check")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("wigner", parents=[common], help="discrete Wigner grid of rho_f")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("quantize", parents=[common], help="operator Lambda_f as JSON")
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("eigen", parents=[common], help="sign-ordered eigenbasis and fractional Fourier")
    p.add_argument("--alpha", type=float, default=None, help="export F^alpha")
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("channel", parents=[common], help="Kraus channel of a bipartite function")
    p.add_argument("--input-state", default=None, help="operator JSON to push through the channel")
    p.set_defaults(func=cmd_channel)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, InvalidFunctionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
