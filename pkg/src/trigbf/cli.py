"""Command-line front end.

Subcommands:

* ``filter``   read a PNM image, run one engine, write the filtered PNM;
* ``compare``  run the fast engines against the brute-force reference with a
  Gaussian range kernel and report error statistics;
* ``bench``    wall-time grids on a synthetic (or given) image, CSV output;
* ``kernel``   sample the range-kernel curves to CSV.

Exit codes: 0 success, 1 usage error or failed comparison, 2 I/O or parse
error.  Output files are written via a temporary file and renamed, so a
failing run never leaves a partial image behind.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
import tempfile
import time

from ._backend import backend_name
from .bench import median_ms, synthesize_noise
from .engines import (
    EngineDiagnostics,
    bilateral_color,
    bilateral_direct,
    bilateral_poly,
    bilateral_trig,
)
from .errors import ParameterError, PnmParseError, TrigbfError
from .image import Image, error_stats
from .kernels import (
    export_kernel_csv,
    gaussian_eval,
    make_taylor_kernel,
    make_trig_kernel,
    trig_eval,
)
from .pnm import read_pnm, write_pnm
from .spatial import SpatialKind, SpatialSpec

USAGE_ERROR = 1
IO_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _spatial_from(args) -> SpatialSpec:
    kind = SpatialKind(args.spatial)
    if kind is SpatialKind.BOX:
        # A box of comparable support to a Gaussian of the requested width.
        return SpatialSpec.box(max(1, round(args.sigma_s)))
    return SpatialSpec(kind, sigma_s=args.sigma_s)


def _load_image(path: str) -> Image:
    with open(path, "rb") as fh:
        return read_pnm(fh.read())


def _write_atomic(path: str, payload: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".trigbf-", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _open_csv_target(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return io.StringIO(), True


def _finish_csv(path: str | None, target, needs_write: bool) -> None:
    if needs_write:
        _write_atomic(path, target.getvalue().encode("ascii"))


def _single_channel_engine(args, trig_kernel, poly_kernel, spatial, diagnostics):
    def run(channel: Image) -> Image:
        if args.engine == "trig":
            return bilateral_trig(
                channel, spatial, trig_kernel, workers=args.threads, diagnostics=diagnostics
            )
        if args.engine == "poly":
            return bilateral_poly(
                channel, spatial, poly_kernel, workers=args.threads, diagnostics=diagnostics
            )
        return bilateral_direct(
            channel,
            spatial,
            lambda s: gaussian_eval(args.sigma_r, s),
            diagnostics=diagnostics,
        )

    return run


def cmd_filter(args) -> int:
    img = _load_image(args.input)
    spatial = _spatial_from(args)
    trig_kernel = make_trig_kernel(args.sigma_r, args.range_max, degree=args.degree)
    terms = args.terms if args.terms else trig_kernel.N // 2 + 1
    poly_kernel = make_taylor_kernel(args.sigma_r, terms)
    diag = EngineDiagnostics()
    engine = _single_channel_engine(args, trig_kernel, poly_kernel, spatial, diag)
    t0 = time.perf_counter()
    if img.channels == 3:
        out = bilateral_color(img, engine)
    else:
        out = engine(img)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    _write_atomic(args.output, write_pnm(out))
    print(
        f"engine={args.engine} N={diag.degree} passes={diag.spatial_passes} "
        f"guarded={diag.guarded_pixels} threads={args.threads} "
        f"backend={backend_name()} time_ms={elapsed_ms:.1f}"
    )
    return 0


def cmd_compare(args) -> int:
    img = _load_image(args.input)
    if img.channels != 1:
        print("compare works on single-channel images", file=sys.stderr)
        return USAGE_ERROR
    spatial = _spatial_from(args)
    trig_kernel = make_trig_kernel(args.sigma_r, args.range_max, degree=args.degree)
    terms = args.terms if args.terms else trig_kernel.N // 2 + 1
    poly_kernel = make_taylor_kernel(args.sigma_r, terms)
    if args.reference_range == "cosine":
        # Exactness mode: same raised cosine in the reference, so the trig
        # engine must match it to rounding error.
        range_fn = lambda s: trig_eval(trig_kernel, s)  # noqa: E731
    else:
        range_fn = lambda s: gaussian_eval(args.sigma_r, s)  # noqa: E731
    reference = bilateral_direct(img, spatial, range_fn)
    trig_out = bilateral_trig(img, spatial, trig_kernel, workers=args.threads)
    poly_out = bilateral_poly(img, spatial, poly_kernel, workers=args.threads)
    trig_stats = error_stats(trig_out, reference)
    poly_stats = error_stats(poly_out, reference)
    print(
        f"trig  N={trig_kernel.N} vs direct: max_abs={trig_stats.max_abs:.4f} "
        f"mean_abs={trig_stats.mean_abs:.4f} std_dev={trig_stats.std_dev:.4f}"
    )
    print(
        f"poly  terms={terms} vs direct: max_abs={poly_stats.max_abs:.4f} "
        f"mean_abs={poly_stats.mean_abs:.4f} std_dev={poly_stats.std_dev:.4f}"
    )
    if trig_stats.std_dev <= poly_stats.std_dev:
        print("ordering: trig <= poly (ok)")
        return 0
    print("ordering violated: trig std_dev exceeds poly std_dev", file=sys.stderr)
    return USAGE_ERROR


def _bench_rows(args):
    if args.input:
        img = _load_image(args.input)
        if img.channels == 3:
            img = img.channel(0)
    else:
        img = synthesize_noise()
    rows = []
    if args.engine == "trig":
        spatial_kind = SpatialKind(args.spatial)
        sigma_r_grid = [10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0]
        for sigma_s in (10.0, 100.0):
            spatial = SpatialSpec(spatial_kind, sigma_s=sigma_s, radius=round(sigma_s))
            for sigma_r in sigma_r_grid:
                kernel = make_trig_kernel(sigma_r, args.range_max, degree=args.degree)
                ms = median_ms(
                    lambda: bilateral_trig(img, spatial, kernel, workers=args.threads),
                    args.reps,
                )
                rows.append((sigma_s, sigma_r, kernel.N, "trig", ms))
    elif args.engine == "poly":
        for sigma_s in (10.0, 100.0):
            spatial = SpatialSpec(SpatialKind(args.spatial), sigma_s=sigma_s, radius=round(sigma_s))
            for sigma_r in (40.0, 80.0):
                kernel = make_trig_kernel(sigma_r, args.range_max, degree=args.degree)
                terms = args.terms if args.terms else kernel.N // 2 + 1
                poly = make_taylor_kernel(sigma_r, terms)
                ms = median_ms(
                    lambda: bilateral_poly(img, spatial, poly, workers=args.threads),
                    args.reps,
                )
                rows.append((sigma_s, sigma_r, 2 * (terms - 1), "poly", ms))
    else:
        sigma_r = args.sigma_r
        range_fn = lambda s: gaussian_eval(sigma_r, s)  # noqa: E731
        for sigma_s in (3.0, 5.0, 10.0):
            spatial = SpatialSpec.gaussian_fir(sigma_s)
            ms = median_ms(lambda: bilateral_direct(img, spatial, range_fn), args.reps)
            rows.append((sigma_s, sigma_r, 0, "direct", ms))
    return rows


def cmd_bench(args) -> int:
    rows = _bench_rows(args)
    target, needs_write = _open_csv_target(args.csv)
    print("sigma_s,sigma_r,N,engine,median_ms", file=target)
    for sigma_s, sigma_r, n_deg, engine, ms in rows:
        print(f"{sigma_s:g},{sigma_r:g},{n_deg},{engine},{ms:.3f}", file=target)
    _finish_csv(args.csv, target, needs_write)
    print(
        f"bench done: engine={args.engine} reps={args.reps} threads={args.threads} "
        f"backend={backend_name()}",
        file=sys.stderr,
    )
    return 0


def cmd_kernel(args) -> int:
    target, needs_write = _open_csv_target(args.csv)
    export_kernel_csv(
        target,
        args.sigma_r,
        args.range_max,
        degree=args.degree,
        terms=args.terms,
        points=args.points,
        family_degrees=(1, 2, 3, 4, 5),
    )
    _finish_csv(args.csv, target, needs_write)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trigbf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input: bool):
        if needs_input:
            p.add_argument("input", help="input PNM image (binary PGM or PPM)")
        p.add_argument("--sigma-s", type=float, default=15.0, dest="sigma_s")
        p.add_argument("--sigma-r", type=float, default=80.0, dest="sigma_r")
        p.add_argument("--range-max", type=float, default=255.0, dest="range_max",
                       help="intensity bound T (default 255)")
        p.add_argument("--spatial", choices=[k.value for k in SpatialKind],
                       default="gauss-recursive")
        p.add_argument("--degree", type=int, default=None,
                       help="override the raised-cosine degree")
        p.add_argument("--terms", type=int, default=None,
                       help="polynomial term count (default: matched to the degree)")
        p.add_argument("--threads", type=int, default=1)

    p_filter = sub.add_parser("filter", help="filter one image")
    common(p_filter, needs_input=True)
    p_filter.add_argument("--engine", choices=["direct", "trig", "poly"], default="trig")
    p_filter.add_argument("--output", required=True)
    p_filter.set_defaults(func=cmd_filter)

    p_compare = sub.add_parser("compare", help="fast engines vs the direct reference")
    common(p_compare, needs_input=True)
    p_compare.add_argument("--reference-range", choices=["gaussian", "cosine"],
                           default="gaussian", dest="reference_range",
                           help="range kernel of the direct reference")
    p_compare.set_defaults(func=cmd_compare)

    p_bench = sub.add_parser("bench", help="wall-time scaling grid")
    common(p_bench, needs_input=False)
    p_bench.add_argument("input", nargs="?", default=None,
                         help="optional PNM input (default: synthetic 720x540 noise)")
    p_bench.add_argument("--engine", choices=["direct", "trig", "poly"], default="trig")
    p_bench.add_argument("--reps", type=int, default=5)
    p_bench.add_argument("--csv", default=None, help="CSV path (default stdout)")
    p_bench.set_defaults(func=cmd_bench)

    p_kernel = sub.add_parser("kernel", help="export kernel curves as CSV")
    common(p_kernel, needs_input=False)
    p_kernel.add_argument("--points", type=int, default=1001)
    p_kernel.add_argument("--csv", default=None, help="CSV path (default stdout)")
    p_kernel.set_defaults(func=cmd_kernel)
    return parser


def _validate(args) -> None:
    if getattr(args, "sigma_r", 1.0) <= 0.0:
        raise ParameterError("--sigma-r must be positive")
    if getattr(args, "sigma_s", 1.0) <= 0.0:
        raise ParameterError("--sigma-s must be positive")
    if getattr(args, "range_max", 1.0) <= 0.0:
        raise ParameterError("--range-max must be positive")
    if getattr(args, "reps", 1) < 1:
        raise ParameterError("--reps must be >= 1")
    if getattr(args, "threads", 1) < 1:
        raise ParameterError("--threads must be >= 1")
    terms = getattr(args, "terms", None)
    if terms is not None and terms < 1:
        raise ParameterError("--terms must be >= 1")
    degree = getattr(args, "degree", None)
    if degree is not None and degree < 0:
        raise ParameterError("--degree must be >= 0")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _validate(args)
    except ParameterError as exc:
        print(f"trigbf: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        return args.func(args)
    except (OSError, PnmParseError) as exc:
        print(f"trigbf: error: {exc}", file=sys.stderr)
        return IO_ERROR
    except TrigbfError as exc:
        print(f"trigbf: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
