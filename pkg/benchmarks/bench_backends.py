"""Compare the compiled kernel core against the NumPy fallback.

Usage:

    python benchmarks/bench_backends.py [--size WxH] [--reps N]

Times the two hot kernels (box running sum, recursive Gaussian pass) and a
full bilateral run on each backend, printing a table of medians and the
speedup.  Requires the compiled core (`python setup.py build_ext --inplace`);
without it only the fallback column is shown.
"""

import argparse
import statistics
import sys
import time

import numpy as np

from trigbf import _backend, _fallback
from trigbf.bench import synthesize_noise
from trigbf.engines import bilateral_trig
from trigbf.kernels import make_trig_kernel
from trigbf.spatial import SpatialSpec, recursive_coeffs


def median_time(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def kernel_cases(width, height):
    rng = np.random.default_rng(0)
    plane = rng.uniform(0.0, 255.0, (height, width))
    taps = recursive_coeffs(10.0)
    return [
        ("box radius 3", lambda mod: mod.box_pass(plane, 3)),
        ("box radius 50", lambda mod: mod.box_pass(plane, 50)),
        (
            "recursive sigma 10",
            lambda mod: mod.recursive_smooth(plane, *taps, height - 1),
        ),
    ]


def engine_case(width, height):
    img = synthesize_noise(width, height)
    spec = SpatialSpec.gaussian_recursive(10.0)
    kernel = make_trig_kernel(80.0, 255.0)
    return "bilateral trig sigma_r 80", lambda: bilateral_trig(img, spec, kernel)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", default="720x540")
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args(argv)
    width, height = (int(v) for v in args.size.lower().split("x"))

    try:
        from trigbf import _core
    except ImportError:
        _core = None

    print(f"image {width}x{height}, reps {args.reps}, "
          f"active backend: {_backend.backend_name()}")
    header = f"{'kernel':28s} {'fallback':>12s} {'compiled':>12s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, call in kernel_cases(width, height):
        t_py = median_time(lambda: call(_fallback), args.reps)
        if _core is not None:
            t_c = median_time(lambda: call(_core), args.reps)
            print(f"{name:28s} {t_py * 1e3:10.2f}ms {t_c * 1e3:10.2f}ms "
                  f"{t_py / t_c:7.1f}x")
        else:
            print(f"{name:28s} {t_py * 1e3:10.2f}ms {'n/a':>12s}")

    # Full-engine comparison needs a backend switch, which happens at import
    # time; run each side in the current process only if it matches, else
    # report how to measure it.
    name, run = engine_case(width, height)
    t_active = median_time(run, args.reps)
    print(f"{name:28s} {'':12s} {t_active * 1e3:10.2f}ms  "
          f"[{_backend.backend_name()}]")
    if _core is None:
        print("compiled core missing; build it with "
              "`python setup.py build_ext --inplace`", file=sys.stderr)
    else:
        print("re-run with TRIGBF_BACKEND=python to time the full engine "
              "on the fallback")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
