"""Timing helpers shared by the CLI benchmark and the scaling tests."""

from __future__ import annotations

import time
from statistics import median

import numpy as np

from .image import Image

NOISE_SEED = 20260515


def synthesize_noise(width: int = 720, height: int = 540, seed: int = NOISE_SEED) -> Image:
    """Byte-valued uniform noise image with a fixed seed, so benchmarks run
    without any assets."""
    rng = np.random.default_rng(seed)
    samples = rng.integers(0, 256, size=(1, height, width)).astype(np.float64)
    return Image(width, height, 1, samples)


def median_ms(fn, reps: int = 5) -> float:
    """Median wall time of ``fn()`` over ``reps`` runs, in milliseconds."""
    times = []
    for _ in range(max(1, reps)):
        t0 = time.perf_counter()
        fn()
        times.append((time.perf_counter() - t0) * 1000.0)
    return float(median(times))
