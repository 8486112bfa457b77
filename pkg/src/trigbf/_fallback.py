"""NumPy implementations of the hot per-pixel kernels.

These are the pure-Python twins of the compiled routines in ``_core``; the
active implementation is chosen at import time by ``_backend``.
"""

import numpy as np


def _mirror(i: int, n: int) -> int:
    # Whole-sample reflection, identical to numpy's "reflect" padding.
    if n == 1:
        return 0
    period = 2 * (n - 1)
    i %= period
    if i < 0:
        i += period
    return period - i if i >= n else i


def box_pass(a: np.ndarray, radius: int) -> np.ndarray:
    """Normalized running-sum box average with mirror boundary, along the
    last axis.

    Sums accumulate in extended precision: the bilateral engines divide by
    these averages, so drift in the running sums would be amplified wherever
    the normalizer is small.
    """
    if radius == 0:
        return a.copy()
    h, w = a.shape
    win = 2 * radius + 1
    padded = np.pad(a, ((0, 0), (radius, radius)), mode="reflect")
    csum = np.empty((h, w + 2 * radius + 1), dtype=np.longdouble)
    csum[:, 0] = 0.0
    np.cumsum(padded, axis=1, dtype=np.longdouble, out=csum[:, 1:])
    return np.asarray((csum[:, win:] - csum[:, :w]) / win, dtype=np.float64)


def recursive_smooth(
    a: np.ndarray,
    scale: float,
    c1: float,
    c2: float,
    c3: float,
    c4: float,
    pad: int,
) -> np.ndarray:
    """Fourth-order forward/backward recursion along axis 0 with a mirrored
    extension of ``pad`` rows on each side and replicate start-up beyond it.

    Scratch rows 0..3 hold the forward start-up state and the last four the
    backward one, so both sweeps are uniform row operations (vectorized
    across columns).
    """
    h, w = a.shape
    ext = h + 2 * pad
    s = np.empty((ext + 8, w), dtype=np.float64)
    s[0:4] = a[_mirror(-pad, h)]
    for r in range(ext):
        src = _mirror(r - pad, h)
        s[r + 4] = (
            scale * a[src]
            + c1 * s[r + 3]
            + c2 * s[r + 2]
            + c3 * s[r + 1]
            + c4 * s[r]
        )
    s[ext + 4 :] = s[ext + 3]
    for r in range(ext - 1, -1, -1):
        s[r + 4] = (
            scale * s[r + 4]
            + c1 * s[r + 5]
            + c2 * s[r + 6]
            + c3 * s[r + 7]
            + c4 * s[r + 8]
        )
    return s[pad + 4 : pad + 4 + h].copy()
