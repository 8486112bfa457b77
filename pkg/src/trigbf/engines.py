"""Bilateral filter engines.

Three routes to the same filter:

* ``bilateral_direct``: the brute-force definition, a weighted average over
  the explicit spatial window.  Slow, used as ground truth.
* ``bilateral_trig``: constant-time engine for raised-cosine range kernels.
  Writing the kernel as a sum of complex exponentials turns the shifted
  range weight into products of per-pixel cosine/sine modulations, so the
  whole filter collapses into spatial averages of a fixed set of auxiliary
  images plus a pointwise combine.  The result is exact for this kernel
  family, and every auxiliary image keeps the dynamic range of the input.
* ``bilateral_poly``: same linearization idea for even polynomial kernels.
  Needs spatial averages of the moment images f, f^2, ..., whose range grows
  like T^m, hence the internal rescale to [0, 1].

The per-pixel normalizer is guarded: where it falls below ``ETA_GUARD`` the
input pixel passes through unchanged and a diagnostics counter is bumped.
For raised cosines with ``rho*sqrt(N) >= 1`` the normalizer is provably
positive and the guard never fires.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import DimensionError, ParameterError
from .image import Image
from .kernels import PolyKernel, TrigKernel, make_taylor_kernel
from .spatial import SpatialKind, SpatialSpec, gaussian_taps, smooth_plane

ETA_GUARD = 1e-12


@dataclass
class EngineDiagnostics:
    """Counters filled in by an engine run when an instance is passed in."""

    degree: int = 0
    spatial_passes: int = 0
    guarded_pixels: int = 0
    workers: int = 1


@dataclass(frozen=True)
class AuxiliaryImages:
    """Pointwise modulations of one input plane, one set per distinct
    nonnegative frequency of a raised-cosine kernel.

    The zero frequency (present for even degrees) degenerates to the
    constant-one image, the zero image, and the input itself; only the
    nondegenerate entries need a spatial filtering pass, which is what makes
    an even degree one pass cheaper.
    """

    frequencies: np.ndarray
    pair_weights: np.ndarray
    cos_images: list = field(repr=False)
    sin_images: list = field(repr=False)
    f_cos_images: list = field(repr=False)
    f_sin_images: list = field(repr=False)


def _single_plane(img: Image) -> np.ndarray:
    if img.channels != 1:
        raise DimensionError(
            f"engine expects a single-channel image, got {img.channels} channels"
        )
    return img.plane(0)


def _result(img: Image, plane: np.ndarray) -> Image:
    return Image(img.width, img.height, 1, plane)


def _array_range_fn(range_fn):
    """Adapt a scalar range function to arrays; passes arrays through when
    the callable already handles them."""

    def call(diff: np.ndarray) -> np.ndarray:
        try:
            vals = np.asarray(range_fn(diff), dtype=np.float64)
            if vals.shape == diff.shape:
                return vals
        except (TypeError, ValueError):
            pass
        return np.frompyfunc(range_fn, 1, 1)(diff).astype(np.float64)

    return call


def _window_taps(spatial: SpatialSpec) -> np.ndarray:
    """1-D taps whose outer product is the direct engine's window.

    Box uses uniform taps; both Gaussian kinds use the truncated FIR taps,
    which keeps the direct window tap-for-tap identical to the separable
    passes of the fast engines.
    """
    if spatial.kind is SpatialKind.BOX:
        n = 2 * spatial.radius + 1
        return np.full(n, 1.0 / n)
    return gaussian_taps(spatial.sigma_s)


def _guarded_ratio(num, den, fallback, diagnostics):
    mask = den < ETA_GUARD
    guarded = int(np.count_nonzero(mask))
    out = num / np.where(mask, 1.0, den)
    if guarded:
        out = np.where(mask, fallback, out)
    if diagnostics is not None:
        diagnostics.guarded_pixels += guarded
    return out


def bilateral_direct(
    img: Image,
    spatial: SpatialSpec,
    range_fn,
    *,
    diagnostics: EngineDiagnostics | None = None,
) -> Image:
    """Reference bilateral filter by explicit window accumulation.

    ``range_fn`` maps an intensity difference to a weight and should accept
    numpy arrays (scalar-only callables are adapted automatically).  Cost
    grows with the window area; this is the oracle the fast engines are
    validated against.
    """
    plane = _single_plane(img)
    taps = _window_taps(spatial)
    r = (taps.size - 1) // 2
    h, w = plane.shape
    padded = np.pad(plane, r, mode="reflect")
    rfn = _array_range_fn(range_fn)
    num = np.zeros_like(plane)
    eta = np.zeros_like(plane)
    for dy in range(-r, r + 1):
        wy = taps[dy + r]
        rows = padded[r + dy : r + dy + h]
        for dx in range(-r, r + 1):
            weight = wy * taps[dx + r]
            nb = rows[:, r + dx : r + dx + w]
            weighted = weight * rfn(nb - plane)
            eta += weighted
            num += weighted * nb
    return _result(img, _guarded_ratio(num, eta, plane, diagnostics))


def build_auxiliary_images(plane: np.ndarray, kernel: TrigKernel) -> AuxiliaryImages:
    """Modulation images cos(nu*f), sin(nu*f), f*cos(nu*f), f*sin(nu*f) for
    each distinct nonnegative kernel frequency nu, in ascending order.

    The weight attached to a nonzero frequency is twice the matching
    binomial coefficient (its mirror frequency is folded in); the zero
    frequency keeps the central coefficient once.
    """
    n_deg = kernel.N
    freqs = []
    weights = []
    if n_deg % 2 == 0:
        freqs.append(0.0)
        weights.append(kernel.coeffs[n_deg // 2])
    for n in range(n_deg // 2 + 1, n_deg + 1):
        freqs.append((2 * n - n_deg) * kernel.omega)
        weights.append(2.0 * kernel.coeffs[n])
    cos_images = []
    sin_images = []
    f_cos_images = []
    f_sin_images = []
    # Successive frequencies differ by 2*omega, so after the first pair of
    # transcendental evaluations the rest follow by angle addition.
    if freqs and freqs[-1] != 0.0:
        step = 2.0 * kernel.omega * plane
        step_cos = np.cos(step)
        step_sin = np.sin(step)
    for j, nu in enumerate(freqs):
        if nu == 0.0:
            c = np.ones_like(plane)
            s = np.zeros_like(plane)
        elif j == 0:
            arg = nu * plane
            c = np.cos(arg)
            s = np.sin(arg)
        elif j == 1 and freqs[0] == 0.0:
            c = step_cos.copy()
            s = step_sin.copy()
        else:
            prev_c = cos_images[-1]
            prev_s = sin_images[-1]
            c = prev_c * step_cos - prev_s * step_sin
            s = prev_s * step_cos + prev_c * step_sin
        cos_images.append(c)
        sin_images.append(s)
        f_cos_images.append(plane * c)
        f_sin_images.append(plane * s)
    return AuxiliaryImages(
        frequencies=np.array(freqs),
        pair_weights=np.array(weights),
        cos_images=cos_images,
        sin_images=sin_images,
        f_cos_images=f_cos_images,
        f_sin_images=f_sin_images,
    )


def _smooth_all(tasks: list[np.ndarray], spatial: SpatialSpec, workers: int) -> list[np.ndarray]:
    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda a: smooth_plane(a, spatial), tasks))
    return [smooth_plane(a, spatial) for a in tasks]


def _check_range(plane: np.ndarray, upper: float) -> None:
    lo = float(plane.min())
    hi = float(plane.max())
    if lo < -1e-9 or hi > upper + 1e-9:
        raise ParameterError(
            f"samples in [{lo:g}, {hi:g}] exceed the declared range [0, {upper:g}]; "
            "rescale the input or raise T"
        )


def bilateral_trig(
    img: Image,
    spatial: SpatialSpec,
    kernel: TrigKernel,
    *,
    workers: int = 1,
    diagnostics: EngineDiagnostics | None = None,
) -> Image:
    """Constant-time bilateral filter with a raised-cosine range kernel.

    Filters 4 auxiliary images per nonzero frequency (2(N+1) spatial passes
    for odd degree N, one fewer for even N since the constant image needs no
    pass) and combines them pointwise in a fixed order, so the output is
    deterministic for any worker count.
    """
    plane = _single_plane(img)
    _check_range(plane, kernel.T)
    if diagnostics is not None:
        diagnostics.degree = kernel.N
        diagnostics.workers = workers
    n_deg = kernel.N
    pairs = []
    if n_deg % 2 == 0:
        pairs.append((0.0, float(kernel.coeffs[n_deg // 2])))
    for n in range(n_deg // 2 + 1, n_deg + 1):
        pairs.append(((2 * n - n_deg) * kernel.omega, 2.0 * float(kernel.coeffs[n])))
    num = np.zeros_like(plane)
    den = np.zeros_like(plane)
    passes = 0
    # Stream one frequency at a time: the modulation images of successive
    # frequencies follow by angle addition, so only the previous pair is
    # kept and the working set stays a handful of planes even for large N.
    step_cos = step_sin = None
    prev_cos = prev_sin = None
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for j, (nu, wgt) in enumerate(pairs):
            if nu == 0.0:
                # The filtered constant-one image is exactly one (unit DC
                # gain), so only the input itself needs a pass here.
                num += wgt * smooth_plane(plane, spatial)
                den += wgt
                passes += 1
                continue
            if step_cos is None:
                arg = 2.0 * kernel.omega * plane
                step_cos = np.cos(arg)
                step_sin = np.sin(arg)
            if prev_cos is None:
                if j == 0:
                    arg = nu * plane
                    cos_img = np.cos(arg)
                    sin_img = np.sin(arg)
                else:
                    cos_img = step_cos.copy()
                    sin_img = step_sin.copy()
            else:
                cos_img = prev_cos * step_cos - prev_sin * step_sin
                sin_img = prev_sin * step_cos + prev_cos * step_sin
            batch = [cos_img, sin_img, plane * cos_img, plane * sin_img]
            if pool is not None:
                cos_bar, sin_bar, f_cos_bar, f_sin_bar = pool.map(
                    lambda a: smooth_plane(a, spatial), batch
                )
            else:
                cos_bar, sin_bar, f_cos_bar, f_sin_bar = [
                    smooth_plane(a, spatial) for a in batch
                ]
            passes += 4
            num += wgt * (cos_img * f_cos_bar + sin_img * f_sin_bar)
            den += wgt * (cos_img * cos_bar + sin_img * sin_bar)
            prev_cos = cos_img
            prev_sin = sin_img
    finally:
        if pool is not None:
            pool.shutdown()
    if diagnostics is not None:
        diagnostics.spatial_passes += passes
    return _result(img, _guarded_ratio(num, den, plane, diagnostics))


def bilateral_poly(
    img: Image,
    spatial: SpatialSpec,
    poly: PolyKernel,
    *,
    workers: int = 1,
    diagnostics: EngineDiagnostics | None = None,
) -> Image:
    """Constant-time bilateral filter with an even polynomial range kernel.

    Expands the shifted polynomial binomially, which needs spatial averages
    of the moment images f^1 .. f^(2K-1) for K polynomial terms.  Intensities
    are rescaled to [-1, 1] first so high moments stay well conditioned, and
    pixels whose normalizer is not safely positive (the polynomial may go
    negative) pass through unchanged.
    """
    plane = _single_plane(img)
    k_terms = poly.terms
    if diagnostics is not None:
        diagnostics.degree = 2 * (k_terms - 1)
        diagnostics.workers = workers
    scale = float(np.max(np.abs(plane)))
    if scale == 0.0:
        scale = 1.0
    u = plane / scale
    scaled = make_taylor_kernel(poly.sigma / scale, k_terms)
    tasks = [u**m for m in range(1, 2 * k_terms)]
    filtered = _smooth_all(tasks, spatial, workers)
    if diagnostics is not None:
        diagnostics.spatial_passes += len(tasks)
    moments = [np.ones_like(u)] + filtered
    neg_u_pow = [(-u) ** p for p in range(2 * k_terms - 1)]
    num = np.zeros_like(u)
    den = np.zeros_like(u)
    for k in range(k_terms):
        bk = scaled.coeffs_even[k]
        for m in range(2 * k + 1):
            c = bk * comb(2 * k, m)
            t = c * neg_u_pow[2 * k - m]
            den += t * moments[m]
            num += t * moments[m + 1]
    out = _guarded_ratio(scale * num, den, plane, diagnostics)
    return _result(img, out)


def bilateral_color(img: Image, engine, workers: int = 1) -> Image:
    """Apply a single-channel engine to each channel of a color image.

    ``engine`` maps a 1-channel Image to a 1-channel Image; channels are
    processed independently (optionally in parallel) and reassembled.
    """
    if img.channels != 3:
        raise DimensionError(f"expected a 3-channel image, got {img.channels}")
    chans = [img.channel(c) for c in range(3)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(engine, chans))
    else:
        results = [engine(ch) for ch in chans]
    stacked = np.stack([r.plane(0) for r in results])
    return Image(img.width, img.height, 3, stacked)
