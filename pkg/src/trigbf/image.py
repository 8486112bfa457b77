"""Planar floating-point image container and difference statistics.

Images are stored as double-precision planes, one per channel, so that each
channel can be filtered independently through a plain 2-D array view.  All
public operations treat images as immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError


@dataclass(frozen=True)
class Image:
    """A width x height raster with 1 or 3 channels.

    ``samples`` has shape ``(channels, height, width)`` in float64 and is laid
    out planar (channel after channel).  Input images are expected to carry
    intensities in ``[0, T]``; intermediates produced by the engines are
    unrestricted but always finite.
    """

    width: int
    height: int
    channels: int
    samples: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise DimensionError(
                f"image dimensions must be positive, got {self.width}x{self.height}"
            )
        if self.channels not in (1, 3):
            raise DimensionError(f"channels must be 1 or 3, got {self.channels}")
        arr = np.ascontiguousarray(self.samples, dtype=np.float64)
        expected = (self.channels, self.height, self.width)
        if arr.size != self.width * self.height * self.channels:
            raise DimensionError(
                f"sample count {arr.size} does not match "
                f"{self.width}x{self.height}x{self.channels}"
            )
        arr = arr.reshape(expected)
        if not np.all(np.isfinite(arr)):
            raise ParameterError("image samples must be finite")
        object.__setattr__(self, "samples", arr)

    def plane(self, c: int) -> np.ndarray:
        """2-D float64 view of channel ``c`` (shape height x width)."""
        return self.samples[c]

    def channel(self, c: int) -> "Image":
        """Single-channel image holding a copy of channel ``c``."""
        return Image(self.width, self.height, 1, self.samples[c].copy())


def image_from_planes(planes: list[np.ndarray]) -> Image:
    """Assemble an Image from equally shaped 2-D channel arrays."""
    if len(planes) not in (1, 3):
        raise DimensionError(f"expected 1 or 3 planes, got {len(planes)}")
    h, w = planes[0].shape
    stacked = np.stack([np.asarray(p, dtype=np.float64) for p in planes])
    return Image(w, h, len(planes), stacked)


def image_from_bytes(data, width: int, height: int, channels: int) -> Image:
    """Build an image from planar 8-bit samples.

    Each byte maps to the float of the same value, so the result lies in
    ``[0, 255]``.
    """
    buf = np.frombuffer(bytes(data), dtype=np.uint8)
    if width < 1 or height < 1:
        raise DimensionError(
            f"image dimensions must be positive, got {width}x{height}"
        )
    if buf.size != width * height * channels:
        raise DimensionError(
            f"byte count {buf.size} does not match {width}x{height}x{channels}"
        )
    return Image(width, height, channels, buf.astype(np.float64))


def image_to_bytes(img: Image) -> bytes:
    """Quantize to planar 8-bit: round half away from zero, clamp to [0, 255]."""
    s = img.samples
    rounded = np.where(s >= 0.0, np.floor(s + 0.5), np.ceil(s - 0.5))
    return np.clip(rounded, 0.0, 255.0).astype(np.uint8).tobytes()


@dataclass(frozen=True)
class ErrorStats:
    """Pixel-wise difference statistics between two images.

    ``std_dev`` is the population standard deviation of the signed error.
    """

    max_abs: float
    mean_abs: float
    std_dev: float


def error_stats(a: Image, b: Image) -> ErrorStats:
    """Statistics of ``a - b`` over all samples of all channels."""
    if (a.width, a.height, a.channels) != (b.width, b.height, b.channels):
        raise DimensionError(
            f"image shapes differ: {a.width}x{a.height}x{a.channels} vs "
            f"{b.width}x{b.height}x{b.channels}"
        )
    diff = a.samples - b.samples
    return ErrorStats(
        max_abs=float(np.max(np.abs(diff))),
        mean_abs=float(np.mean(np.abs(diff))),
        std_dev=float(np.std(diff)),
    )
