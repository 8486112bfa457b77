"""Binary PNM (PGM/PPM) reading and writing, 8-bit only.

The header grammar is the usual one: magic, width, height, maxval as
whitespace-separated tokens, '#' comments running to end of line, then a
single whitespace byte followed by the raw payload.  Only maxval 255 is
accepted.  Writers emit the canonical header ``P5\\n<w> <h>\\n255\\n``.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, PnmParseError
from .image import Image, image_to_bytes

_WHITESPACE = b" \t\n\r\x0b\x0c"


class _Scanner:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _skip_separators(self) -> None:
        data = self.data
        n = len(data)
        while self.pos < n:
            b = data[self.pos : self.pos + 1]
            if b in (b"#",):
                nl = data.find(b"\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            elif b in _WHITESPACE and b:
                self.pos += 1
            else:
                return

    def token(self, what: str) -> tuple[bytes, int]:
        self._skip_separators()
        start = self.pos
        if start >= len(self.data):
            raise PnmParseError(f"missing {what}", start)
        end = start
        data = self.data
        while end < len(data) and data[end : end + 1] not in _WHITESPACE:
            end += 1
        self.pos = end
        return data[start:end], start

    def int_token(self, what: str) -> tuple[int, int]:
        tok, off = self.token(what)
        try:
            return int(tok), off
        except ValueError:
            raise PnmParseError(f"{what} is not an integer: {tok!r}", off) from None


def read_pnm(data: bytes) -> Image:
    """Parse binary PGM (P5) or PPM (P6) bytes into an Image."""
    scan = _Scanner(bytes(data))
    magic, off = scan.token("magic number")
    if magic == b"P5":
        channels = 1
    elif magic == b"P6":
        channels = 3
    else:
        raise PnmParseError(f"unsupported magic {magic!r}, expected P5 or P6", off)
    width, off = scan.int_token("width")
    if width < 1:
        raise PnmParseError(f"width must be positive, got {width}", off)
    height, off = scan.int_token("height")
    if height < 1:
        raise PnmParseError(f"height must be positive, got {height}", off)
    maxval, off = scan.int_token("maxval")
    if maxval != 255:
        raise PnmParseError(f"only maxval 255 is supported, got {maxval}", off)
    if scan.pos >= len(scan.data) or scan.data[scan.pos : scan.pos + 1] not in _WHITESPACE:
        raise PnmParseError("expected single whitespace before payload", scan.pos)
    start = scan.pos + 1
    expected = width * height * channels
    payload = scan.data[start : start + expected]
    if len(payload) != expected:
        raise PnmParseError(
            f"payload truncated: expected {expected} bytes, got {len(payload)}",
            start + len(payload),
        )
    arr = np.frombuffer(payload, dtype=np.uint8).astype(np.float64)
    if channels == 1:
        planes = arr.reshape(1, height, width)
    else:
        # Interleaved RGB triples to planar channels.
        planes = arr.reshape(height, width, 3).transpose(2, 0, 1)
    return Image(width, height, channels, planes)


def write_pnm(img: Image) -> bytes:
    """Serialize an Image as binary PGM/PPM with maxval 255."""
    if img.channels == 1:
        magic = b"P5"
    elif img.channels == 3:
        magic = b"P6"
    else:
        raise DimensionError(f"PNM supports 1 or 3 channels, got {img.channels}")
    header = magic + b"\n%d %d\n255\n" % (img.width, img.height)
    quantized = np.frombuffer(image_to_bytes(img), dtype=np.uint8)
    if img.channels == 3:
        quantized = (
            quantized.reshape(3, img.height, img.width).transpose(1, 2, 0).ravel()
        )
    return header + quantized.tobytes()
