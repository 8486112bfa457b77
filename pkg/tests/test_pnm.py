"""Binary PGM/PPM parsing and serialization."""

import numpy as np
import pytest

from trigbf import DimensionError, Image, PnmParseError, read_pnm, write_pnm


class TestRead:
    def test_minimal_pgm(self):
        img = read_pnm(b"P5 2 1 255 " + bytes([0, 255]))
        assert (img.width, img.height, img.channels) == (2, 1, 1)
        assert img.samples.ravel().tolist() == [0.0, 255.0]

    def test_minimal_ppm_planar(self):
        img = read_pnm(b"P6 1 1 255\n" + bytes([10, 20, 30]))
        assert img.channels == 3
        assert img.samples.ravel().tolist() == [10.0, 20.0, 30.0]

    def test_comments_in_header(self):
        data = b"P5\n# a comment\n2 # inline\n2\n# another\n255\n" + bytes(4)
        img = read_pnm(data)
        assert (img.width, img.height) == (2, 2)

    def test_truncated_payload(self):
        with pytest.raises(PnmParseError) as exc:
            read_pnm(b"P5 2 2 255\n" + bytes(3))
        assert "expected 4" in str(exc.value)
        assert "got 3" in str(exc.value)
        assert exc.value.offset > 0

    def test_bad_magic(self):
        with pytest.raises(PnmParseError) as exc:
            read_pnm(b"P3 1 1 255\n\x00")
        assert exc.value.offset == 0

    def test_wrong_maxval(self):
        with pytest.raises(PnmParseError):
            read_pnm(b"P5 1 1 65535\n\x00\x00")

    def test_nonpositive_dimensions(self):
        with pytest.raises(PnmParseError):
            read_pnm(b"P5 0 1 255\n")

    def test_non_integer_field(self):
        with pytest.raises(PnmParseError):
            read_pnm(b"P5 two 1 255\n\x00\x00")

    def test_missing_header_field(self):
        with pytest.raises(PnmParseError):
            read_pnm(b"P5 2")


class TestWrite:
    def test_gray_starts_with_p5(self):
        img = Image(2, 1, 1, np.array([1.0, 2.0]))
        assert write_pnm(img).startswith(b"P5\n2 1\n255\n")

    def test_color_interleaved_payload(self):
        img = Image(2, 1, 3, np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]))
        data = write_pnm(img)
        assert data.startswith(b"P6\n")
        assert data[-6:] == bytes([1, 3, 5, 2, 4, 6])

    def test_unsupported_channels_at_construction(self):
        with pytest.raises(DimensionError):
            Image(1, 1, 2, np.zeros(2))


class TestRoundTrip:
    def test_write_read_identity(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            w, h = int(rng.integers(1, 12)), int(rng.integers(1, 12))
            ch = int(rng.choice([1, 3]))
            img = Image(w, h, ch, rng.integers(0, 256, (ch, h, w)).astype(float))
            back = read_pnm(write_pnm(img))
            assert np.array_equal(back.samples, img.samples)

    def test_read_write_read_idempotent(self):
        # Odd whitespace and comments canonicalize on the first read.
        data = b"P5\n#x\n 3  2\t255\n" + bytes(range(6))
        once = read_pnm(data)
        twice = read_pnm(write_pnm(once))
        assert np.array_equal(once.samples, twice.samples)
        assert write_pnm(once) == write_pnm(twice)
