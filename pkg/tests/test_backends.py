"""Parity between the compiled kernel core and the NumPy fallback."""

import os
import subprocess
import sys

import numpy as np
import pytest

from trigbf import _backend, _fallback
from trigbf.spatial import recursive_coeffs

compiled = pytest.mark.skipif(
    not _backend.compiled_available(), reason="compiled core not built"
)


@compiled
class TestParity:
    def test_box_pass(self):
        from trigbf import _core

        rng = np.random.default_rng(30)
        for _ in range(20):
            h, w = int(rng.integers(1, 40)), int(rng.integers(1, 40))
            a = rng.uniform(0, 255, (h, w))
            for radius in (0, 1, 3, 11, w + 3):
                got = _core.box_pass(a, radius)
                want = _fallback.box_pass(a, radius)
                assert np.max(np.abs(got - want)) < 1e-10

    def test_recursive_smooth(self):
        from trigbf import _core

        rng = np.random.default_rng(31)
        for sigma in (0.5, 2.0, 7.5, 30.0):
            taps = recursive_coeffs(sigma)
            for _ in range(5):
                h, w = int(rng.integers(1, 50)), int(rng.integers(1, 50))
                a = rng.uniform(0, 255, (h, w))
                got = _core.recursive_smooth(a, *taps, h - 1)
                want = _fallback.recursive_smooth(a, *taps, h - 1)
                assert np.max(np.abs(got - want)) < 1e-10

    def test_compiled_preferred_unless_overridden(self):
        if os.environ.get("TRIGBF_BACKEND", "").strip().lower() in ("python", "fallback", "numpy"):
            assert _backend.backend_name() == "python"
        else:
            assert _backend.backend_name() == "compiled"


class TestFallbackOracle:
    """The fallback must satisfy the brute-force contracts on its own."""

    def test_box_against_padded_reference(self):
        rng = np.random.default_rng(32)
        a = rng.uniform(0, 255, (9, 13))
        for radius in (1, 4, 14):
            padded = np.pad(a, ((0, 0), (radius, radius)), mode="reflect")
            want = np.stack(
                [
                    np.convolve(row, np.ones(2 * radius + 1) / (2 * radius + 1), "valid")
                    for row in padded
                ]
            )
            got = _fallback.box_pass(a, radius)
            assert np.max(np.abs(got - want)) < 1e-10

    def test_recursive_constant_preserved(self):
        taps = recursive_coeffs(4.0)
        a = np.full((6, 20), 123.0)
        out = _fallback.recursive_smooth(a, *taps, 5)
        assert np.max(np.abs(out - 123.0)) < 1e-9


class TestBackendSelection:
    def _backend_name_with_env(self, value):
        env = dict(os.environ, TRIGBF_BACKEND=value)
        env["PYTHONPATH"] = os.pathsep.join(sys.path)
        return subprocess.run(
            [sys.executable, "-c", "import trigbf; print(trigbf.backend_name())"],
            capture_output=True,
            text=True,
            env=env,
        )

    def test_forced_python(self):
        proc = self._backend_name_with_env("python")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "python"

    def test_unknown_value_rejected(self):
        proc = self._backend_name_with_env("gpu")
        assert proc.returncode != 0

    @compiled
    def test_forced_compiled(self):
        proc = self._backend_name_with_env("compiled")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "compiled"
