"""Selects the compiled kernel core when available, NumPy otherwise.

Set ``TRIGBF_BACKEND=python`` to force the NumPy fallback or
``TRIGBF_BACKEND=compiled`` to require the extension (raising if it is
missing).  The default prefers the compiled core.
"""

import os

from . import _fallback

try:
    from . import _core
except ImportError:
    _core = None


def _select():
    forced = os.environ.get("TRIGBF_BACKEND", "").strip().lower()
    if forced in ("python", "fallback", "numpy"):
        return _fallback, "python"
    if forced in ("compiled", "cython", "c"):
        if _core is None:
            raise ImportError(
                "TRIGBF_BACKEND requests the compiled core but trigbf._core is "
                "not built; run `python setup.py build_ext --inplace`"
            )
        return _core, "compiled"
    if forced:
        raise ImportError(f"unknown TRIGBF_BACKEND value: {forced!r}")
    if _core is not None:
        return _core, "compiled"
    return _fallback, "python"


_impl, _name = _select()

box_pass = _impl.box_pass
recursive_smooth = _impl.recursive_smooth


def backend_name() -> str:
    """Name of the active kernel backend: "compiled" or "python"."""
    return _name


def compiled_available() -> bool:
    return _core is not None
