"""Builds the optional compiled kernel core.

    python setup.py build_ext --inplace

drops trigbf._core next to the sources so the package picks it up on import.
Everything degrades gracefully: without Cython or a working C compiler the
package installs pure-Python and uses the NumPy fallback kernels.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "trigbf._core",
                ["src/trigbf/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(
    ext_modules=extensions,
    package_dir={"": "src"},
)
