"""Build script for the compiled geometry kernel.

The extension is optional at runtime: if it is absent (or fails to build)
the package falls back to the pure-Python triangulation backend.
-ffp-contract=off keeps the compiled float arithmetic bit-identical to the
pure backend (no FMA contraction), which the cross-backend tests rely on.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "delgibbs.geometry._core",
                ["src/delgibbs/geometry/_core.pyx"],
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
