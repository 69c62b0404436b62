"""Build hook for the optional compiled kernel.

The per-trial statistics kernel (speckle_squeeze._core) is compiled from
Cython when available.  The package works without it: a NumPy fallback is
selected at import time.  Set SPECKLE_SQUEEZE_NO_EXT=1 to skip the build.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SPECKLE_SQUEEZE_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "speckle_squeeze._core",
                    sources=["src/speckle_squeeze/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )

setup(ext_modules=ext_modules)
