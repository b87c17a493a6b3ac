"""Build script for the optional compiled kernel.

The extension is optional: if Cython or a C compiler is missing the
package still installs and falls back to the numpy implementation.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CYLRAD_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext = Extension(
            "cylrad._kernels",
            ["src/cylrad/_kernels.pyx"],
            include_dirs=[np.get_include()],
            extra_compile_args=["-O3"],
        )
        ext_modules = cythonize(
            [ext],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
