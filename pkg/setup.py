"""Build the optional Cython core.

The package imports and runs without it: ``epidemetric.kernels`` falls back
to the numpy implementation in ``_core_py`` when ``_core`` is missing.
Set ``EPIDEMETRIC_NO_EXT=1`` to skip compiling.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("EPIDEMETRIC_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "epidemetric._core",
                    ["src/epidemetric/_core.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
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
