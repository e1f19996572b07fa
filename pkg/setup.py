"""Build script.

The compiled kernel module is optional: if Cython (or a C compiler) is
unavailable, or AMALGAMLAB_PURE=1 is set, the package installs without it
and falls back to the pure-Python kernels at import time.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("AMALGAMLAB_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "amalgamlab._fastkernels",
                    ["src/amalgamlab/_fastkernels.pyx"],
                    optional=True,
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
