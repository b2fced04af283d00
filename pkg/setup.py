"""Build the optional compiled kernel; the package works without it."""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("KOORNWINDER_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/koornwinder/_kernel.pyx"],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
