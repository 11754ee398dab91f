"""Build script for the optional compiled kernels.

The package works without compilation (a pure-Python fallback is selected at
import time).  Building the extension in place:

    python setup.py build_ext --inplace
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/curvelink/kernels/_core.pyx"],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
