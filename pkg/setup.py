"""Build script: compiles the word-rewriting kernel when Cython and a C
compiler are available.  The package works without the extension; the
pure-Python twin in coxruins._wordcore_py is selected at import time."""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/coxruins/_wordcore.pyx"],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
