"""Build hook for the optional compiled kernel.

The package is pure Python unless Cython is importable at build time, in
which case diracforge._matops_c is compiled.  A missing or failed extension
is never an error: diracforge.matops falls back to the interpreted kernels.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    pass
else:
    ext_modules = cythonize(
        [Extension("diracforge._matops_c", ["src/diracforge/_matops_c.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
