"""Build script for the optional compiled posterior-mean kernel.

The package is pure Python except for secfilt._cme_core, which speeds up
the finite-alphabet posterior-mean inner loop.  When Cython or a C
compiler is unavailable the extension is skipped and the numpy fallback
is used at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "secfilt._cme_core",
                ["src/secfilt/_cme_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
