"""Build script: compiles the optional fast kernels if Cython is available.

The package is fully functional without the extension; ``dwcat.kernels``
falls back to the numpy implementation at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DWCAT_NO_EXT") != "1" and os.path.exists("src/dwcat/_kernels/_speedups.pyx"):
    try:
        from Cython.Build import cythonize
        import numpy

        ext_modules = cythonize(
            [
                Extension(
                    "dwcat._kernels._speedups",
                    ["src/dwcat/_kernels/_speedups.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
