"""Build script for the optional compiled sweep kernel.

The package is fully functional without the extension: if Cython or a C
compiler is unavailable the install proceeds and the pure-numpy backend is
selected at import time.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "belldyn._kernels._sweep_cy",
                ["src/belldyn/_kernels/_sweep_cy.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
