import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DRIFTLAB_PURE") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "driftlab._kernels._ea_cy",
                    ["src/driftlab/_kernels/_ea_cy.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython available: install runs on the pure-Python kernel twin.
        ext_modules = []

setup(ext_modules=ext_modules)
