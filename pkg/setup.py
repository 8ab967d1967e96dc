"""Build the optional Cython kernel core; the package falls back to numpy when it is absent."""

import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LIFTLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "liftlab._kernels._ckernels",
                    ["src/liftlab/_kernels/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
