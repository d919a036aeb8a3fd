import os

import numpy
from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("COTORSION_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "cotorsion._kernels",
                    ["src/cotorsion/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                )
            ],
            language_level="3",
        )

setup(ext_modules=ext_modules)
