import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "blasius_pinn.kernels._corejet",
                ["src/blasius_pinn/kernels/_corejet.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # the package falls back to the numpy kernels at import time
    ext_modules = []

setup(ext_modules=ext_modules)
