import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "derwatch._kernels._ctree",
                ["src/derwatch/_kernels/_ctree.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    # Pure-python fallback in derwatch._kernels keeps the package usable
    # without a compiler; the benchmark reports which backend is active.
    ext_modules = []

setup(ext_modules=ext_modules)
