"""Build script: compiles the solver kernel when Cython and a C compiler are
available, otherwise installs the pure-Python package (the fallback kernel is
selected at import time)."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    import numpy as np

    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "coplab._core",
                ["src/coplab/_core.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
