"""Build hook for the optional compiled kernel extension.

The package is fully functional without the extension (the numpy kernel
lane is selected at import time); building it just makes large state
vectors faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qclab._kernels._ckern",
                ["src/qclab/_kernels/_ckern.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
