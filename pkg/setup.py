"""Build script for the optional compiled kernels.

The package is pure Python plus one Cython extension for the hot inner loop
of the entangling-frame search.  When Cython (or a C compiler) is not
available the extension is simply skipped and the numpy fallback in
``bathent.kernels._pure`` is used at runtime.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "bathent.kernels._fast",
                ["src/bathent/kernels/_fast.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
