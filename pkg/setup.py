"""Build script: compiles the optional speedup extension.

The package is fully functional without the extension; _kernels falls back
to the pure-Python implementations when the import fails.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "toralpick._speedups",
                ["src/toralpick/_speedups.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
