"""Builds the optional compiled kernels.

The package works without them (a NumPy fallback is selected at import
time), so the extension is skipped when Cython is not installed.
"""
from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "dragprobe._kernels._core",
                ["src/dragprobe/_kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
