"""Build script for the optional compiled kernels.

If Cython or a C compiler is unavailable the package still installs and the
pure Python kernels are used.
"""

from setuptools import setup
from setuptools.extension import Extension

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("metamat.kernels._ckernels",
                   ["src/metamat/kernels/_ckernels.pyx"],
                   extra_compile_args=["-O3"],
                   optional=True)],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
