"""Builds the optional compiled polynomial kernel.

Without Cython or a C compiler the package installs pure Python and
``vsqe.kernel`` falls back to ``_pykernel`` at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    pass
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("vsqe._ckernel", ["src/vsqe/_ckernel.pyx"], optional=True)],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )

setup(ext_modules=ext_modules)
