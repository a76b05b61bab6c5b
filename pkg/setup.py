"""Build hook for the optional compiled enumeration kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so a missing Cython or C compiler only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "orbicurv._kernel._fast",
                ["src/orbicurv/_kernel/_fast.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
