"""Build script: compiles the optional enumeration kernel.

The package is fully functional without the extension (a pure-Python
twin of the kernel is selected at import time), so any failure to
cythonize or compile downgrades to a pure-Python install instead of
aborting.
"""

import sys

from setuptools import Extension, setup


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        sys.stderr.write("Cython not available; building without the compiled kernel.\n")
        return []
    try:
        return cythonize(
            [
                Extension(
                    "algstat._kernel",
                    ["src/algstat/_kernel.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build-environment dependent
        sys.stderr.write(f"Skipping compiled kernel ({exc}).\n")
        return []


setup(ext_modules=_extensions())
