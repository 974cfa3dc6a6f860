"""Build script: compiles the optional Cython kernels.

The package is pure Python; the extension only accelerates the hot loops
(measure convolution, associativity scans, simplex pivots).  If Cython or a
C compiler is unavailable the install proceeds without it and the package
falls back to semihyp._kernels_py at import time.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing: keep the pure install
            print(f"warning: skipping compiled kernels ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: skipping {ext.name} ({exc})", file=sys.stderr)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not found, building without compiled kernels",
              file=sys.stderr)
        return []
    return cythonize(
        [Extension("semihyp._kernels", ["src/semihyp/_kernels.pyx"])],
        language_level=3,
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
