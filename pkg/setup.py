"""Build script: compiles the optional C search core when Cython and a C
compiler are available, otherwise installs pure Python only (the package
selects the fallback kernels at import time)."""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never fail the install over the accelerator extension."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"WARNING: building hexovoid._ckernels failed ({exc}); "
              "falling back to the pure Python kernels")


PYX = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                   "src", "hexovoid", "_ckernels.pyx")

extensions = []
if not os.environ.get("HEXOVOID_NO_EXT") and os.path.exists(PYX):
    try:
        from Cython.Build import cythonize

        extensions = cythonize([PYX], language_level=3)
    except ImportError:
        print("WARNING: Cython not available; installing without the C kernels")

setup(
    ext_modules=extensions,
    cmdclass={"build_ext": optional_build_ext},
)
