"""Build script: compiles the optional Cython kernel.

The package works without the compiled extension (a pure-Python kernel is
selected at import time), so a failed extension build is downgraded to a
warning instead of aborting the install.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
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
        print(
            f"warning: building the C kernel failed ({exc}); "
            "falling back to the pure-Python kernel",
            file=sys.stderr,
        )


ext_modules = []
if os.environ.get("SHUFFLEBV_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/shufflebv/_kernel_c.pyx"], language_level="3"
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
