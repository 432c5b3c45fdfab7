"""Build script for the optional compiled kernels.

The package is pure Python plus one Cython extension holding the two hot
loops (array-factor accumulation and channel-matrix fill).  If Cython or a
C compiler is unavailable the extension is skipped and the package falls
back to the vectorized numpy backend at import time.
"""

import numpy as np
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Let the install proceed when the extension cannot be compiled."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken toolchain
            print(f"warning: skipping compiled kernels ({exc}); using numpy backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); using numpy backend")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "nfarray._kernels._core",
                ["src/nfarray/_kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
