"""Build the optional compiled trajectory kernel.

The package works without the extension: shocksim.backend falls back to the
pure-Python kernel when the import fails.  Set SHOCKSIM_NO_EXT=1 to skip the
build entirely.
"""

import os

from setuptools import setup


def extensions():
    if os.environ.get("SHOCKSIM_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "shocksim._core",
        ["src/shocksim/_core.pyx"],
        # -ffp-contract=off: the kernel must stay bit-identical to the
        # pure-Python mirror, so no FMA contraction.
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions())
