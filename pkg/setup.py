"""Build script for the optional compiled contraction kernel.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so a missing compiler or Cython only downgrades
performance, never the install.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build extensions, but tolerate a failing toolchain."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - exercised only on broken toolchains
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        import warnings

        warnings.warn(
            "qinv: compiled kernel build failed (%s); "
            "falling back to the pure-Python kernel" % (exc,)
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover
        return []
    return cythonize(
        [Extension("qinv._contract", ["src/qinv/_contract.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
