"""Build script: compiles the optional QR-iteration kernel.

The compiled extension is a pure speedup; the package falls back to the
numpy implementation in ``antidiagkit._kernels.fallback`` when the build
is unavailable, so a failed compile must not fail the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/antidiagkit/_kernels/_compiled.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"antidiagkit: skipping compiled kernel ({exc!r}); "
          "the pure-python fallback will be used")

setup(ext_modules=ext_modules)
