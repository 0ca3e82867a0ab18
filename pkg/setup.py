"""Build script: compiles the routing extension when Cython and a C
toolchain are available, and degrades to pure Python otherwise."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/oddhex/_routing_c.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print("oddhex: building without the compiled router (%s)" % exc)

setup(ext_modules=ext_modules)
