"""Build script: compiles the optional Cython kernel if Cython is available.

The package is fully functional without the extension; weylchar.gtkernel
falls back to the pure-Python implementation when the import fails.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "weylchar._gtcore",
                sources=["src/weylchar/_gtcore.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
