import os

from setuptools import setup

ext_modules = []
if os.environ.get("ULTRACOALG_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/ultracoalg/linalg/_reduce.pyx"],
            language_level=3,
            compiler_directives={"boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
