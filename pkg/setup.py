# Builds the optional compiled ray-casting/grid kernels. If Cython or a C
# compiler is unavailable the install still succeeds and the package falls
# back to the pure-Python kernels at import time.
import logging

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            "src/scoutbot/simworld/_kernels.pyx",
        ],
        language_level=3,
        compiler_directives={"boundscheck": False, "wraparound": False},
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
except Exception as exc:  # pragma: no cover - build-env dependent
    logging.warning("compiled kernels skipped (%s); pure-Python fallback will be used", exc)
    ext_modules = []

setup(ext_modules=ext_modules)
