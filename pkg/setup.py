import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PERTURB_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "perturb._speedups",
                    ["src/perturb/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            language_level=3,
            compiler_directives={
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )
    except ImportError:
        # No Cython: install the pure-Python fallback only.
        ext_modules = []

setup(ext_modules=ext_modules)
