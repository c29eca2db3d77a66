from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    # The compiled kernel is optional: the package falls back to the pure
    # Python kernel in gasp/_kernel/pure.py when the extension is absent.
    ext_modules = cythonize(
        [
            Extension(
                "gasp._kernel._fast",
                ["src/gasp/_kernel/_fast.pyx"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
