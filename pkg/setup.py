import numpy
from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; opuclab._backend falls back to numpy
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("opuclab._core", ["src/opuclab/_core.pyx"],
                   include_dirs=[numpy.get_include()],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
