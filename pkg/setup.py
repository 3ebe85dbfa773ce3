from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python fallback is used at import time
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("multibrot.numerics._ckernels",
                   ["src/multibrot/numerics/_ckernels.pyx"],
                   extra_compile_args=["-O3", "-fcx-limited-range"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
