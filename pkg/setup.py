import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("UALG_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        # the pure-Python kernels take over at import time
        pass
    else:
        ext_modules = cythonize(
            [Extension("ualg._ckernels", ["src/ualg/_ckernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
