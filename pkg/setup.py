import numpy as np
from setuptools import setup
from setuptools.extension import Extension
from Cython.Build import cythonize

# No -ffast-math: the compiled kernels must stay bit-identical to the
# numpy fallback, which rules out FP reassociation.
extensions = [
    Extension(
        "wavedeblur._haar_cy",
        ["src/wavedeblur/_haar_cy.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
