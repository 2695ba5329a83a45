from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "depthfill._native_ops",
        ["src/depthfill/_native_ops.pyx"],
        extra_compile_args=["-O3", "-march=native", "-fno-math-errno"],
    ),
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    ),
)
