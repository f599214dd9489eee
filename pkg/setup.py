from setuptools import Extension, setup
from Cython.Build import cythonize

# -O2 without -ffast-math: the pure-Python fallback must produce bit-identical
# results, so IEEE semantics are required.
extensions = [
    Extension(
        "tradegame._dpcore",
        ["src/tradegame/_dpcore.pyx"],
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
