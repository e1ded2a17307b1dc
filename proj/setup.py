from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "triq._triq",
    [
        "bindings/module.cpp",
        "src/arith.cpp",
        "src/quadratic.cpp",
        "src/interval.cpp",
        "src/mfield.cpp",
        "src/theorems.cpp",
        "src/verify.cpp",
    ],
    include_dirs=["include", "vendor"],
    libraries=["gmpxx", "gmp", "mpfr"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
