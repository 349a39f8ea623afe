"""CMake-driven build of the ndform extension module.

The compiled core lives in bindings/; this shim configures the CMake project
with tests and the CLI switched off and drops ndform._core next to the pure
python package sources.
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        out_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        cfg = "Debug" if self.debug else "Release"
        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DNDFORM_PYTHON_OUTPUT_DIR={out_dir}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DNDFORM_BUILD_TESTS=OFF",
            "-DNDFORM_BUILD_CLI=OFF",
        ]
        try:
            import pybind11

            cmake_args.append(f"-Dpybind11_DIR={pybind11.get_cmake_dir()}")
        except ImportError:
            pass
        if "CMAKE_ARGS" in os.environ:
            cmake_args += os.environ["CMAKE_ARGS"].split()

        subprocess.run(
            ["cmake", "-S", str(source_dir), "-B", str(build_dir), *cmake_args],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j"],
            check=True,
        )


setup(
    packages=["ndform"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("ndform._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
