"""Builds the ppsim_py extension module by delegating to cargo.

The extension lives in the Rust workspace one directory up
(crates/ppsim-py, a cdylib built against the stable CPython ABI). This
setup script compiles it in release mode and copies the shared library to
wherever setuptools expects the extension, so both regular and editable
installs work without any Rust-specific build backend.
"""

import os
import shutil
import subprocess
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

WORKSPACE = Path(__file__).resolve().parent.parent

# Candidate artifact names across platforms; the first one found wins.
ARTIFACTS = ["libppsim_py.so", "libppsim_py.dylib", "ppsim_py.dll"]


class CargoExtension(Extension):
    def __init__(self):
        super().__init__("ppsim_py", sources=[])


class CargoBuildExt(build_ext):
    def build_extension(self, ext):
        subprocess.run(
            ["cargo", "build", "--release", "-p", "ppsim-py"],
            cwd=WORKSPACE,
            check=True,
        )
        release = WORKSPACE / "target" / "release"
        for name in ARTIFACTS:
            built = release / name
            if built.exists():
                break
        else:
            raise FileNotFoundError(
                f"cargo produced none of {ARTIFACTS} in {release}"
            )
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(built, dest)

    def get_ext_filename(self, ext_name):
        # The module targets the stable ABI, so use a plain platform
        # suffix instead of the interpreter-specific tag.
        suffix = ".pyd" if os.name == "nt" else ".so"
        return ext_name.replace(".", os.sep) + suffix


setup(
    ext_modules=[CargoExtension()],
    cmdclass={"build_ext": CargoBuildExt},
)
