from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("pnormsimplex._exactcore", ["src/pnormsimplex/_exactcore.pyx"])],
        language_level=3,
    )

# name/packages are repeated here so legacy setup.py installs (old pip without
# PEP 660 support) resolve the src layout instead of falling back to UNKNOWN
setup(
    name="pnormsimplex",
    version="0.1.0",
    package_dir={"": "src"},
    packages=["pnormsimplex"],
    ext_modules=ext_modules,
    entry_points={"console_scripts": ["pnormsimplex=pnormsimplex.cli:main"]},
)
