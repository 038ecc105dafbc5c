import numpy as np
from setuptools import setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize("src/qctradeoff/_scan_cy.pyx", language_level=3)
except ImportError:
    # The package falls back to the numpy scan kernel at import time.
    ext_modules = []

setup(ext_modules=ext_modules, include_dirs=[np.get_include()])
