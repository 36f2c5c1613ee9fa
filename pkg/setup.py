from setuptools import Extension, setup

# The compiled area kernel is optional: rit_layout falls back to a numpy
# implementation when the extension is absent (see rit_layout.measure).
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("rit_layout._speedups", ["src/rit_layout/_speedups.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
