"""Build hook for the compiled rule-matching kernel.

The extension is optional: if Cython or a C compiler is unavailable the
package still installs and falls back to the pure-Python evaluator.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "confidec.dmn._speedups",
                ["src/confidec/dmn/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
