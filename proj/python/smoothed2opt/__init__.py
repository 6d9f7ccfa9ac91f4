"""Smoothed-analysis laboratory for 2-opt on Euclidean TSP.

Everything lives in the compiled extension; this package re-exports it.
Instances are adversarial layouts in [-1, 1]^d plus Gaussian noise, and all
randomness is counter-based: a (seed, index) pair reproduces the same draws
on every platform.
"""

from smoothed2opt._core import *  # noqa: F401,F403
from smoothed2opt._core import __doc__, __version__  # noqa: F401
