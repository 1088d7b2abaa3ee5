"""
Exact checks of Galois equivariance for Iwahori-spherical discrete series.

Root data and Weyl groups, Bernstein presentations of affine Hecke algebras,
Kazhdan-Lusztig parameters for GL_n and truncated formal degrees, all over
cyclotomic fields. The command line lives in klgalois.cli.
"""

from __future__ import annotations

from .const import VERSION

__version__ = VERSION
