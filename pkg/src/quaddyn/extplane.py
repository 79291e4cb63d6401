"""Extended complex plane: a tagged point at infinity for Mobius-total arithmetic.

All finite values are plain Python complex numbers.  The single point at
infinity of the Riemann sphere is represented by any complex value with a
non-finite component; ``INF`` is the canonical representative.  Code that can
receive the point at infinity must check ``is_inf`` before doing arithmetic.
"""
from __future__ import annotations

import math

INF = complex(math.inf, 0.0)

# magnitudes below this count as an exact zero denominator (true pole),
# magnitudes above this count as having already left the finite plane
TINY = 1e-300
HUGE = 1e100


def is_inf(z: complex) -> bool:
    """True if z encodes the point at infinity (or any non-finite value)."""
    return not (math.isfinite(z.real) and math.isfinite(z.imag))


def fmt(z: complex) -> str:
    """Short human-readable form, with the infinity tag spelled out."""
    if is_inf(z):
        return "inf"
    return format(z, "g")
