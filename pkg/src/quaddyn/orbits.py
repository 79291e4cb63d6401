"""Periodic-orbit census for S via exact polynomial composition.

The p-th iterate of S is kept as an unreduced rational function; its finite
period-dividing points are the roots of num(S^p)(z) - z * den(S^p)(z).
Points of lower period are discarded by proximity, the survivors are grouped
into cycles by forward iteration, and each cycle gets its multiplier.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .complex_poly import (
    Poly,
    RationalFn,
    poly_derivative,
    poly_eval,
    poly_mul,
    poly_roots,
    poly_scale,
    reduce,
)
from .extplane import TINY
from .operator_s import classify_modulus, s_apply, s_prime

MAX_PERIOD = 3
LOWER_PERIOD_TOL = 1e-6
CYCLE_MATCH_TOL = 1e-7


class GroupingFailure(RuntimeError):
    """A period-p root could not be chained into a cycle; roots too loose."""


@dataclass(frozen=True)
class Orbit:
    points: tuple[complex, ...]
    period: int
    multiplier_modulus: float
    classification: str


def s_as_rational(A: complex) -> RationalFn:
    """S at parameter A as a reduced ratio of coefficient polynomials."""
    num = Poly((0j, 0j, 0j, 2 * A - 1, A - 1))
    den = Poly((A - 1, 2 * A - 1))
    return reduce(RationalFn(num, den))


def compose_rational(r: RationalFn, s: RationalFn) -> RationalFn:
    """r(s(z)) with denominators cleared; no reduction applied."""
    m = max(r.num.degree, r.den.degree)
    dpow = [Poly((1 + 0j,))]
    for _ in range(m):
        dpow.append(poly_mul(dpow[-1], s.den))

    def cleared(outer: Poly) -> Poly:
        acc = Poly((0j,))
        npow = Poly((1 + 0j,))
        for i, a in enumerate(outer.coeffs):
            acc = acc + poly_scale(poly_mul(npow, dpow[m - i]), a)
            npow = poly_mul(npow, s.num)
        return acc

    return RationalFn(cleared(r.num), cleared(r.den))


def period_polynomial(r: RationalFn) -> Poly:
    """num(r) - z*den(r); its roots are the finite points with r(z)=z."""
    return r.num - poly_mul(r.den, Poly((0j, 1 + 0j)))


def orbit_multiplier(A: complex, o: Orbit) -> float:
    return math.prod(abs(s_prime(A, p)) for p in o.points)


def _polish(p: Poly, z: complex, steps: int = 3) -> complex:
    dp = poly_derivative(p)
    for _ in range(steps):
        dv = poly_eval(dp, z)
        if abs(dv) < TINY:
            break
        z = z - poly_eval(p, z) / dv
    return z


def _lex_key(z: complex) -> tuple[float, float, float, float]:
    """Lexicographic (re, im) with the last few ulps of root noise rounded
    away, so conjugate pairs rotate to the -imag point no matter how the
    solver's rounding broke the tie.  The exact parts keep the order total.
    """
    return (round(z.real, 9), round(z.imag, 9), z.real, z.imag)


def _canonical(cycle: list[complex]) -> tuple[complex, ...]:
    k = min(range(len(cycle)), key=lambda i: _lex_key(cycle[i]))
    return tuple(cycle[k:] + cycle[:k])


def find_periodic_orbits(A: complex, period: int, *, seed: int = 0) -> list[Orbit]:
    """All cycles of exact period `period` for S at parameter A.

    Roots of the period polynomial within 1e-6 of a lower-period point are
    dropped, the rest are polished and chained into cycles by applying S and
    matching the image to an unused root within 1e-7.
    """
    if not 1 <= period <= MAX_PERIOD:
        raise ValueError(f"period must be in 1..{MAX_PERIOD}, got {period}")
    s = s_as_rational(A)
    power = s
    powers = {1: s}
    for p in range(2, period + 1):
        power = compose_rational(s, power)
        powers[p] = power

    lower: list[complex] = []
    for q in range(1, period):
        lower.extend(poly_roots(period_polynomial(powers[q]), 1e-10, seed=seed))

    target = period_polynomial(powers[period])
    raw = poly_roots(target, 1e-10, seed=seed)
    survivors = [
        _polish(target, z)
        for z in raw
        if all(abs(z - w) > LOWER_PERIOD_TOL for w in lower)
    ]
    survivors.sort(key=_lex_key)

    used = [False] * len(survivors)
    orbits = []
    for i, z in enumerate(survivors):
        if used[i]:
            continue
        used[i] = True
        cycle = [z]
        cur = z
        for _ in range(period - 1):
            cur = s_apply(A, cur)
            j = _nearest_unused(survivors, used, cur)
            if j is None:
                raise GroupingFailure(
                    f"no unmatched root within {CYCLE_MATCH_TOL} of iterate {cur}"
                )
            used[j] = True
            cycle.append(survivors[j])
        if abs(s_apply(A, cycle[-1]) - cycle[0]) > CYCLE_MATCH_TOL:
            raise GroupingFailure("cycle does not close onto its first point")
        pts = _canonical(cycle)
        mult = math.prod(abs(s_prime(A, p)) for p in pts)
        orbits.append(Orbit(pts, period, mult, classify_modulus(mult)))
    orbits.sort(key=lambda o: _lex_key(o.points[0]))
    return orbits


def _nearest_unused(pts: list[complex], used: list[bool], target: complex) -> int | None:
    best, best_d = None, CYCLE_MATCH_TOL
    for j, w in enumerate(pts):
        if used[j]:
            continue
        d = abs(w - target)
        if d < best_d:
            best, best_d = j, d
    return best
