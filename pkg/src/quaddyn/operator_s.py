"""Closed-form analysis of the conjugated operator S and its stability data.

S(z) = z^3 ((A-1)z + 2A-1) / ((2A-1)z + A-1) acts on the extended complex
plane.  Evaluation resolves removable 0/0 points (which occur at the
parameter values where numerator and denominator share a root) by repeated
differentiation, so orbits started exactly on such a point stay faithful to
the reduced operator.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .extplane import HUGE, INF, TINY, is_inf

SUPERATTRACTOR = "Superattractor"
ATTRACTOR = "Attractor"
PARABOLIC = "Parabolic"
REPULSOR = "Repulsor"

INSIDE = "Inside"
BOUNDARY = "Boundary"
OUTSIDE = "Outside"

# |z2 - z3| below this reports the coincident strange point once
MERGE_TOL = 1e-6
BOUNDARY_TOL = 1e-12
SWEEP_SKIP = 1e-9

DISK_Z1_CENTER = 42.0 / 55.0
DISK_Z1_RADIUS = 2.0 / 55.0
DISK_Z23_CENTER = 29.0 / 35.0
DISK_Z23_RADIUS = 1.0 / 35.0


class DomainExcluded(ValueError):
    """The simplified stability formula does not apply at this parameter."""


@dataclass(frozen=True)
class ParamA:
    """The family parameter with its formula-degeneracy flags."""

    value: complex
    flag_tol: float = 1e-12

    def near(self, x: float) -> bool:
        return abs(self.value - x) < self.flag_tol

    @property
    def is_newton(self) -> bool:
        return self.near(1.0)

    @property
    def is_halley(self) -> bool:
        return self.near(0.0)

    @property
    def degenerate_markers(self) -> tuple[float, ...]:
        """The special parameter values this A sits on, if any."""
        marks = (0.5, 2.0 / 3.0, 0.75, 0.8, 5.0 / 6.0, 1.0)
        return tuple(x for x in marks if self.near(x))


@dataclass(frozen=True)
class StabilityReport:
    point: complex
    multiplier_modulus: float
    classification: str
    label: str
    multiplicity: int = 1


@dataclass(frozen=True)
class CriticalPoint:
    point: complex
    free: bool


def classify_modulus(mod: float) -> str:
    if mod < BOUNDARY_TOL:
        return SUPERATTRACTOR
    if abs(mod - 1.0) <= BOUNDARY_TOL:
        return PARABOLIC
    return ATTRACTOR if mod < 1.0 else REPULSOR


def _limit_ratio(num: list[complex], den: list[complex], z: complex) -> complex:
    """num(z)/den(z) with 0/0 resolved by differentiating both sides."""
    n, d = list(num), list(den)
    for _ in range(len(den) + 1):
        nv = _horner(n, z)
        dv = _horner(d, z)
        if abs(dv) >= TINY:
            out = nv / dv
            return INF if is_inf(out) else out
        if abs(nv) >= TINY or len(d) == 1:
            return INF
        n = [k * c for k, c in enumerate(n)][1:] or [0j]
        d = [k * c for k, c in enumerate(d)][1:]
    return INF


def _horner(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def s_apply(A: complex, z: complex) -> complex:
    """S(z) on the extended plane; total (poles map to the infinity tag)."""
    if is_inf(z) or abs(z) > HUGE:
        return INF
    den = (2 * A - 1) * z + (A - 1)
    if abs(den) < TINY:
        return _limit_ratio(
            [0j, 0j, 0j, 2 * A - 1, A - 1], [A - 1, 2 * A - 1], z
        )
    out = z * z * z * ((A - 1) * z + (2 * A - 1)) / den
    return INF if is_inf(out) else out


def s_prime(A: complex, z: complex) -> complex:
    """dS/dz on the extended plane."""
    if is_inf(z) or abs(z) > HUGE:
        return INF
    c = 2 * A * A - 3 * A + 1
    d = 6 * A * A - 8 * A + 3
    lin = (2 * A - 1) * z + (A - 1)
    den = lin * lin
    if abs(den) < TINY:
        e0 = (A - 1) * (A - 1)
        e1 = 2 * (2 * A - 1) * (A - 1)
        e2 = (2 * A - 1) * (2 * A - 1)
        return _limit_ratio([0j, 0j, 3 * c, 2 * d, 3 * c], [e0, e1, e2], z)
    out = z * z * (3 * c * z * z + 2 * d * z + 3 * c) / den
    return INF if is_inf(out) else out


def strange_fixed_point_pair(A: complex) -> tuple[complex, complex]:
    """The two strange fixed points away from z=1; principal branch on +."""
    sq = cmath.sqrt(A * (5 * A - 4))
    half = 2 * (1 - A)
    return (3 * A - 2 + sq) / half, (3 * A - 2 - sq) / half


def fixed_points(A: complex) -> list[StabilityReport]:
    """Reports for all fixed points of S: 0, infinity, 1, and the z2/z3 pair.

    The z=1 modulus uses the closed formula, which is an exact rational
    identity for every A; direct s_prime evaluation there cancels
    catastrophically when A sits within roundoff of 2/3 (the pole of S
    collides with z=1).  The z2/z3 moduli come from direct evaluation
    instead, because the closed pair formula is the one that breaks down
    at A in {0, 1}.  At the parameters where z2 and z3 coincide the merged
    point is reported once with multiplicity 2.
    """
    reports = [
        StabilityReport(0j, abs(s_prime(A, 0j)), SUPERATTRACTOR, "Root0"),
        # in the w = 1/z chart S has a zero of order >= 2 at w = 0
        StabilityReport(INF, 0.0, SUPERATTRACTOR, "RootInf"),
    ]
    m1 = stability_z1(A)
    reports.append(StabilityReport(1.0 + 0j, m1, classify_modulus(m1), "Z1"))
    if ParamA(A).is_newton:
        return reports
    z2, z3 = strange_fixed_point_pair(A)
    if abs(z2 - z3) < MERGE_TOL:
        zm = (z2 + z3) / 2
        mm = abs(s_prime(A, zm))
        reports.append(StabilityReport(zm, mm, classify_modulus(mm), "Z2", multiplicity=2))
    else:
        for z, label in ((z2, "Z2"), (z3, "Z3")):
            mz = abs(s_prime(A, z))
            reports.append(StabilityReport(z, mz, classify_modulus(mz), label))
    return reports


def stability_z1(A: complex) -> float:
    """|S'(1)| by the closed formula 2|(4A-3)/(3A-2)|; infinite at A=2/3."""
    if ParamA(A).near(2.0 / 3.0):
        return math.inf
    return 2.0 * abs((4 * A - 3) / (3 * A - 2))


def stability_z23(A: complex) -> float:
    """|S'(z2)| = |S'(z3)| by the closed formula |(6A-5)/(A-1)|."""
    p = ParamA(A)
    if p.is_halley or p.is_newton:
        raise DomainExcluded(
            "formula excluded at A in {0, 1}; evaluate s_prime at the points directly"
        )
    return abs((6 * A - 5) / (A - 1))


def _disk(A: complex, center: float, radius: float) -> str:
    dist = abs(A - center)
    if abs(dist - radius) <= BOUNDARY_TOL:
        return BOUNDARY
    return INSIDE if dist < radius else OUTSIDE


def in_stability_disk_z1(A: complex) -> str:
    return _disk(A, DISK_Z1_CENTER, DISK_Z1_RADIUS)


def in_stability_disk_z23(A: complex) -> str:
    return _disk(A, DISK_Z23_CENTER, DISK_Z23_RADIUS)


def critical_points(A: complex) -> list[CriticalPoint]:
    """Critical points of S: 0 and infinity (never free) plus the free pair.

    The free pair solves 3(2A^2-3A+1)(z^2+1) + 2(6A^2-8A+3)z = 0.  When the
    quadratic coefficient vanishes (A = 1/2 or A = 1) the equation collapses
    to a multiple of z alone, whose root is the non-free origin, so no free
    critical points exist there.
    """
    pts = [CriticalPoint(0j, False), CriticalPoint(INF, False)]
    p = ParamA(A)
    if p.near(0.5) or p.is_newton:
        return pts
    d = 6 * A * A - 8 * A + 3
    sq = cmath.sqrt(12 * A ** 3 - 17 * A * A + 6 * A)
    den = 3 * (3 * A - 1 - 2 * A * A)
    pts.append(CriticalPoint((d + sq) / den, True))
    pts.append(CriticalPoint((d - sq) / den, True))
    return pts


def free_critical_points(A: complex) -> list[complex]:
    return [c.point for c in critical_points(A) if c.free]


class FixedRow(NamedTuple):
    A: float
    z2: complex
    z3: complex


class CriticalRow(NamedTuple):
    A: float
    zc1: complex
    zc2: complex


class ProfileRow(NamedTuple):
    A: float
    s1_z1: float
    s1_z23: float


def _samples(a_min: float, a_max: float, n: int) -> list[float]:
    if a_min >= a_max:
        raise ValueError("need a_min < a_max")
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return [a_min]
    step = (a_max - a_min) / (n - 1)
    return [a_min + k * step for k in range(n)]


def sweep_fixed_points(a_min: float, a_max: float, n: int) -> list[FixedRow]:
    """z2, z3 over evenly spaced real A, skipping the A=1 degeneracy."""
    rows = []
    for a in _samples(a_min, a_max, n):
        if abs(a - 1.0) < SWEEP_SKIP:
            continue
        z2, z3 = strange_fixed_point_pair(complex(a))
        rows.append(FixedRow(a, z2, z3))
    return rows


def sweep_critical_points(a_min: float, a_max: float, n: int) -> list[CriticalRow]:
    """zc1, zc2 over evenly spaced real A, skipping A in {1/2, 1}."""
    rows = []
    for a in _samples(a_min, a_max, n):
        if abs(a - 0.5) < SWEEP_SKIP or abs(a - 1.0) < SWEEP_SKIP:
            continue
        zc1, zc2 = free_critical_points(complex(a))
        rows.append(CriticalRow(a, zc1, zc2))
    return rows


def stability_profile(a_min: float, a_max: float, n: int) -> list[ProfileRow]:
    """min(|S'|, 1) at z=1 and at z2/z3 over real A, skipping {2/3, 1}."""
    rows = []
    for a in _samples(a_min, a_max, n):
        if abs(a - 2.0 / 3.0) < SWEEP_SKIP or abs(a - 1.0) < SWEEP_SKIP:
            continue
        s1 = min(stability_z1(complex(a)), 1.0)
        try:
            m23 = stability_z23(complex(a))
        except DomainExcluded:
            z2, _ = strange_fixed_point_pair(complex(a))
            m23 = abs(s_prime(complex(a), z2))
        rows.append(ProfileRow(a, s1, min(m23, 1.0)))
    return rows
