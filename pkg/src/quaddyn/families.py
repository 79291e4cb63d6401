"""The four third-order iteration families and their conjugation machinery.

Each family is implemented directly from its own update formula, never by
routing through the conjugated operator, so the equivalence and conjugacy
checks exercised by ``verify`` are genuine cross-validations.  The shared
weight ``weight_h(A, t) = A + 2(A-1)^2 / (2(1-A) - t)`` interpolates between
a plain Newton step (A=1) and a Halley-type correction (A=0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .extplane import INF, TINY, is_inf


class PoleHit(ArithmeticError):
    """An inner denominator of the weight evaluated to (numerically) zero."""


class DerivativeZero(ArithmeticError):
    """f'(z) vanished at the iteration point."""


@dataclass(frozen=True)
class FamilyId:
    """Which of the four update rules to apply; multiple_root carries m."""

    kind: str
    m: int = 1

    def __post_init__(self):
        if self.kind not in ("one_point", "multiple_root", "two_point_a", "two_point_b"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.m < 1:
            raise ValueError("multiplicity m must be >= 1")


ONE_POINT = FamilyId("one_point")
TWO_POINT_A = FamilyId("two_point_a")
TWO_POINT_B = FamilyId("two_point_b")


def multiple_root(m: int) -> FamilyId:
    return FamilyId("multiple_root", m)


@dataclass(frozen=True)
class FuncTriple:
    """A function with its first two analytic derivatives."""

    f: Callable[[complex], complex]
    f1: Callable[[complex], complex]
    f2: Callable[[complex], complex]


def quadratic_triple(a: complex, b: complex) -> FuncTriple:
    """(z-a)(z-b) and derivatives."""
    return FuncTriple(
        f=lambda z: (z - a) * (z - b),
        f1=lambda z: 2 * z - (a + b),
        f2=lambda z: 2.0 + 0j,
    )


def quadratic_power_triple(a: complex, b: complex, m: int) -> FuncTriple:
    """((z-a)(z-b))**m and derivatives."""
    if m == 1:
        return quadratic_triple(a, b)

    def q(z):
        return (z - a) * (z - b)

    def q1(z):
        return 2 * z - (a + b)

    return FuncTriple(
        f=lambda z: q(z) ** m,
        f1=lambda z: m * q(z) ** (m - 1) * q1(z),
        f2=lambda z: m * (m - 1) * q(z) ** (m - 2) * q1(z) ** 2 + 2 * m * q(z) ** (m - 1),
    )


def weight_h(A: complex, t: complex) -> complex:
    """A + 2(A-1)^2 / (2(1-A) - t), the weight applied to L_f."""
    num = 2 * (A - 1) ** 2
    if num == 0:
        # the correction term vanishes identically at A=1 (Newton)
        return complex(A)
    den = 2 * (1 - A) - t
    if abs(den) < TINY:
        raise PoleHit(f"weight denominator 2(1-A)-t vanished (A={A}, t={t})")
    return A + num / den


def family_step(fam: FamilyId, A: complex, fn: FuncTriple, z: complex) -> complex:
    """One iteration of the selected family on fn at z."""
    fz = fn.f(z)
    f1z = fn.f1(z)
    if abs(f1z) < TINY:
        raise DerivativeZero(f"f'({z}) vanished")
    newton = fz / f1z

    if fam.kind == "one_point":
        lf = fz * fn.f2(z) / (f1z * f1z)
        return z - newton * weight_h(A, lf)

    if fam.kind == "multiple_root":
        lf = fz * fn.f2(z) / (f1z * f1z)
        return z - fam.m * newton * weight_h(A, 1 - fam.m + fam.m * lf)

    if fam.kind == "two_point_a":
        y = z - newton
        corr = (A - 1) ** 2 * fz
        if corr == 0:
            return z - newton * A
        den = (1 - A) * fz - fn.f(y)
        if abs(den) < TINY:
            raise PoleHit(f"two-point denominator (1-A)f(x)-f(y) vanished at {z}")
        return z - newton * (A + corr / den)

    # two_point_b: damped predictor y, derivative-difference weight argument
    y = z - (2.0 / 3.0) * newton
    t = (f1z - fn.f1(y)) / ((2.0 / 3.0) * f1z)
    return z - newton * weight_h(A, t)


@dataclass(frozen=True)
class MobiusMap:
    """M(z) = (z-a)/(z-b), sending the two roots to 0 and infinity."""

    a: complex
    b: complex

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("MobiusMap requires a != b")


def mobius(m: MobiusMap, z: complex) -> complex:
    if is_inf(z):
        return 1.0 + 0j
    den = z - m.b
    if den == 0:
        return INF
    return (z - m.a) / den


def mobius_inv(m: MobiusMap, u: complex) -> complex:
    if is_inf(u):
        return complex(m.b)
    den = u - 1
    if den == 0:
        return INF
    return (m.b * u - m.a) / den


def conjugated_map(A: complex, m: MobiusMap, fam: FamilyId, u: complex) -> complex:
    """M(family_step(fam, A, p, M^-1(u))) with p = ((z-a)(z-b))^multiplicity."""
    z = mobius_inv(m, u)
    if is_inf(z):
        raise PoleHit("u=1 pulls the iteration point to infinity")
    mult = fam.m if fam.kind == "multiple_root" else 1
    fn = quadratic_power_triple(m.a, m.b, mult)
    return mobius(m, family_step(fam, A, fn, z))


def check_scaling(
    fam: FamilyId,
    A: complex,
    fn: FuncTriple,
    alpha: complex,
    beta: complex,
    samples: int,
    seed: int = 0,
) -> float:
    """Max deviation of T o R_g o T^-1 from R_f over random points, T(z)=alpha*z+beta.

    g = f o T is built from fn's derivatives by the chain rule.  Sample points
    that land on a pole or a zero derivative of either map are redrawn, at
    most 10 times each.
    """
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    g = FuncTriple(
        f=lambda z: fn.f(alpha * z + beta),
        f1=lambda z: alpha * fn.f1(alpha * z + beta),
        f2=lambda z: alpha * alpha * fn.f2(alpha * z + beta),
    )
    rng = _rng(seed)
    worst = 0.0
    for _ in range(samples):
        for _retry in range(10):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            try:
                direct = family_step(fam, A, fn, z)
                conj = alpha * family_step(fam, A, g, (z - beta) / alpha) + beta
            except (PoleHit, DerivativeZero):
                continue
            worst = max(worst, abs(conj - direct))
            break
        else:
            raise PoleHit("could not draw a pole-free sample in 10 tries")
    return worst


def _rng(seed: int):
    import random

    return random.Random(seed)


def convergence_order(
    fam: FamilyId,
    A: complex,
    fn: FuncTriple,
    z0: complex,
    root: complex,
    max_iter: int = 60,
    floor: float = 1e-13,
) -> float:
    """Computational order of convergence toward a known root.

    Iterates until the error drops under 1e-14 (or max_iter), keeps the error
    sequence entries still resolvable above ``floor``, and estimates
    ln(e_{n+1}/e_n) / ln(e_n/e_{n-1}) from the last three of them.
    """
    z = z0
    errs = [abs(z - root)]
    for _ in range(max_iter):
        z = family_step(fam, A, fn, z)
        e = abs(z - root)
        errs.append(e)
        if e < 1e-14:
            break
    usable = [e for e in errs if e > floor]
    if len(usable) < 3:
        raise ValueError("fewer than three resolvable error steps")
    return math.log(usable[-1] / usable[-2]) / math.log(usable[-2] / usable[-3])
