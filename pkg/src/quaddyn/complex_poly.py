"""Dense complex polynomials, rational pairs, and a simultaneous root finder.

Coefficients are stored in ascending degree order: ``coeffs[k]`` multiplies
``z**k``.  Degrees in this project stay tiny (the largest polynomial we ever
factor is the period-3 composition, degree 64), so everything is plain Python
complex arithmetic with no array machinery.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

# relative magnitude below which trailing coefficients are trimmed away
TRIM_REL = 1e-14

ABERTH_MAX_SWEEPS = 500
ABERTH_STOP = 1e-13
ABERTH_ACCEPT = 1e-10


class NonConvergence(RuntimeError):
    """Root iteration hit its sweep cap with corrections still too large."""


def _horner(coeffs: Sequence[complex], z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


class Poly:
    """Immutable dense polynomial with normalized coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[complex]):
        cs = [complex(c) for c in coeffs]
        top = max((abs(c) for c in cs), default=0.0)
        if top == 0.0:
            object.__setattr__(self, "coeffs", (0j,))
            return
        cut = TRIM_REL * top
        n = len(cs)
        while n > 1 and abs(cs[n - 1]) < cut:
            n -= 1
        object.__setattr__(self, "coeffs", tuple(cs[:n]))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0j,)

    def __call__(self, z: complex) -> complex:
        return _horner(self.coeffs, z)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __add__(self, other: "Poly") -> "Poly":
        return poly_add(self, other)

    def __sub__(self, other: "Poly") -> "Poly":
        return poly_add(self, poly_scale(other, -1))

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)


def poly_scale(p: Poly, s: complex) -> Poly:
    return Poly([s * c for c in p.coeffs])


def poly_add(p: Poly, q: Poly) -> Poly:
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] += c
    return Poly(out)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if p.is_zero or q.is_zero:
        return Poly([0])
    out = [0j] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return Poly(out)


def poly_compose(p: Poly, q: Poly) -> Poly:
    """Coefficients of p(q(z)) by Horner evaluation in the polynomial ring."""
    acc = Poly([0])
    for c in reversed(p.coeffs):
        acc = poly_add(poly_mul(acc, q), Poly([c]))
    return acc


def poly_derivative(p: Poly) -> Poly:
    if p.degree == 0:
        return Poly([0])
    return Poly([k * c for k, c in enumerate(p.coeffs)][1:])


def poly_eval(p: Poly, z: complex) -> complex:
    return p(z)


def poly_from_roots(roots: Iterable[complex], lead: complex = 1.0) -> Poly:
    acc = Poly([lead])
    for r in roots:
        acc = poly_mul(acc, Poly([-r, 1.0]))
    return acc


def poly_roots(p: Poly, tol: float, seed: int = 0) -> list[complex]:
    """All degree(p) roots of p, with multiplicity, by Aberth-Ehrlich iteration.

    Starting points sit on a perturbed circle of radius
    ``1 + max|coeffs[k]/coeffs[n]|``; the perturbation is drawn from a
    deterministic generator so runs are reproducible (pass a different
    ``seed`` to retry a NonConvergence).  Corrections are applied until the
    largest one drops below 1e-13 or 500 sweeps pass.  Each returned root r
    must satisfy ``|p(r)| <= tol * sum_k |c_k| |r|**k``.

    Raises
    ------
    ValueError
        if degree(p) < 1.
    NonConvergence
        if the sweep cap is hit with corrections above 1e-10, or a root
        fails the residual bound; both signal an ill-conditioned input.
    """
    if p.degree < 1:
        raise ValueError("poly_roots requires degree >= 1")
    cs = list(p.coeffs)

    # peel off exact roots at the origin; keeps the start circle meaningful
    origin = 0
    while abs(cs[0]) == 0.0 and len(cs) > 1:
        cs.pop(0)
        origin += 1
    roots = [0j] * origin
    n = len(cs) - 1
    if n == 0:
        return roots
    if n == 1:
        roots.append(-cs[0] / cs[1])
        return sorted(roots, key=lambda r: (r.real, r.imag))

    lead = cs[-1]
    radius = 1.0 + max(abs(c / lead) for c in cs[:-1])
    rng = random.Random(seed)
    zs = [
        radius * (1.0 + 0.05 * rng.random())
        * cmath.exp(1j * (2 * math.pi * (k + 0.5) / n + 0.25 + 0.1 * rng.random()))
        for k in range(n)
    ]
    dcs = [k * c for k, c in enumerate(cs)][1:]

    worst = math.inf
    for _ in range(ABERTH_MAX_SWEEPS):
        worst = 0.0
        for i in range(n):
            zi = zs[i]
            pv = _horner(cs, zi)
            if pv == 0:
                continue
            repel = 0j
            for j in range(n):
                if j != i:
                    dz = zi - zs[j]
                    if dz == 0:
                        dz = 1e-12  # coincident guesses repel by a nudge
                    repel += 1.0 / dz
            denom = _horner(dcs, zi) - pv * repel
            if denom == 0:
                zs[i] = zi * 1.000001 + 1e-9
                worst = max(worst, 1.0)
                continue
            delta = pv / denom
            zs[i] = zi - delta
            worst = max(worst, abs(delta))
        if worst < ABERTH_STOP:
            break
    if worst > ABERTH_ACCEPT:
        raise NonConvergence(
            f"corrections stuck at {worst:.3e} after {ABERTH_MAX_SWEEPS} sweeps"
        )

    for r in zs:
        scale = sum(abs(c) * abs(r) ** k for k, c in enumerate(cs))
        resid = abs(_horner(cs, r))
        if resid > tol * max(scale, 1e-30):
            raise NonConvergence(f"residual {resid:.3e} exceeds bound at root {r}")

    roots.extend(zs)
    return sorted(roots, key=lambda r: (r.real, r.imag))


@dataclass(frozen=True)
class RationalFn:
    """A ratio of two polynomials; common roots are NOT cancelled automatically."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero:
            raise ValueError("RationalFn denominator is the zero polynomial")

    def __call__(self, z: complex) -> complex:
        return self.num(z) / self.den(z)


def reduce(r: RationalFn, tol: float = 1e-10, seed: int = 0) -> RationalFn:
    """Cancel numerator/denominator roots closer than tol; make den monic."""
    num, den = r.num, r.den
    if num.is_zero:
        return RationalFn(Poly([0]), Poly([1]))
    if den.degree == 0:
        s = den.coeffs[0]
        return RationalFn(poly_scale(num, 1.0 / s), Poly([1]))

    nroots = poly_roots(num, 1e-8, seed=seed) if num.degree >= 1 else []
    droots = poly_roots(den, 1e-8, seed=seed)
    keep_n = list(nroots)
    keep_d = []
    for dr in droots:
        hit = None
        for k, nr in enumerate(keep_n):
            if abs(nr - dr) < tol and (hit is None or abs(nr - dr) < abs(keep_n[hit] - dr)):
                hit = k
        if hit is None:
            keep_d.append(dr)
        else:
            keep_n.pop(hit)

    new_num = poly_from_roots(keep_n, num.coeffs[-1])
    new_den = poly_from_roots(keep_d, den.coeffs[-1])
    s = new_den.coeffs[-1]
    return RationalFn(poly_scale(new_num, 1.0 / s), poly_scale(new_den, 1.0 / s))
