"""Seeded property suites that re-run the analytical claims numerically.

Each suite draws its own samples from a deterministic RNG and reports the
worst deviation it saw together with the threshold it must stay under, so a
single run prints a small table and the exit status is the conjunction.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .extplane import is_inf
from .families import (
    ONE_POINT,
    TWO_POINT_A,
    TWO_POINT_B,
    DerivativeZero,
    FuncTriple,
    MobiusMap,
    PoleHit,
    check_scaling,
    conjugated_map,
    family_step,
    multiple_root,
    quadratic_triple,
)
from .operator_s import (
    DomainExcluded,
    free_critical_points,
    s_apply,
    s_prime,
    stability_z1,
    stability_z23,
    strange_fixed_point_pair,
)

MAX_REDRAWS = 40


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    threshold: float

    @property
    def ok(self) -> bool:
        return self.deviation < self.threshold


def _draw(rng: random.Random, half: float = 2.0) -> complex:
    return complex(rng.uniform(-half, half), rng.uniform(-half, half))


def conjugacy_suite(seed: int = 0, samples: int = 200) -> CheckResult:
    """Conjugating any family on (z-a)(z-b) through M reproduces S."""
    rng = random.Random(seed)
    fams = [ONE_POINT, TWO_POINT_A, TWO_POINT_B, multiple_root(2), multiple_root(3)]
    worst = 0.0
    for _ in range(samples):
        for _retry in range(MAX_REDRAWS):
            A, a, b, u = _draw(rng), _draw(rng), _draw(rng), _draw(rng)
            if abs(a - b) < 0.1 or abs(u - 1) < 0.05:
                continue
            target = s_apply(A, u)
            if is_inf(target) or abs(target) > 1e6:
                continue
            mob = MobiusMap(a, b)
            try:
                dev = max(
                    abs(conjugated_map(A, mob, fam, u) - target) for fam in fams
                )
            except (PoleHit, DerivativeZero):
                continue
            worst = max(worst, dev / max(1.0, abs(target)))
            break
        else:
            raise PoleHit("could not draw a usable conjugacy sample")
    return CheckResult("conjugacy", worst, 1e-9)


def scaling_suite(seed: int = 0, samples: int = 50) -> CheckResult:
    """Affine changes of variable commute with the iteration on a cubic."""
    fn = FuncTriple(
        f=lambda z: z * z * z - 2 * z + 2,
        f1=lambda z: 3 * z * z - 2,
        f2=lambda z: 6 * z,
    )
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        alpha = _draw(rng)
        while abs(alpha) < 0.2:
            alpha = _draw(rng)
        beta, A = _draw(rng), _draw(rng)
        dev = check_scaling(ONE_POINT, A, fn, alpha, beta, 5, seed=rng.randrange(1 << 30))
        worst = max(worst, dev)
    return CheckResult("scaling", worst, 1e-9)


def equivalence_suite(seed: int = 0, samples: int = 200) -> CheckResult:
    """All four families take the same step on a quadratic."""
    rng = random.Random(seed)
    fams = [ONE_POINT, multiple_root(1), TWO_POINT_A, TWO_POINT_B]
    worst = 0.0
    for _ in range(samples):
        for _retry in range(MAX_REDRAWS):
            A = _draw(rng)
            if abs(A - 1) <= 0.05:
                continue
            a, b, z = _draw(rng), _draw(rng), _draw(rng)
            if abs(a - b) < 0.1:
                continue
            fn = quadratic_triple(a, b)
            try:
                steps = [family_step(fam, A, fn, z) for fam in fams]
            except (PoleHit, DerivativeZero):
                continue
            ref = steps[0]
            if abs(ref) > 1e6:
                continue
            dev = max(abs(s - ref) for s in steps[1:]) / max(1.0, abs(ref))
            worst = max(worst, dev)
            break
        else:
            raise PoleHit("could not draw a usable equivalence sample")
    return CheckResult("four_family_equivalence", worst, 1e-9)


def fixed_residual_suite(seed: int = 0, samples: int = 500) -> CheckResult:
    """The strange fixed points actually satisfy S(z)=z."""
    rng = random.Random(seed)
    worst = 0.0
    drawn = 0
    while drawn < samples:
        A = _draw(rng)
        if abs(A - 1) <= 1e-3:
            continue
        drawn += 1
        z2, z3 = strange_fixed_point_pair(A)
        for z in (z2, z3):
            worst = max(worst, abs(s_apply(A, z) - z))
        worst = max(worst, abs(z2 * z3 - 1.0))
    return CheckResult("fixed_point_residual", worst, 1e-9)


def critical_residual_suite(seed: int = 0, samples: int = 500) -> CheckResult:
    """The free critical points actually satisfy S'(z)=0, and pair as 1/z."""
    rng = random.Random(seed)
    worst = 0.0
    drawn = 0
    while drawn < samples:
        A = _draw(rng)
        if abs(A - 0.5) <= 1e-3 or abs(A - 1) <= 1e-3:
            continue
        drawn += 1
        pts = free_critical_points(A)
        for z in pts:
            worst = max(worst, abs(s_prime(A, z)))
        worst = max(worst, abs(pts[0] * pts[1] - 1.0))
    return CheckResult("critical_point_residual", worst, 1e-9)


def stability_formula_suite(seed: int = 0, samples: int = 500) -> CheckResult:
    """Closed stability formulas agree with direct derivative evaluation."""
    rng = random.Random(seed)
    worst = 0.0
    drawn = 0
    while drawn < samples:
        A = _draw(rng)
        if min(abs(A), abs(A - 2.0 / 3.0), abs(A - 1)) <= 1e-2:
            continue
        drawn += 1
        worst = max(worst, abs(stability_z1(A) - abs(s_prime(A, 1.0 + 0j))))
        try:
            m = stability_z23(A)
        except DomainExcluded:
            continue
        for z in strange_fixed_point_pair(A):
            worst = max(worst, abs(m - abs(s_prime(A, z))))
    return CheckResult("stability_formula_vs_direct", worst, 1e-8)


def run_all(seed: int = 0) -> list[CheckResult]:
    return [
        conjugacy_suite(seed),
        scaling_suite(seed),
        equivalence_suite(seed),
        fixed_residual_suite(seed),
        critical_residual_suite(seed),
        stability_formula_suite(seed),
    ]
