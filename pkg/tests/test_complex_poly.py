import cmath
import random

import pytest

from quaddyn.complex_poly import (
    NonConvergence,
    Poly,
    RationalFn,
    poly_add,
    poly_compose,
    poly_derivative,
    poly_eval,
    poly_from_roots,
    poly_mul,
    poly_roots,
    reduce,
)


def P(*coeffs):
    return Poly(tuple(complex(c) for c in coeffs))


def assert_coeffs(p, expected, tol=1e-12):
    assert p.degree == len(expected) - 1
    for got, want in zip(p.coeffs, expected):
        assert abs(got - want) <= tol


def test_add_cancels_constants():
    assert_coeffs(poly_add(P(1, 1), P(-1, 1)), [0, 2])


def test_add_zero_is_identity():
    p = P(3, 0, 2)
    assert poly_add(p, P(0)) == p


def test_add_disjoint_support():
    assert_coeffs(poly_add(P(0, 0, 1), P(1)), [1, 0, 1])


def test_mul_difference_of_squares():
    assert_coeffs(poly_mul(P(-1, 1), P(1, 1)), [-1, 0, 1])


def test_mul_one_is_identity():
    p = P(2, -1, 4)
    assert poly_mul(p, P(1)) == p


def test_mul_expands_two_roots():
    assert_coeffs(poly_mul(P(-2, 1), P(-3, 1)), [6, -5, 1])


def test_compose_square_of_shift():
    assert_coeffs(poly_compose(P(0, 0, 1), P(1, 1)), [1, 2, 1])


def test_compose_identity_outer_exact():
    q = P(2, -3, 0, 5)
    assert poly_compose(P(0, 1), q) == q


def test_compose_cube_of_cube():
    got = poly_compose(P(0, 0, 0, 1), P(0, 0, 0, 1))
    assert_coeffs(got, [0] * 9 + [1])


def test_derivative_basics():
    assert_coeffs(poly_derivative(P(0, 0, 1)), [0, 2])
    assert poly_derivative(P(7)).is_zero
    assert_coeffs(poly_derivative(P(0, 0, 0, 0, 1)), [0, 0, 0, 4])


def test_eval_points():
    assert poly_eval(P(-1, 0, 1), 2) == 3
    p = P(5, 1, 1)
    assert poly_eval(p, 0) == p.coeffs[0]
    assert abs(poly_eval(P(0, 0, 0, 1), 1 + 1j) - (-2 + 2j)) < 1e-15


def test_roots_quadratic():
    roots = poly_roots(P(-1, 0, 1), 1e-10)
    assert len(roots) == 2
    assert abs(roots[0] + 1) < 1e-12 and abs(roots[1] - 1) < 1e-12


def test_roots_eighth_roots_of_unity():
    got = sorted(poly_roots(P(*([-1] + [0] * 7 + [1])), 1e-10), key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    want = sorted(
        (cmath.exp(2j * cmath.pi * k / 8) for k in range(8)),
        key=lambda z: (round(z.real, 9), round(z.imag, 9)),
    )
    for g, w in zip(got, want):
        assert abs(g - w) < 1e-10


def test_roots_quartic_contains_cube_roots_and_zero():
    # z^4 - z = z(z-1)(z^2+z+1)
    roots = poly_roots(P(0, -1, 0, 0, 1), 1e-10)
    for target in (0, 1, cmath.exp(2j * cmath.pi / 3), cmath.exp(4j * cmath.pi / 3)):
        assert min(abs(r - target) for r in roots) < 1e-10


def test_roots_origin_multiplicity():
    roots = poly_roots(P(0, 0, 0, 1), 1e-10)
    assert roots == [0j, 0j, 0j]


def test_roots_rejects_constants():
    with pytest.raises(ValueError):
        poly_roots(P(3), 1e-10)
    assert issubclass(NonConvergence, RuntimeError)


def test_reduce_cancels_shared_root():
    r = reduce(RationalFn(P(-1, 0, 1), P(-1, 1)))
    assert_coeffs(r.num, [1, 1], tol=1e-9)
    assert_coeffs(r.den, [1], tol=1e-9)


def test_reduce_keeps_coprime_pair():
    r = reduce(RationalFn(P(1, 1), P(0, 0, 2)))
    # denominator is rescaled to monic, numerator follows
    assert_coeffs(r.den, [0, 0, 1], tol=1e-9)
    assert_coeffs(r.num, [0.5, 0.5], tol=1e-9)


def test_reduce_two_factor_example():
    num = poly_mul(P(-2, 1), P(-3, 1))
    den = poly_mul(P(-3, 1), P(-4, 1))
    r = reduce(RationalFn(num, den))
    assert_coeffs(r.num, [-2, 1], tol=1e-8)
    assert_coeffs(r.den, [-4, 1], tol=1e-8)


def test_rational_rejects_zero_denominator():
    with pytest.raises(ValueError):
        RationalFn(P(1), P(0))


def test_mul_eval_consistency_random():
    rng = random.Random(42)
    for _ in range(20):
        p = P(*[complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(rng.randint(1, 7))])
        q = P(*[complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(rng.randint(1, 7))])
        prod = poly_mul(p, q)
        for _ in range(5):
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            want = poly_eval(p, z) * poly_eval(q, z)
            assert abs(poly_eval(prod, z) - want) <= 1e-10 * max(1.0, abs(want))


def test_roots_reexpansion_random():
    rng = random.Random(7)
    for _ in range(25):
        deg = rng.randint(1, 8)
        coeffs = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(deg)]
        lead = complex(rng.uniform(0.5, 2), rng.uniform(-1, 1))
        p = P(*(coeffs + [lead]))
        roots = poly_roots(p, 1e-10)
        back = poly_from_roots(roots, lead)
        scale = max(abs(c) for c in p.coeffs)
        assert back.degree == p.degree
        for got, want in zip(back.coeffs, p.coeffs):
            assert abs(got - want) <= 1e-8 * scale


def test_derivative_product_rule():
    rng = random.Random(3)
    for _ in range(10):
        p = P(*[complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(5)])
        q = P(*[complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(4)])
        lhs = poly_derivative(poly_mul(p, q))
        rhs = poly_add(poly_mul(poly_derivative(p), q), poly_mul(p, poly_derivative(q)))
        assert lhs.degree == rhs.degree
        for a, b in zip(lhs.coeffs, rhs.coeffs):
            assert abs(a - b) <= 1e-12


def test_residual_bound_holds():
    p = P(*([-1] + [0] * 7 + [1]))
    for r in poly_roots(p, 1e-10):
        scale = sum(abs(c) * abs(r) ** k for k, c in enumerate(p.coeffs))
        assert abs(poly_eval(p, r)) <= 1e-10 * scale
