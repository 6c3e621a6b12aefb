import mpmath
import pytest

from quartic_cm.invariants import (
    Not3Divisible, check_b_divides_G, class_poly_H, crosscheck_H_from_b, gamma_signs,
    invariant_bundle, min_poly_beta_half, product_poly_t, rep_values, split_A,
    unit_poly_2gamma_minus_1, weber_poly,
)
from quartic_cm.mp import PrecisionContext
from quartic_cm.poly import IntPolynomial, exact_divide, palindrome_scaled
from quartic_cm.qf import enumerate_reduced


def kleinj_class_poly(d, bits=400):
    """H_{-d} from mpmath's Klein j over the reduced forms."""
    with mpmath.workprec(bits):
        forms, _ = enumerate_reduced(d)
        p = [mpmath.mpc(1)]
        for q in forms:
            tau = (-q.b + mpmath.sqrt(mpmath.mpf(-d))) / (2 * q.a)
            r = 1728 * mpmath.kleinj(tau)
            p = [mpmath.mpc(0)] + p
            for k in range(len(p) - 1):
                p[k] -= r * p[k + 1]
        return IntPolynomial([int(mpmath.nint(c.real)) for c in p])


def numeric_roots(p, bits=300):
    with mpmath.workprec(bits):
        return mpmath.polyroots(list(reversed(p.coeffs)), maxsteps=400, extraprec=bits)


@pytest.mark.parametrize("d", [7, 15, 23, 31, 39, 47, 55, 63, 71, 87, 95, 103])
def test_class_polynomial_matches_kleinj_oracle(d):
    assert class_poly_H(d) == kleinj_class_poly(d)


def test_small_class_polynomials():
    assert list(class_poly_H(7).coeffs) == [3375, 1]
    assert list(class_poly_H(23).coeffs) == [12771880859375, -5151296875, 3491750, 1]


@pytest.mark.parametrize("d", [15, 23, 47, 71])
def test_beta_roots_map_onto_class_polynomial(d):
    # every root x of b_d gives beta = 2x with j(w) = (B^2 + 224B + 256)^3 / (B (B - 16)^4),
    # B = beta^4, a root of H_{-d}
    b = min_poly_beta_half(d)
    H = kleinj_class_poly(d)
    with mpmath.workprec(300):
        Hr = numeric_roots(H)
        for x in numeric_roots(b):
            B = (2 * x) ** 4
            j = (B * B + 224 * B + 256) ** 3 / (B * (B - 16) ** 4)
            assert min(abs(j - r) / max(1, abs(r)) for r in Hr) < mpmath.mpf(10) ** -40


@pytest.mark.parametrize("d", [23, 47, 71, 95])
def test_weber_roots_map_onto_class_polynomial(d):
    W = weber_poly(d)
    H = kleinj_class_poly(d)
    with mpmath.workprec(300):
        Hr = numeric_roots(H)
        for f in numeric_roots(W):
            j = (f ** 24 - 16) ** 3 / f ** 24
            assert min(abs(j - r) / max(1, abs(r)) for r in Hr) < mpmath.mpf(10) ** -40


def test_weber_poly_for_23():
    # roots are -1/f for f a root of the classical x^3 - x - 1
    classical = IntPolynomial([-1, -1, 0, 1])
    assert weber_poly(23) == palindrome_scaled(classical, 1).compose(IntPolynomial([0, -1]))


@pytest.mark.parametrize("d", range(7, 200, 8))
def test_structural_invariants(d):
    B = invariant_bundle(d)
    checks = B.structural_checks()
    assert all(checks.values()), checks
    A1 = split_A(d)
    assert A1 * A1.compose(IntPolynomial([0, -1])) == B.A.compose_power(2)
    if d % 3:
        exact_divide(B.q.compose_power(6), B.W)


@pytest.mark.parametrize("d", [15, 23, 39])
def test_crosschecks_against_class_polynomial(d):
    assert crosscheck_H_from_b(d).ok
    assert check_b_divides_G(d)


def test_t_requires_three_divisibility():
    with pytest.raises(Not3Divisible):
        product_poly_t(23)
    assert list(product_poly_t(39).coeffs) == [1, 1, 2, 2, 1]


def test_gamma_signs_give_integral_polynomial():
    for d in (23, 47, 159):
        s = gamma_signs(d, PrecisionContext(256))
        assert set(s) <= {1, -1} and len(s) == len(rep_values(d, PrecisionContext(256)))


def test_2gamma_minus_1_is_integral():
    p = unit_poly_2gamma_minus_1(23)
    assert p.degree == 3 and p.lc() == 1


def test_precision_independence():
    # result does not depend on the working precision once it is high enough
    assert min_poly_beta_half(71, PrecisionContext(200)) == min_poly_beta_half(71, PrecisionContext(600))
