from fractions import Fraction

import mpmath
import pytest

from quartic_cm.fermat import (
    artin_relation_check, conductor_unit_check, exact_d7_checks, fermat_solution,
    fourth_power_check, legendre_lambdas, pi_conjugates, pi_exponent,
)
from quartic_cm.invariants import default_context, min_poly_beta_half
from quartic_cm.mp import PrecisionContext
from quartic_cm.qf import BadDiscriminant
from quartic_cm.reference import reference_poly


def squarefree(n):
    return all(n % (p * p) for p in range(2, int(n ** 0.5) + 1))


@pytest.mark.parametrize("d", [d for d in range(7, 200, 8)])
def test_fermat_certifies(d):
    sol = fermat_solution(d)
    tol = 2.0 ** -(sol.bits // 2)
    assert sol.residual < tol
    assert max(sol.minpoly_residuals) < tol
    assert all(v is True or v < tol for v in sol.checks.values())


def test_d7_exact():
    assert all(exact_d7_checks().values())


def test_d7_numeric_value():
    sol = fermat_solution(7)
    mp = PrecisionContext(sol.bits).mp
    assert abs(sol.pi - (1 - mp.sqrt(mp.mpf(-7))) / 2) < 1e-18
    assert abs(sol.xi - (1 + mp.sqrt(mp.mpf(-7))) / 2) < 1e-18


def test_d23_pi_root_of_b23():
    sol = fermat_solution(23)
    b = min_poly_beta_half(23)
    assert b == reference_poly(23, "b")
    assert abs(sum(c * sol.pi ** k for k, c in enumerate(b.coeffs))) < 1e-25


def test_d23_xi_is_polynomial_in_pi():
    sol = fermat_solution(23)
    c = [Fraction(-6, 7), Fraction(15, 7), Fraction(-5, 4), Fraction(85, 56),
         Fraction(3, 14), Fraction(9, 56)]
    mp = PrecisionContext(sol.bits).mp
    val = sum(mp.mpf(x.numerator) / x.denominator * sol.pi ** k for k, x in enumerate(c))
    assert abs(val - sol.xi) < 2.0 ** -(sol.bits // 2)


def test_conjugate_multisets_agree():
    d = 47
    ctx = default_context(d)
    conj = pi_conjugates(d, ctx)
    b = min_poly_beta_half(d)
    for z in conj:
        assert abs(sum(c * z ** k for k, c in enumerate(b.coeffs))) < ctx.eps * 2 ** 20


@pytest.mark.parametrize("d", [7, 15, 23, 39, 47])
def test_artin_relation(d):
    r = artin_relation_check(d)
    assert min(r.distances) < 2.0 ** -40


@pytest.mark.parametrize("d", [7, 15, 23, 39])
def test_lambda_and_fourth_powers(d):
    assert legendre_lambdas(d).ok
    rep = fourth_power_check(d)
    assert rep.ok and rep.sextic_distinct and len(rep.sextic_residuals) == 6


def test_conductor_three_quotient_is_unit():
    poly, unit = conductor_unit_check(7, 3)
    assert unit
    assert list(poly.coeffs) == [1, 3, 16, 30, 42, 75, 76, 12, 1]


def test_pi_exponent_range():
    for d in range(7, 400, 8):
        assert 0 <= pi_exponent(d) < 8


def test_bad_d():
    with pytest.raises(BadDiscriminant):
        fermat_solution(9)


def test_low_precision_agrees_with_default():
    low = fermat_solution(159, PrecisionContext(80, 4))
    high = fermat_solution(159)
    assert abs(low.pi - high.pi) < 2.0 ** -35
