from fractions import Fraction

import mpmath
import pytest
import sympy

from quartic_cm.mp import (
    NoReconstruction, PrecisionContext, QuadFieldElement, RoundingFailed, default_bits,
    gaussian, recognize_quadratic, reconstruct_rational, round_poly_to_int, to_fraction,
    with_retries,
)


def test_context_validation():
    with pytest.raises(ValueError):
        PrecisionContext(32)
    with pytest.raises(ValueError):
        PrecisionContext(128, max_retries=-1)
    with pytest.raises(ValueError):
        PrecisionContext(128, round_tol=0.5)


def test_eps_and_doubling():
    ctx = PrecisionContext(128, 3)
    assert ctx.eps == ctx.mp.mpf(2) ** -64
    d = ctx.doubled()
    assert (d.bits, d.max_retries) == (256, 2)
    assert ctx.mp.prec == 128


def test_default_bits():
    assert default_bits(7, 1) == 64 + 10
    assert default_bits(159, 10) == 64 + 442


def test_with_retries_doubles_until_success():
    seen = []

    def fn(c):
        seen.append(c.bits)
        if c.bits < 400:
            raise RoundingFailed(0, 0.4)
        return c.bits

    assert with_retries(fn, PrecisionContext(100, 4)) == 400
    assert seen == [100, 200, 400]
    with pytest.raises(RoundingFailed):
        with_retries(fn, PrecisionContext(100, 1))


def test_to_fraction_is_exact():
    mp = PrecisionContext(128).mp
    x = mp.mpf(3) / 7
    assert mp.mpf(to_fraction(x).numerator) / to_fraction(x).denominator == x
    assert to_fraction(0.5) == Fraction(1, 2)


def test_reconstruct_rational():
    mp = PrecisionContext(128).mp
    assert reconstruct_rational(mp.mpf(-355) / 113) == Fraction(-355, 113)
    assert reconstruct_rational(mp.mpf(5)) == 5
    with pytest.raises(NoReconstruction):
        reconstruct_rational(mp.pi, max_den=1000)


def test_quadratic_arithmetic_matches_sympy():
    s = sympy.sqrt(-7)
    z = QuadFieldElement(Fraction(1, 2), Fraction(1, 2), 7)
    w = QuadFieldElement(Fraction(-3, 5), 2, 7)
    zs = sympy.Rational(1, 2) + s / 2
    ws = sympy.Rational(-3, 5) + 2 * s
    for got, want in ((z ** 4, zs ** 4), (z * w - 3, zs * ws - 3), (z / w, zs / ws)):
        want = sympy.nsimplify(sympy.expand(sympy.radsimp(want)))
        a, b = sympy.Rational(str(got.a)), sympy.Rational(str(got.b))
        assert sympy.simplify(a + b * s - want) == 0
    assert z.norm() == 2
    assert z * z.inverse() == 1


def test_gaussian_and_recognition():
    i = gaussian(0, 1)
    assert i * i == -1
    mp = PrecisionContext(128).mp
    z = (1 + mp.sqrt(mp.mpf(-7))) / 2
    q = recognize_quadratic(z, 7)
    assert q == QuadFieldElement(Fraction(1, 2), Fraction(1, 2), 7)
    assert q.to_complex(PrecisionContext(128)) == pytest.approx(complex(z))


def test_round_poly_to_int():
    ctx = PrecisionContext(128)
    p, worst = round_poly_to_int([mpmath.mpc(2.0000001, 0), -3], ctx)
    assert list(p.coeffs) == [2, -3] and worst < 1e-6
    with pytest.raises(RoundingFailed):
        round_poly_to_int([0.4, 1], ctx)
