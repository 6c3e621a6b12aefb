import random
from fractions import Fraction

import pytest
import sympy

from quartic_cm.poly import (
    IntPolynomial, MPoly, NotDivisible, Poly, ZeroDeterminant, ZeroInput, bareiss_det,
    discriminant, exact_divide, gray_code, mobius_transform, palindrome_scaled, parse_poly,
    resultant,
)

X = sympy.Symbol("x")


def to_sympy(p):
    return sum(sympy.Integer(c) * X ** k for k, c in enumerate(p.coeffs))


def random_poly(rng, deg):
    c = [rng.randint(-50, 50) for _ in range(deg)] + [rng.choice([-3, -1, 1, 2, 5])]
    return IntPolynomial(c)


def test_arithmetic():
    p = IntPolynomial([1, 2, 3])
    q = IntPolynomial([-1, 1])
    assert list((p * q).coeffs) == [-1, -1, -1, 3]
    assert (p - p).degree == -1 or not (p - p)
    assert p(2) == 17
    qq, r = (p * q + 5).divmod(q)
    assert qq == p and list(r.coeffs) == [5]
    assert exact_divide(p * q, q) == p
    with pytest.raises(NotDivisible):
        exact_divide(p, IntPolynomial([1, 1, 1, 1]) + 1)


def test_resultant_and_discriminant_match_sympy():
    rng = random.Random(1)
    for _ in range(20):
        p, q = random_poly(rng, rng.randint(1, 6)), random_poly(rng, rng.randint(1, 6))
        assert resultant(p, q) == sympy.resultant(to_sympy(p), to_sympy(q), X)
        if p.degree >= 2:
            assert discriminant(p) == sympy.discriminant(to_sympy(p), X)
    with pytest.raises(ZeroInput):
        resultant(IntPolynomial([]), IntPolynomial([1, 1]))


def test_bareiss_matches_sympy():
    rng = random.Random(2)
    for n in range(1, 7):
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert bareiss_det(m) == sympy.Matrix(m).det()
    assert bareiss_det([[1, 2], [2, 4]]) == 0


def test_mobius_and_palindrome():
    p = IntPolynomial([4, -2, 5, -4, 1])
    got = mobius_transform(p, (1, 1, 1, -1))
    want = sympy.cancel((X - 1) ** 4 * to_sympy(p).subs(X, (X + 1) / (X - 1)))
    assert sympy.expand(to_sympy(got) - want) == 0
    pal = palindrome_scaled(p, 4)
    assert sympy.expand(to_sympy(pal) - sympy.cancel(X ** 4 * to_sympy(p).subs(X, 4 / X))) == 0
    with pytest.raises(ZeroDeterminant):
        mobius_transform(p, (1, 2, 2, 4))


def test_compose_power():
    p = IntPolynomial([1, -3, 1])
    assert list(p.compose_power(3).coeffs) == [1, 0, 0, -3, 0, 0, 1]


def test_json_round_trip():
    p = IntPolynomial([-121287375, 191025, 1])
    assert IntPolynomial.from_json(p.to_json()) == p
    assert p.to_json()["coeffs"][0] == "-121287375"


def test_rational_coefficients():
    p = Poly([Fraction(1, 2), 1])
    assert list((p * 2).coeffs) == [1, 2]
    with pytest.raises(ValueError):
        IntPolynomial([Fraction(1, 2)])


def test_gray_code_changes_one_bit():
    codes = list(gray_code(5))
    assert len({c for _, c in codes}) == 32
    for (_, a), (bit, b) in zip(codes, codes[1:]):
        diff = [k for k in range(5) if a[k] != b[k]]
        assert diff == [bit]


def test_mpoly_resultant_matches_sympy():
    vars = ("x", "y")
    f = parse_poly("x^3 - 2*x*y + y^2 - 7", vars)
    g = parse_poly("3*x^2*y - x + y^3", vars)
    x, y = sympy.symbols("x y")
    want = sympy.expand(sympy.resultant(x ** 3 - 2 * x * y + y ** 2 - 7, 3 * x ** 2 * y - x + y ** 3, x))
    got = resultant(f, g, "x")
    assert got == parse_poly(str(want).replace("**", "^"), vars)


def test_mpoly_basics():
    vars = ("j", "k")
    p = parse_poly("(j - k)^2", vars)
    assert p == parse_poly("j^2 - 2*j*k + k^2", vars)
    assert p.subs(j=MPoly.variable(vars, "k"), k=MPoly.variable(vars, "j")) == p
    assert p.degree("j") == 2
    assert p.exact_div(parse_poly("j - k", vars)) == parse_poly("j - k", vars)
    with pytest.raises(ValueError):
        parse_poly("j / k", vars)
