import mpmath
import pytest
import sympy

from quartic_cm import elimination, elimination_data
from quartic_cm.elimination import (
    ChecksumMismatch, alpha4_small_cases, build_elimination, constant, first_difference,
    pseudo_remainder, verify_resultant_identities,
)
from quartic_cm.poly import MPoly, parse_poly

j, k, l, x = sympy.symbols("j k l x")


def sp(name):
    """A stored constant as a sympy expression, named pieces substituted."""
    text = elimination_data.CONSTANTS[name].replace("^", "**")
    names = {n: sp(n) for n in elimination_data.CONSTANTS if n[0].isupper() and n != name and n in text}
    return sympy.sympify(text, locals={**names, "j": j, "k": k, "l": l, "x": x})


@pytest.fixture(scope="module")
def bundle():
    return build_elimination()


def test_all_transcriptions_recompute(bundle):
    assert all(bundle.checks.values()), bundle.checks


def test_sextics_have_expected_shape():
    f = sp("f")
    assert sympy.expand(f - ((x ** 2 - 16 * x + 16) ** 3 - j * (x ** 2 - 16 * x))) == 0
    assert sympy.Poly(sp("q1"), x).coeffs()[0] == sympy.expand(720 - k)


def test_first_resultant_against_sympy():
    r = sympy.resultant(sp("A1"), sp("Phi2"), k)
    want = -2 ** 32 * (j - 54000) * (j + 3375) ** 2 * (j ** 2 + 191025 * j - 121287375) ** 2
    assert sympy.expand(r - want) == 0
    assert sympy.expand(r - sp("res1")) == 0


def test_second_resultant_against_root_product():
    # sympy's multivariate resultant disagrees in sign with the Sylvester
    # convention here, so the outer resultant is checked from its definition
    # lc(f)^deg(g) prod g(roots of f) at a few specialisations of j
    phi = sp("Phi2")
    phi_kl = phi.subs({j: k, k: l}, simultaneous=True)
    inner = sympy.expand(sympy.resultant(phi_kl, sp("A2"), l))
    want = sp("res2")
    with mpmath.workprec(3000):
        for j0 in (1, 7, -5):
            f = [int(c) for c in sympy.Poly(phi.subs(j, j0), k).all_coeffs()]
            g = [int(c) for c in sympy.Poly(inner.subs(j, j0), k).all_coeffs()]
            val = mpmath.mpf(f[0]) ** (len(g) - 1)
            for r in mpmath.polyroots(f, maxsteps=500, extraprec=3000):
                val *= mpmath.polyval(g, r)
            expected = int(want.subs(j, j0))
            assert abs(val - expected) < abs(expected) * mpmath.mpf(2) ** -2000


def test_package_identities(bundle):
    rep = verify_resultant_identities(bundle)
    assert rep.ok, rep.results


def test_small_cases():
    assert all(alpha4_small_cases().values())


def test_checksum_guards_constants(monkeypatch):
    edited = dict(elimination_data.CONSTANTS, A1=elimination_data.CONSTANTS["A1"] + "+1")
    assert elimination_data.checksum(edited) != elimination_data.CHECKSUM
    monkeypatch.setattr(elimination, "CHECKSUM", "0" * 64)
    with pytest.raises(ChecksumMismatch):
        build_elimination()


def test_pseudo_remainder_identity():
    vars = elimination.VARS
    a = parse_poly("x^5*j + 3*x^2*k - l", vars)
    b = parse_poly("(j + 1)*x^2 + k*x + 7", vars)
    r, u, n = pseudo_remainder(a, b, "x")
    lb = parse_poly("j + 1", vars)
    assert lb ** n * a - u * b == r
    assert r.degree("x") < 2


def test_first_difference():
    vars = ("x",)
    p, q = parse_poly("x^3 + 2*x", vars), parse_poly("x^3 + 5*x", vars)
    assert first_difference(p, q) == ({"x": 1}, 2, 5)
    assert first_difference(p, p) is None


def test_named_constants_expand():
    assert constant("A3").degree("j") == 3
    assert constant("H28") == parse_poly("j - 16581375", elimination.VARS)
