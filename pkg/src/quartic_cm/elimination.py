"""Exact elimination showing that t = alpha^4 lies in the Hilbert class field:
two Euclidean steps on the three sextics satisfied by t, then resultants with
the modular polynomial of level 2."""

from dataclasses import dataclass, field
from fractions import Fraction

from .elimination_data import CHECKSUM, CONSTANTS, checksum
from .poly import MPoly, NotDivisible, parse_poly, resultant

VARS = ("x", "j", "k", "l")


class TranscriptionMismatch(ArithmeticError):
    def __init__(self, name, computed, expected):
        diff = first_difference(computed, expected)
        super().__init__(f"{name}: first differing coefficient at {diff}")
        self.name = name
        self.diff = diff


class IdentityFailed(ArithmeticError):
    def __init__(self, name, diff):
        super().__init__(f"{name} does not hold; first difference at {diff}")
        self.name = name
        self.diff = diff


class ChecksumMismatch(ValueError):
    pass


def first_difference(p, q):
    """(exponents, value in p, value in q) for the largest differing monomial."""
    keys = set(p.terms) | set(q.terms)
    for e in sorted(keys, reverse=True):
        a, b = p.terms.get(e, 0), q.terms.get(e, 0)
        if a != b:
            return dict(zip(p.vars, e)), a, b
    return None


def constant(name, vars=VARS):
    """Parse a stored polynomial; named sub-polynomials are expanded inline."""
    text = CONSTANTS[name]
    for other in sorted(CONSTANTS, key=len, reverse=True):
        if other != name and other in text and other[0].isupper():
            text = text.replace(other, "(" + CONSTANTS[other] + ")")
    return parse_poly(text, vars)


def _var(name):
    return MPoly.variable(VARS, name)


def pseudo_remainder(a, b, var):
    """(r, u, n) with lc(b)^n a - u b = r and deg r < deg b."""
    lb = b.coefficients_in(var)[-1]
    db = b.degree(var)
    X = _var(var)
    u = MPoly(a.vars)
    n = 0
    while a and a.degree(var) >= db:
        la = a.coefficients_in(var)[-1]
        shift = X ** (a.degree(var) - db)
        a = lb * a - la * shift * b
        u = lb * u + la * shift
        n += 1
    return a, u, n


@dataclass
class EliminationBundle:
    f: MPoly
    g: MPoly
    h: MPoly
    q1: MPoly
    q2: MPoly
    q3: MPoly
    a2: MPoly
    u: MPoly
    a3: MPoly
    b3: MPoly
    A1: MPoly
    A2: MPoly
    A3: MPoly
    Phi2: MPoly
    checks: dict = field(default_factory=dict)


def _expect(name, computed, checks):
    expected = constant(name)
    if computed != expected:
        raise TranscriptionMismatch(name, computed, expected)
    checks[name] = True


def build_elimination():
    """Recompute every intermediate polynomial and compare with the stored ones."""
    if checksum() != CHECKSUM:
        raise ChecksumMismatch("stored constants were edited; checksum differs")
    checks = {}
    f, g, h = constant("f"), constant("g"), constant("h")
    k = _var("k")
    q1 = g - f
    _expect("q1", q1, checks)
    q2 = (k - 720) ** 2 * f - constant("q2_multiplier") * q1
    _expect("q2", q2, checks)
    checks["q2 is quadratic in x"] = q2.degree("x") == 2
    a2 = q2.coefficients_in("x")[2]
    _expect("a2", a2, checks)
    checks["a2 has j^2 coefficient 1"] = a2.coeff(0, 2, 0, 0) == 1
    q3 = h - g
    _expect("q3", q3, checks)

    # a2^4 q3 - U q2 = R; the remainder and U are both divisible by a2^2
    r, U, n = pseudo_remainder(q3, q2, "x")
    cut = a2 ** (n - 2)
    try:
        u = U.exact_div(cut)
        rem = r.exact_div(cut)
    except NotDivisible:
        raise IdentityFailed("a2^2 q3 - u q2 = a3 x + b3", "remainder not divisible by a2^2")
    checks["u is cubic in x"] = u.degree("x") == 3
    checks["a2^2 q3 - u q2 is linear in x"] = rem.degree("x") <= 1
    checks["a2^2 q3 - u q2 = remainder"] = a2 ** 2 * q3 - u * q2 == rem
    cs = rem.coefficients_in("x") + [MPoly(VARS)] * 2
    b3, a3 = cs[0], cs[1]
    A1, A2 = constant("A1"), constant("A2")
    checks["A2 has k^2 l coefficient 1"] = A2.coeff(0, 0, 2, 1) == 1
    expected_a3 = constant("a3_scale").coeff(0, 0, 0, 0) * A1 * A2
    if a3 != expected_a3:
        raise TranscriptionMismatch("a3", a3, expected_a3)
    checks["a3 = -2^20 A1 A2"] = True
    Phi2 = constant("Phi2")
    swapped = Phi2.subs(j=_var("k"), k=_var("j"))
    checks["Phi2 symmetric"] = swapped == Phi2
    return EliminationBundle(f, g, h, q1, q2, q3, a2, u, a3, b3, A1, A2,
                             constant("A3"), Phi2, checks)


def _phi2_kl(Phi2):
    return Phi2.subs(j=_var("k"), k=_var("l"))


def _linear_resultant(cubic, linear, var):
    """Res_var(cubic, a var + b) = sum c_i (-b)^i a^(3-i) (up to sign)."""
    c = cubic.coefficients_in(var)
    b, a = linear.coefficients_in(var)
    n = len(c) - 1
    return sum((ci * (-b) ** i * a ** (n - i) for i, ci in enumerate(c)), MPoly(VARS))


@dataclass
class IdentityReport:
    results: dict
    inner: MPoly = None

    @property
    def ok(self):
        return all(self.results.values())


def verify_resultant_identities(bundle=None):
    bundle = bundle or build_elimination()
    results = {}
    r1 = resultant(bundle.A1, bundle.Phi2, "k")
    expected1 = constant("res1")
    if r1 != expected1:
        raise IdentityFailed("Res_k(A1, Phi2)", first_difference(r1, expected1))
    results["Res_k(A1, Phi2) = -2^32 H12 H7^2 H15^2"] = True
    results["Res_k(A1, Phi2) vanishes at j = 54000"] = not r1.subs(j=54000)

    phi_kl = _phi2_kl(bundle.Phi2)
    inner = resultant(phi_kl, bundle.A2, "l")
    direct = _linear_resultant(phi_kl, bundle.A2, "l")
    results["Res_l(Phi2(k,l), A2) agrees with lc^3 evaluation"] = inner == direct or inner == -direct
    r2 = resultant(bundle.Phi2, inner, "k")
    expected2 = constant("res2")
    if r2 != expected2:
        raise IdentityFailed("Res_k(Phi2, Res_l(Phi2(k,l), A2))", first_difference(r2, expected2))
    results["Res_k(Phi2, Res_l(Phi2(k,l), A2)) = -2^85 A3 H28^2 H60^2 H7^6 H15^6"] = True
    return IdentityReport(results, inner)


def alpha4_small_cases(ctx=None):
    """For d = 7 and 15 the resultants vanish; check alpha^4 directly instead:
    alpha^4 = (31 +- 3 sqrt(-7))/2 and r15(alpha^4) = 0."""
    from .modular import alpha_eta
    from .mp import PrecisionContext, recognize_quadratic
    ctx = ctx or PrecisionContext(128)
    t7 = alpha_eta(7, ctx) ** 4
    q = recognize_quadratic(t7, 7, 100)
    t15 = alpha_eta(15, ctx) ** 4
    r15 = constant("r15", ("t",))
    val = sum(c * t15 ** e[0] for e, c in r15.terms.items())
    return {
        "d=7: alpha^4 = (31 +- 3 sqrt(-7))/2": q.a == Fraction(31, 2) and abs(q.b) == Fraction(3, 2),
        "d=15: r15(alpha^4) = 0": abs(val) < ctx.eps * max(1, abs(t15)) ** 4,
    }
