"""Solutions pi^4 + xi^4 = 1 in ring class fields, the relation between xi
and a conjugate of pi, the Legendre lambda values, and the fourth-power
identities for beta."""

from dataclasses import dataclass, field
from fractions import Fraction

from .curves import ConjugateSearchFailed, beta_conjugates, match_unique
from .invariants import default_context, min_poly_beta_half, rep_values
from .modular import alpha_eta, j_exponent, jfun, principal_rep, schlafli
from .mp import CertificationFailed, QuadFieldElement, recognize_quadratic, round_poly_to_int
from .poly import product_of_linear_factors
from .qf import choose_v0, discriminant_info


class NoMatch(ArithmeticError):
    pass


class MultipleMatches(ArithmeticError):
    pass


def pi_exponent(d):
    """a with pi = i^a f2(w/2)^2 / f(w/2)^2."""
    if choose_v0(d) == 3:
        return ((-3 * d + 5) // 16) % 4
    return ((-d + 31) // 16) % 4


def _poly_residual(p, z):
    """|p(z)| and the same divided by sum |c_k| |z|^k."""
    val, scale = 0, 0
    for c in reversed(p.coeffs):
        val = val * z + c
    az = abs(z)
    for c in reversed(p.coeffs):
        scale = scale * az + abs(c)
    return abs(val), abs(val) / scale


@dataclass
class FermatSolution:
    d: object
    pi: object
    xi: object
    j_exponent: int
    residual: float
    minpoly_residuals: tuple
    conjugate_index: int = None
    checks: dict = field(default_factory=dict)
    bits: int = 0

    def to_json(self):
        return {
            "d": self.d.d,
            "pi": [str(self.pi.real), str(self.pi.imag)],
            "xi": [str(self.xi.real), str(self.xi.imag)],
            "j": self.j_exponent,
            "residual": self.residual,
            "minpoly_residuals": list(self.minpoly_residuals),
            "conjugate_index": self.conjugate_index,
            "checks": self.checks,
            "bits": self.bits,
        }


def pi_xi(d, ctx):
    mp = ctx.mp
    w = principal_rep(d).w(ctx)
    f, f1, f2 = schlafli(w / 2, ctx)
    i = mp.mpc(0, 1)
    pi = i ** pi_exponent(d) * f2 ** 2 / f ** 2
    xi = i ** ((-choose_v0(d)) % 4) * f1 ** 2 / f ** 2
    return pi, xi


def fermat_solution(d, ctx=None):
    """pi, xi with pi^4 + xi^4 = 1, both roots of b_d, certified numerically."""
    info = discriminant_info(d)
    ctx = ctx or default_context(d)
    mp = ctx.mp
    tol = ctx.eps
    pi, xi = pi_xi(d, ctx)
    residual = abs(pi ** 4 + xi ** 4 - 1)
    b = min_poly_beta_half(d, ctx)
    rp, rx = _poly_residual(b, pi)[0], _poly_residual(b, xi)[0]
    principal = rep_values(d, ctx)[0]
    checks = {
        "pi = beta/alpha_1": float(abs(pi - principal.beta / principal.alpha1)),
        "xi = beta/2": float(abs(xi - principal.beta / 2)),
        "|b_d(0)| = 2^h": abs(b.coeffs[0]) == 2 ** info.h,
    }
    # pi-conjugates beta_c/alpha_1c and xi-conjugates beta_c/2 are the same multiset
    pis = [r.beta / r.alpha1 for r in rep_values(d, ctx)]
    pis += [mp.conj(z) for z in pis]
    xis = beta_conjugates(d, ctx)
    xis = [z / 2 for z in xis]
    unused = list(range(len(xis)))
    for z in pis:
        k = min(unused, key=lambda i: abs(xis[i] - z))
        if abs(xis[k] - z) >= tol:
            break
        unused.remove(k)
    checks["pi-conjugates = xi-conjugates"] = not unused
    sol = FermatSolution(info, pi, xi, j_exponent(d), float(residual), (float(rp), float(rx)),
                         checks=checks, bits=ctx.bits)
    bad = [name for name, v in (("pi^4 + xi^4 - 1", residual), ("b_d(pi)", rp), ("b_d(xi)", rx),
                                ("pi - beta/alpha_1", checks["pi = beta/alpha_1"]),
                                ("xi - beta/2", checks["xi = beta/2"])) if v >= tol]
    if bad or not checks["|b_d(0)| = 2^h"] or not checks["pi-conjugates = xi-conjugates"]:
        raise CertificationFailed(f"fermat_solution d={d}: failed {bad or checks}")
    return sol


def pi_conjugates(d, ctx):
    mp = ctx.mp
    pis = [r.beta / r.alpha1 for r in rep_values(d, ctx)]
    return pis + [mp.conj(z) for z in pis]


@dataclass
class ArtinReport:
    d: int
    index: int
    rho: object
    distances: list
    sign_combinations: dict


def artin_relation_check(d, ctx=None):
    """The unique conjugate rho of pi with xi = (rho + 1)/(rho - 1)."""
    ctx = ctx or default_context(d)
    sol = fermat_solution(d, ctx)
    conj = pi_conjugates(d, ctx)
    xi = sol.xi
    scale = max(1, abs(xi))
    try:
        k, dists = match_unique(conj, lambda r: abs(xi - (r + 1) / (r - 1)) / scale, ctx)
    except ConjugateSearchFailed as exc:
        if "no conjugate" in str(exc):
            raise NoMatch(f"d={d}: {exc}") from exc
        raise MultipleMatches(f"d={d}: {exc}") from exc
    combos = {}
    for s1 in (1, -1):
        for s2 in (1, -1):
            combos[f"{'+' if s1 > 0 else '-'}pi{'+' if s2 > 0 else '-'}xi"] = \
                float(abs(s1 * sol.pi + s2 * sol.xi - 1))
    sol.conjugate_index = k
    return ArtinReport(d, k, conj[k], dists, combos)


@dataclass
class LambdaReport:
    d: int
    lambdas: tuple
    eq_residuals: tuple
    power_residuals: dict
    ok: bool


def _rel(a, b):
    return abs(a - b) / max(1, abs(a), abs(b))


def legendre_lambdas(d, ctx=None):
    """lambda_1 = alpha^4/16, lambda_2 = 1 - lambda_1, lambda_3 = 1 - 1/lambda_1,
    each a root of 2^8 (L^2 - L + 1)^3 - j(w/2) (L^2 - L)^2."""
    ctx = ctx or default_context(d)
    a = alpha_eta(d, ctx)
    r = rep_values(d, ctx)[0]
    a1, beta = r.alpha1, r.beta
    l1 = a ** 4 / 16
    l2 = 1 - l1
    l3 = 1 - 1 / l1
    j2 = jfun(principal_rep(d).w(ctx) / 2, ctx)
    res = []
    for lam in (l1, l2, l3):
        u = lam * lam - lam
        res.append(float(_rel(2 ** 8 * (u + 1) ** 3, j2 * u * u)))
    powers = {
        "lambda_1 = -(alpha_1/2)^4": float(_rel(l1, -(a1 / 2) ** 4)),
        "lambda_2 = (alpha_1/beta)^4": float(_rel(l2, (a1 / beta) ** 4)),
        "lambda_3 = (2/beta)^4": float(_rel(l3, (2 / beta) ** 4)),
    }
    tol = float(ctx.eps)
    ok = max(res) < tol and max(powers.values()) < tol
    if not ok:
        raise CertificationFailed(f"legendre_lambdas d={d}: residuals {res}, {powers}")
    return LambdaReport(d, (l1, l2, l3), tuple(res), powers, ok)


def modular_sextic(x, j):
    """(x^2 - 16x + 16)^3 - j x (x - 16): its roots are the alpha^4 over j(w)."""
    return (x * x - 16 * x + 16) ** 3 - j * x * (x - 16)


def sextic_roots_in_beta(beta, i):
    b2, b4 = beta * beta, beta ** 4
    return [
        i * (beta - 2 * i) ** 4 / (beta * (b2 - 4)),
        -i * (beta + 2 * i) ** 4 / (beta * (b2 - 4)),
        16 * b4 / (b4 - 16),
        -256 / (b4 - 16),
        (beta + 2) ** 4 / (beta * (b2 + 4)),
        -(beta - 2) ** 4 / (beta * (b2 + 4)),
    ]


@dataclass
class FourthPowerReport:
    d: int
    conjugate_index: int
    eq_plus: float
    eq_minus: float
    unit_norm: float
    sextic_residuals: list
    sextic_distinct: bool
    ok: bool


def fourth_power_check(d, ctx=None):
    """-beta(beta^2 + 4) and beta^3(beta^2 - 4) as explicit fourth powers,
    beta(beta - 2)/8 as a unit, and the six roots of the modular sextic."""
    ctx = ctx or default_context(d)
    mp = ctx.mp
    beta = rep_values(d, ctx)[0].beta
    conj = beta_conjugates(d, ctx)
    rhs = -beta * (beta * beta + 4)
    k, _ = match_unique(conj, lambda bk: _rel((bk / 2 * (beta / 2 - 1)) ** 4, rhs), ctx)
    bk = conj[k]
    # the conjugate beta^{tau^2 sigma} is the complex conjugate of beta^{tau^2}
    minus = _rel(beta ** 3 * (beta * beta - 4),
                 (4 * beta * mp.conj(bk) / (bk * (beta - 2))) ** 4)
    plus = _rel((bk / 2 * (beta / 2 - 1)) ** 4, rhs)
    norm = mp.mpf(1)
    for z in conj:
        norm *= abs(z * (z - 2) / 8)
    unit = abs(norm - 1)
    j = jfun(principal_rep(d).w(ctx), ctx)
    roots = sextic_roots_in_beta(beta, mp.mpc(0, 1))
    scale = max(1, abs(j))
    sextic = [float(abs(modular_sextic(x, j)) / (scale * max(1, abs(x)) ** 6)) for x in roots]
    sep = min(abs(roots[p] - roots[q]) for p in range(6) for q in range(p + 1, 6))
    distinct = sep > mp.mpf(2) ** (-(ctx.bits // 8))
    tol = float(ctx.eps)
    ok = max(plus, minus, unit) < tol and max(sextic) < tol and distinct
    return FourthPowerReport(d, k, float(plus), float(minus), float(unit), sextic, distinct, ok)


def exact_d7_checks(ctx=None):
    """For d = 7 everything lives in Q(sqrt(-7)) and can be checked exactly."""
    from .mp import PrecisionContext
    ctx = ctx or PrecisionContext(128)
    pi_n, xi_n = pi_xi(7, ctx)
    pi = recognize_quadratic(pi_n, 7, 100)
    xi = recognize_quadratic(xi_n, 7, 100)
    beta = 2 * xi
    bc = beta.conjugate()
    out = {
        "pi = (1 - sqrt(-7))/2": pi == QuadFieldElement(Fraction(1, 2), Fraction(-1, 2), 7),
        "xi = (1 + sqrt(-7))/2": xi == QuadFieldElement(Fraction(1, 2), Fraction(1, 2), 7),
        "pi^4 + xi^4 = 1": pi ** 4 + xi ** 4 == 1,
        "xi = (pi + 1)/(pi - 1)": xi == (pi + 1) / (pi - 1),
        "((beta/2)(beta/2 - 1))^4 = -beta(beta^2 + 4)":
            ((beta / 2) * (beta / 2 - 1)) ** 4 == -beta * (beta * beta + 4),
        "beta^3(beta^2 - 4) = (4 beta conj(beta)/(beta(beta - 2)))^4":
            beta ** 3 * (beta * beta - 4) == (4 * beta * bc / (beta * (beta - 2))) ** 4,
        "N(beta(beta - 2)/8) = 1": (beta * (beta - 2) / 8).norm() == 1,
    }
    return out


def conductor_unit_check(d1, f, ctx=None):
    """pi_{f^2 d1}/pi_{d1}: the integer polynomial with roots the conjugates of
    the quotient, returned with its constant term (a unit has +-1)."""
    d = f * f * d1
    ctx = ctx or default_context(d)
    mp = ctx.mp
    p1 = pi_xi(d1, ctx)[0]
    qs = [r.beta / r.alpha1 / p1 for r in rep_values(d, ctx)]
    qs += [mp.conj(z) for z in qs]
    poly, worst = round_poly_to_int(product_of_linear_factors(qs).coeffs, ctx)
    return poly, abs(poly.coeffs[0]) == 1 and poly.coeffs[-1] == 1
