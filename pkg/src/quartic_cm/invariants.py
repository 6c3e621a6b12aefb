"""Integer minimal polynomials built as numeric products over class
representatives, rounded with a certified margin, plus structural checks."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .mp import PrecisionContext, RoundingFailed, round_poly_to_int, with_retries
from .modular import alpha1_c, beta_c, fw_pair, jfun
from .poly import (IntPolynomial, NotDivisible, bareiss_det, gray_code,
                   mobius_transform, palindrome_scaled, product_of_linear_factors,
                   sylvester_matrix)
from .qf import class_representatives, discriminant_info, enumerate_reduced


class SelectionFailed(ArithmeticError):
    pass


class DivisibilityFailed(ArithmeticError):
    pass


class SignSearchExhausted(ArithmeticError):
    pass


class MismatchH(ArithmeticError):
    pass


class Not3Divisible(ValueError):
    pass


def default_context(d):
    return PrecisionContext.for_discriminant(d, discriminant_info(d).h)


@dataclass(frozen=True)
class RepValues:
    rep: object
    beta: object
    fq: object
    fq2: object
    alpha1: object


@lru_cache(maxsize=256)
def rep_values(d, ctx, modulus=8):
    out = []
    for rep in class_representatives(d, modulus):
        b = beta_c(rep, ctx)
        fq, fq2 = fw_pair(rep, ctx)
        out.append(RepValues(rep, b, fq, fq2, alpha1_c(rep, ctx, b, fq2)))
    return tuple(out)


def _rounded(roots, ctx):
    return round_poly_to_int(product_of_linear_factors(roots).coeffs, ctx)


def _with_conj(ctx, values):
    mp = ctx.mp
    return list(values) + [mp.conj(z) for z in values]


def _certified(builder, d, ctx):
    """Run builder(ctx) with precision doubling; return (poly, worst distance)."""
    ctx = ctx or default_context(d)
    return with_retries(builder, ctx)


def class_poly_H(d, ctx=None, certificate=False):
    forms, _ = enumerate_reduced(d)

    def build(c):
        return _rounded([jfun(q.root(c), c) for q in forms], c)

    p, worst = _certified(build, d, ctx)
    return (p, worst) if certificate else p


def min_poly_beta_half(d, ctx=None, certificate=False):
    def build(c):
        return _rounded(_with_conj(c, [r.beta / 2 for r in rep_values(d, c)]), c)

    p, worst = _certified(build, d, ctx)
    h = discriminant_info(d).h
    if mobius_transform(p, (1, 1, 1, -1)) != p * 2 ** h:
        raise SelectionFailed(f"d={d}: b_d is not stable under x -> (x+1)/(x-1)")
    return (p, worst) if certificate else p


def min_poly_alpha1(d, ctx=None, certificate=False):
    def build(c):
        return _rounded(_with_conj(c, [r.alpha1 for r in rep_values(d, c)]), c)

    p, worst = _certified(build, d, ctx)
    return (p, worst) if certificate else p


def min_poly_unit_q(d, ctx=None, certificate=False):
    def build(c):
        return _rounded([r.fq2 ** 6 for r in rep_values(d, c)], c)

    p, worst = _certified(build, d, ctx)
    return (p, worst) if certificate else p


def weber_poly(d, ctx=None, certificate=False, q=None):
    """Minimal polynomial of f_w(Q_1), or of its cube when 3 | d."""
    k = 3 if d % 3 == 0 else 1

    def build(c):
        return _rounded([r.fq ** k for r in rep_values(d, c)], c)

    p, worst = _certified(build, d, ctx)
    if q is None:
        q = min_poly_unit_q(d, ctx)
    try:
        q.compose_power(6 // k).exact_div(p)
    except NotDivisible as e:
        raise DivisibilityFailed(f"d={d}: W does not divide q(x^{6 // k})") from e
    return (p, worst) if certificate else p


def product_poly_t(d, ctx=None, certificate=False):
    """Minimal polynomial of f_w(Q_1) f_w(Q_2) for 3 | d.

    The products only form a Galois-stable set when every v is congruent to
    v0 mod 24, so the representatives are searched on that progression."""
    if d % 3 or d <= 15:
        raise Not3Divisible(f"d={d}: needs 3 | d and d > 15")

    def build(c):
        roots = [r.fq * r.fq2 for r in rep_values(d, c, 24)]
        p, worst = _rounded(roots, c)
        if any(abs(z.imag) < c.eps for z in roots):
            raise SelectionFailed(f"d={d}: t_d has a real root")
        return p, worst

    p, worst = _certified(build, d, ctx)
    return (p, worst) if certificate else p


def gamma_values(values):
    return [b * (b + 2) / (4 * (b - 2)) for b in (r.beta for r in values)]


def _sign_search(roots, ctx, paired):
    """First sign pattern s (s_0 = +1) for which prod (x - s_k r_k), together
    with conjugates when paired, rounds to an integer polynomial."""
    mp = ctx.mp
    n = len(roots)
    signs = [1] * n
    trace = sum(roots)
    for bit, _ in gray_code(n - 1):
        if bit is not None:
            k = bit + 1
            trace -= 2 * signs[k] * roots[k]
            signs[k] = -signs[k]
        t = 2 * trace.real if paired else trace
        if abs(mp.mpc(t) - mp.nint(mp.re(t))) > ctx.round_tol:
            continue
        chosen = [s * z for s, z in zip(signs, roots)]
        try:
            p, worst = _rounded(_with_conj(ctx, chosen) if paired else chosen, ctx)
        except RoundingFailed:
            continue
        return p, worst, tuple(signs)
    raise SignSearchExhausted(f"no sign pattern out of {2 ** (n - 1)} gives an integer polynomial")


def gamma_polys(d, ctx=None, certificate=False):
    """(u, r): minimal polynomials of gamma and of sqrt(gamma)."""

    def build(c):
        mp = c.mp
        gs = gamma_values(rep_values(d, c))
        u, wu = _rounded(gs, c)
        try:
            r, wr, signs = _sign_search([mp.sqrt(g) for g in gs], c, paired=False)
        except SignSearchExhausted:
            raise RoundingFailed(-1, 1.0)
        return (u, r, signs), max(wu, wr)

    (u, r, signs), worst = _certified(build, d, ctx)
    h = discriminant_info(d).h
    x2 = u.compose_power(2)
    rr = r * r.compose(IntPolynomial([0, -1]))
    if rr != x2 and rr != -x2:
        raise SelectionFailed(f"d={d}: r(x) r(-x) != +-u(x^2)")
    if abs(u.coeffs[0]) != 1:
        raise SelectionFailed(f"d={d}: gamma is not a unit")
    if certificate:
        return u, r, {"worst": worst, "signs": signs, "degree_r": r.degree, "h": h}
    return u, r


def gamma_signs(d, ctx):
    """Signs s_c such that prod (x - s_c sqrt(gamma_c)) has integer coefficients."""
    mp = ctx.mp
    gs = gamma_values(rep_values(d, ctx))
    return _sign_search([mp.sqrt(g) for g in gs], ctx, paired=False)[2]


def split_A(d, ctx=None):
    """A_1 with A_1(x) A_1(-x) = A_d(x^2)."""
    A = min_poly_alpha1(d, ctx)

    def build(c):
        mp = c.mp
        roots = [mp.sqrt(r.alpha1) for r in rep_values(d, c)]
        try:
            p, worst, _ = _sign_search(roots, c, paired=True)
        except SignSearchExhausted:
            raise RoundingFailed(-1, 1.0)
        return p, worst

    A1, _ = _certified(build, d, ctx)
    if A1 * A1.compose(IntPolynomial([0, -1])) != A.compose_power(2):
        raise SelectionFailed(f"d={d}: A_1(x) A_1(-x) != A_d(x^2)")
    return A1


def unit_poly_2gamma_minus_1(d, ctx=None):
    def build(c):
        return _rounded([2 * g - 1 for g in gamma_values(rep_values(d, c))], c)

    return _certified(build, d, ctx)[0]


def _interpolate(xs, ys):
    """Exact Lagrange interpolation; returns ascending Fraction coefficients."""
    n = len(xs)
    out = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            out[k] += Fraction(ys[i]) * basis[k] / denom
    return out


def _j4_numerator(var="y"):
    y = IntPolynomial([0, 1], var)
    return 16 * (y ** 8 - 16 * y ** 4 + 16) ** 3, y ** 16 * (1 - y ** 4)


@dataclass
class HCrossCheck:
    d: int
    constant: int
    resultant: IntPolynomial
    ok: bool


def crosscheck_H_from_b(d, ctx=None, b=None, H=None):
    """Res_y(b(y), y^16 (1 - y^4) x - 16 (y^8 - 16 y^4 + 16)^3) = const H(x)^2."""
    b = b or min_poly_beta_half(d, ctx)
    H = H or class_poly_H(d, ctx)
    num, den = _j4_numerator()
    n = b.degree
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        g = den * x - num
        ys.append(bareiss_det(sylvester_matrix(list(b.coeffs), list(g.coeffs))))
    coeffs = _interpolate(xs, ys)
    if any(c.denominator != 1 for c in coeffs):
        raise MismatchH(f"d={d}: resultant is not integral")
    res = IntPolynomial([int(c) for c in coeffs])
    H2 = H * H
    const = res.lc()
    if res.degree != H2.degree or res != H2 * const:
        raise MismatchH(f"d={d}: resultant is not a constant times H^2")
    return HCrossCheck(d, const, res, True)


def G_poly(d, H=None, ctx=None):
    """x^{16h} (1 - x^4)^h H(16 (x^8 - 16 x^4 + 16)^3 / (x^16 (1 - x^4)))."""
    H = H or class_poly_H(d, ctx)
    num, den = _j4_numerator("x")
    h = H.degree
    out = IntPolynomial([])
    for k, c in enumerate(H.coeffs):
        if c:
            out = out + num ** k * den ** (h - k) * c
    return out


def check_b_divides_G(d, b=None, H=None, ctx=None):
    b = b or min_poly_beta_half(d, ctx)
    G = G_poly(d, H, ctx)
    G.exact_div(b)
    return True


@dataclass
class InvariantBundle:
    d: object
    H: IntPolynomial
    b: IntPolynomial
    A: IntPolynomial
    q: IntPolynomial
    W: IntPolynomial
    t: object
    u: IntPolynomial
    r: IntPolynomial
    certificates: dict = field(default_factory=dict)

    def structural_checks(self):
        h = self.d.h
        x_neg = IntPolynomial([0, -1])
        checks = {
            "b(0) = 2^h": self.b.coeffs[0] == 2 ** h,
            "A(0) = 2^2h": self.A.coeffs[0] == 2 ** (2 * h),
            "|q(0)| = 1": abs(self.q.coeffs[0]) == 1,
            "|W(0)| = 1": abs(self.W.coeffs[0]) == 1,
            "b mobius": mobius_transform(self.b, (1, 1, 1, -1)) == self.b * 2 ** h,
            "A palindrome": palindrome_scaled(self.A, 4) == self.A * 2 ** (2 * h),
            "degrees": (self.H.degree, self.b.degree, self.A.degree, self.q.degree,
                        self.W.degree, self.u.degree) == (h, 2 * h, 2 * h, h, h, h),
            "r(x)r(-x) = +-u(x^2)": (self.r * self.r.compose(x_neg)) in
                (self.u.compose_power(2), -self.u.compose_power(2)),
        }
        return checks

    def polys(self):
        out = {"H": self.H, "b": self.b, "A": self.A, "q": self.q, "W": self.W,
               "u": self.u, "r": self.r}
        if self.t is not None:
            out["t"] = self.t
        return out


@lru_cache(maxsize=64)
def invariant_bundle(d, ctx=None):
    info = discriminant_info(d)
    ctx = ctx or default_context(d)
    certs = {}
    H, certs["H"] = class_poly_H(d, ctx, True)
    b, certs["b"] = min_poly_beta_half(d, ctx, True)
    A, certs["A"] = min_poly_alpha1(d, ctx, True)
    q, certs["q"] = min_poly_unit_q(d, ctx, True)
    W, certs["W"] = weber_poly(d, ctx, True, q=q)
    t = None
    if d % 3 == 0 and d > 15:
        t, certs["t"] = product_poly_t(d, ctx, True)
    u, r, cert = gamma_polys(d, ctx, True)
    certs["u,r"] = cert["worst"]
    return InvariantBundle(info, H, b, A, q, W, t, u, r, certs)

