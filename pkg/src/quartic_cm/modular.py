"""Dedekind eta, the Schlafli functions f, f1, f2, the j-function, Weber
singular moduli and the values beta_c, alpha_{1,c} attached to class reps."""

from dataclasses import dataclass

from .qf import QuadForm, check_discriminant, choose_v0, ClassRep


class NotUpperHalfPlane(ValueError):
    pass


class BadRep(ValueError):
    pass


@dataclass(frozen=True)
class EtaValue:
    value: object
    arg: object
    multiplier: object


def _check_tau(tau):
    if not tau.imag > 0:
        raise NotUpperHalfPlane(f"Im(tau) = {tau.imag} is not positive")


def eta(tau, ctx):
    """eta(tau) = multiplier * eta(arg) with arg in the fundamental domain."""
    mp = ctx.mp
    tau = mp.mpc(tau)
    _check_tau(tau)
    one = mp.mpf(1) - mp.mpf(2) ** (-ctx.bits // 2)
    t, shift, mult = tau, 0, mp.mpc(1)
    while True:
        n = int(mp.nint(t.real))
        t -= n
        shift += n
        if abs(t) >= one:
            break
        # eta(-1/s) = sqrt(-i s) eta(s)
        t = -1 / t
        mult *= mp.sqrt(mp.mpc(0, -1) * t)
    mult *= mp.expjpi(mp.mpf(shift % 24) / 12)
    q24 = mp.expjpi(t / 12)
    q = q24 ** 24
    aq = abs(q)
    cutoff = mp.mpf(2) ** (-ctx.bits - 8) * (1 - aq)
    total = mp.mpc(1)
    qn = mp.mpc(1)     # q^n
    lo = mp.mpc(1)     # q^{n(3n-1)/2}
    n = 0
    while True:
        n += 1
        lo *= qn ** 3 * q          # exponent grows by 3n - 2
        qn *= q
        term = lo + lo * qn        # q^{n(3n-1)/2} + q^{n(3n+1)/2}
        total += -term if n % 2 else term
        if abs(lo) < cutoff:
            break
    return EtaValue(mult * q24 * total, t, mult)


def eta_value(tau, ctx):
    return eta(tau, ctx).value


def schlafli(tau, ctx):
    mp = ctx.mp
    tau = mp.mpc(tau)
    e = eta_value(tau, ctx)
    f = mp.expjpi(mp.mpf(-1) / 24) * eta_value((tau + 1) / 2, ctx) / e
    f1 = eta_value(tau / 2, ctx) / e
    f2 = mp.sqrt(2) * eta_value(2 * tau, ctx) / e
    return f, f1, f2


def jfun(tau, ctx):
    mp = ctx.mp
    tau = mp.mpc(tau)
    x = 16 * (eta_value(2 * tau, ctx) / eta_value(tau, ctx)) ** 8
    return ((x ** 3 + 16) / x) ** 3


def zeta48(e, ctx):
    mp = ctx.mp
    return mp.expjpi(mp.mpf(e % 48) / 24)


def epsilon_d(d):
    """(-1)^((-d-1)/8)."""
    return -1 if ((d + 1) // 8) % 2 else 1


@dataclass(frozen=True)
class WeberModulus:
    form: QuadForm
    value: object
    case_tag: str
    zeta_exponent: int


def weber_modulus(q, d, ctx):
    check_discriminant(d)
    a, b, c = q
    if b * b - 4 * a * c != -d:
        raise ValueError(f"{q} does not have discriminant -{d}")
    tau = q.root(ctx)
    f, f1, f2 = schlafli(tau, ctx)
    if a % 2 == 0 and c % 2 == 0:
        tag, e, sign, val = "f", b * (a - c - a * c * c), 1, f
    elif a % 2 == 0:
        tag, e, sign, val = "f1", b * (a - c - a * c * c), epsilon_d(d), f1
    else:
        tag, e, sign, val = "f2", b * (a - c + a * a * c), epsilon_d(d), f2
    e %= 48
    return WeberModulus(q, sign * zeta48(e, ctx) * val, tag, e)


def _check_rep(rep):
    if not rep.is_valid():
        raise BadRep(f"({rep.c}, {rep.v}) is not a valid representative for d={rep.d}")


def beta_c(rep, ctx):
    """2 i^{-vc} f1(w/2c)^2 / f(w/2c)^2."""
    _check_rep(rep)
    mp = ctx.mp
    f, f1, _ = schlafli(rep.w(ctx) / (2 * rep.c), ctx)
    return 2 * mp.mpc(0, 1) ** ((-rep.v * rep.c) % 4) * f1 ** 2 / f ** 2


def fw_pair(rep, ctx):
    """(f_w(Q_c), f_w(Q_2c)) through the closed forms in (c, v)."""
    _check_rep(rep)
    v, c, d = rep.v, rep.c, rep.d
    n = v * v + d
    w = rep.w(ctx)
    f2 = schlafli(w / c, ctx)[2]
    f = schlafli(w / (2 * c), ctx)[0]
    fq = epsilon_d(d) * zeta48(-v * c, ctx) * f2
    e2 = -2 * v * c * (1 - n // 16 - n * n // 64)
    return fq, zeta48(e2, ctx) * f


def alpha1_c(rep, ctx, beta=None, fq2=None):
    if beta is None:
        beta = beta_c(rep, ctx)
    if fq2 is None:
        fq2 = fw_pair(rep, ctx)[1]
    return beta ** 2 * fq2 ** 6 / 4


def principal_rep(d):
    check_discriminant(d)
    return ClassRep(d, 1, choose_v0(d))


def alpha_eta(d, ctx):
    """alpha = zeta8^{-1} eta(w/4)^2 / eta(w)^2 at w = (v0 + sqrt(-d))/2."""
    mp = ctx.mp
    w = principal_rep(d).w(ctx)
    return mp.expjpi(mp.mpf(-1) / 4) * (eta_value(w / 4, ctx) / eta_value(w, ctx)) ** 2


def j_exponent(d):
    """j with alpha_1 = zeta8^j alpha."""
    if choose_v0(d) == 3:
        return (3 * (d + 1) // 8 + 2) % 8
    return ((d + 1) // 8 + 3) % 8


@dataclass
class JChainReport:
    d: int
    discrepancies: dict
    max_discrepancy: float
    ok: bool


def j_chain_check(d, ctx):
    """Compare j(w), j(w/2), j(w/4) from the eta evaluator with the rational
    expressions in alpha and beta."""
    mp = ctx.mp
    rep = principal_rep(d)
    w = rep.w(ctx)
    a = alpha_eta(d, ctx)
    b = beta_c(rep, ctx)
    a4, b4 = a ** 4, b ** 4
    jw, jw2, jw4 = jfun(w, ctx), jfun(w / 2, ctx), jfun(w / 4, ctx)
    formulas = {
        "j(w) alpha": (jw, (a4 ** 2 - 16 * a4 + 16) ** 3 / (a4 ** 2 - 16 * a4)),
        "j(w/2) alpha": (jw2, (a4 ** 2 - 16 * a4 + 256) ** 3 / (a4 ** 2 * (a4 - 16) ** 2)),
        "j(w/4) alpha": (jw4, (a4 ** 2 - 256 * a4 + 4096) ** 3 / (a4 ** 4 * (16 - a4))),
        "j(w/4) beta": (jw4, (b4 ** 2 - 256 * b4 + 4096) ** 3 / (b4 ** 4 * (16 - b4))),
        "j(w) beta": (jw, (b4 ** 2 + 224 * b4 + 256) ** 3 / (b4 * (b4 - 16) ** 4)),
    }
    disc = {k: float(abs(x - y) / max(1, abs(x))) for k, (x, y) in formulas.items()}
    worst = max(disc.values())
    return JChainReport(d, disc, worst, worst < float(ctx.eps))
