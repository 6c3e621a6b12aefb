"""Binary quadratic forms of discriminant -d with -d = 1 (mod 8): reduction,
class numbers, and the class representatives (c, v) with 16c | v^2 + d."""

import math
from dataclasses import dataclass
from functools import lru_cache


class BadDiscriminant(ValueError):
    pass


class NotPositiveDefinite(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


def check_discriminant(d):
    if not isinstance(d, int) or d <= 0 or (-d) % 8 != 1:
        raise BadDiscriminant(f"-{d} is not a negative discriminant = 1 (mod 8)")


def _factor(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _divisors(n):
    divs = [1]
    for p, e in _factor(n).items():
        divs = [x * p ** k for x in divs for k in range(e + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self):
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    def is_reduced(self):
        a, b, c = self.a, self.b, self.c
        return abs(b) <= a <= c and not (b < 0 and (-b == a or a == c))

    def root(self, ctx):
        """Root of Q(x, 1) = 0 in the upper half plane."""
        mp = ctx.mp
        return mp.mpc(-self.b, mp.sqrt(-self.disc)) / (2 * self.a)

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __str__(self):
        return f"[{self.a}, {self.b}, {self.c}]"


def reduce_form(q):
    a, b, c = q
    if a <= 0 or b * b - 4 * a * c >= 0:
        raise NotPositiveDefinite(f"{q} is not positive definite")
    while True:
        if not -a < b <= a:
            k = (a - b) // (2 * a)
            b, c = b + 2 * a * k, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)


@lru_cache(maxsize=None)
def enumerate_reduced(d):
    """All reduced primitive forms of discriminant -d and their number h."""
    check_discriminant(d)
    forms = []
    a = 1
    while 3 * a * a <= d:
        for b in range(-a + 1, a + 1):
            if (b * b + d) % (4 * a):
                continue
            c = (b * b + d) // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            forms.append(QuadForm(a, b, c))
        a += 1
    return tuple(forms), len(forms)


def class_number(d):
    return enumerate_reduced(d)[1]


@dataclass(frozen=True)
class Discriminant:
    d: int
    f: int
    d1: int
    h: int
    div3: bool


@lru_cache(maxsize=None)
def discriminant_info(d):
    check_discriminant(d)
    f = 1
    for p, e in _factor(d).items():
        f *= p ** (e // 2)
    return Discriminant(d, f, d // (f * f), class_number(d), d % 3 == 0)


def choose_v0(d):
    check_discriminant(d)
    return 3 if d % 16 == 7 else 1


@dataclass(frozen=True)
class ClassRep:
    d: int
    c: int
    v: int

    @property
    def form_Qc(self):
        return QuadForm(self.c, -self.v, (self.v ** 2 + self.d) // (4 * self.c))

    @property
    def form_Q2c(self):
        return QuadForm(2 * self.c, -self.v, (self.v ** 2 + self.d) // (8 * self.c))

    @property
    def reduced(self):
        return reduce_form(self.form_Qc)

    @property
    def reduced_2(self):
        return reduce_form(self.form_Q2c)

    def w(self, ctx):
        """(v + sqrt(-d))/2."""
        mp = ctx.mp
        return mp.mpc(self.v, mp.sqrt(self.d)) / 2

    def tau(self, ctx):
        """(v + sqrt(-d))/(2c), the root of Q_c(x, 1) = 0."""
        return self.w(ctx) / self.c

    def is_valid(self):
        n = self.v ** 2 + self.d
        return (self.c > 0 and self.v % 2 == 1 and n % (16 * self.c) == 0
                and math.gcd(self.c, 6 * self.d) == 1)


def t_class(d):
    """Reduced form of the class of the prime above 2 fixed by v0."""
    v0 = choose_v0(d)
    return reduce_form(QuadForm(2, -v0, (v0 * v0 + d) // 8))


@lru_cache(maxsize=None)
def class_representatives(d, modulus=8, bound=None):
    """One (c, v) per class with gcd(c, 6d) = 1, 16c | v^2 + d and
    v = v0 (mod modulus), searched by increasing |v|."""
    forms, h = enumerate_reduced(d)
    v0 = choose_v0(d)
    if bound is None:
        bound = 64 * math.sqrt(d) * h
    best = {}
    k = 0
    while len(best) < h:
        vs = [v0] if k == 0 else [v0 + modulus * k, v0 - modulus * k]
        if min(abs(v) for v in vs) > bound:
            raise SearchExhausted(f"d={d}: only {len(best)} of {h} classes found with |v| <= {bound:.0f}")
        for v in vs:
            n = v * v + d
            if n % 16:
                continue
            for c in _divisors(n // 16):
                if math.gcd(c, 6 * d) != 1:
                    continue
                rep = ClassRep(d, c, v)
                key = rep.reduced
                old = best.get(key)
                if old is None or (c, abs(v)) < (old.c, abs(old.v)):
                    best[key] = rep
        k += 1
    return tuple(sorted(best.values(), key=lambda r: (r.c, abs(r.v), -r.v)))


def pair_index(reps):
    """Index of the rep whose class is that of Q_2c for each rep."""
    by_form = {r.reduced: i for i, r in enumerate(reps)}
    return [by_form[r.reduced_2] for r in reps]
