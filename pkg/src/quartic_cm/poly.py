"""Polynomials: dense univariate over any coefficient ring, sparse
multivariate over the integers, rational functions over Q(i), and
resultants by fraction-free elimination."""

import ast
from fractions import Fraction

from .mp import QuadFieldElement, gaussian


class NotDivisible(ArithmeticError):
    def __init__(self, remainder=None):
        super().__init__("division leaves a nonzero remainder")
        self.remainder = remainder


class ZeroInput(ValueError):
    pass


class ZeroDeterminant(ValueError):
    pass


def _exact_div(a, b):
    if isinstance(b, int) and b == 1:
        return a
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise NotDivisible(r)
        return q
    if hasattr(a, "exact_div"):
        return a.exact_div(b)
    if isinstance(a, int) and hasattr(b, "exact_div"):
        return type(b).constant_like(b, a).exact_div(b)
    return a / b


def _is_int_list(coeffs):
    return all(type(c) is int for c in coeffs)


class Poly:
    """Dense univariate polynomial, coefficients in ascending degree order."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="x"):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)
        self.var = var

    @classmethod
    def _make(cls, coeffs, var):
        c = list(coeffs)
        if _is_int_list(c):
            return IntPolynomial(c, var)
        return Poly(c, var)

    @classmethod
    def monomial(cls, n, c=1, var="x"):
        return cls._make([0] * n + [c], var)

    @staticmethod
    def constant_like(p, c):
        return Poly._make([c], p.var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __bool__(self):
        return bool(self.coeffs)

    def _wrap(self, other):
        if isinstance(other, Poly) and other.var == self.var:
            return other
        return Poly._make([other], self.var)

    def __add__(self, other):
        other = self._wrap(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._make(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not (isinstance(other, Poly) and other.var == self.var):
            return Poly._make([c * other for c in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._make([], self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._make(out, self.var)

    def __rmul__(self, other):
        return Poly._make([other * c for c in self.coeffs], self.var)

    def __pow__(self, n):
        result, base = Poly._make([1], self.var), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        if not self.coeffs:
            return 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def divmod(self, other):
        """Long division; the leading coefficient of other must divide exactly."""
        other = self._wrap(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        n = other.degree
        lead = other.coeffs[-1]
        quot = [0] * max(len(rem) - n, 0)
        for k in range(len(rem) - n - 1, -1, -1):
            top = rem[k + n]
            if not top:
                continue
            q = _exact_div(top, lead)
            quot[k] = q
            for i, c in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - q * c
        return Poly._make(quot, self.var), Poly._make(rem[:n] if n > 0 else [], self.var)

    def exact_div(self, other):
        if not isinstance(other, Poly) or other.var != self.var:
            return Poly._make([_exact_div(c, other) for c in self.coeffs], self.var)
        q, r = self.divmod(other)
        if r:
            raise NotDivisible(r)
        return q

    def pseudo_rem(self, other):
        """Remainder of lc(other)^k * self by other, k = deg self - deg other + 1."""
        rem = self
        lead = other.lc()
        k = max(self.degree - other.degree + 1, 0)
        for _ in range(k):
            rem = rem * lead
        return rem.divmod(other)[1]

    def derivative(self):
        return Poly._make([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def compose(self, other):
        """self(other(x))."""
        result = Poly._make([], self.var)
        for c in reversed(self.coeffs):
            result = result * other + c
        return result

    def compose_power(self, k):
        if k < 1:
            raise ValueError("k must be positive")
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return Poly._make(out, self.var)

    def scale_var(self, s):
        """self(s*x)."""
        out, p = [], 1
        for c in self.coeffs:
            out.append(c * p)
            p = p * s
        return Poly._make(out, self.var)

    def monic(self):
        lead = self.lc()
        return Poly._make([c / lead for c in self.coeffs], self.var)

    def map(self, fn):
        return Poly._make([fn(c) for c in self.coeffs], self.var)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if isinstance(c, (int, Fraction)):
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                body = str(mag) if (mag != 1 or not mono) else ""
                body = f"{body}*{mono}" if body and mono else body or mono
            else:
                sign, body = "+", f"({c})" + (f"*{mono}" if mono else "")
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self):
        return {"var": self.var, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        return IntPolynomial([int(c) for c in obj["coeffs"]], obj.get("var", "x"))


class IntPolynomial(Poly):
    """Dense polynomial with exact integer coefficients."""

    __slots__ = ()

    def __init__(self, coeffs=(), var="x"):
        c = []
        for x in coeffs:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integer coefficient {x}")
                x = x.numerator
            c.append(int(x))
        super().__init__(c, var)

    def content(self):
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g


def gray_code(n):
    """Yield (index of flipped bit or None, bit pattern) over all 2^n patterns."""
    pattern = [0] * n
    yield None, tuple(pattern)
    for k in range(1, 2 ** n):
        bit = (k & -k).bit_length() - 1
        pattern[bit] ^= 1
        yield bit, tuple(pattern)


def product_of_linear_factors(roots, var="x"):
    """Monic prod (x - r) by balanced pairwise multiplication."""
    layer = [Poly([-r, 1], var) for r in roots]
    if not layer:
        return IntPolynomial([1], var)
    while len(layer) > 1:
        nxt = [layer[i] * layer[i + 1] for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def bareiss_det(matrix):
    """Determinant by fraction-free elimination; entries need exact division."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                val = row_i[j] * pivot - mik * row_k[j]
                row_i[j] = _exact_div(val, prev)
            row_i[k] = 0
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(p, q):
    """Sylvester matrix of coefficient lists (ascending), p-rows first."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    pd, qd = list(reversed(p)), list(reversed(q))
    for i in range(n):
        rows.append([0] * i + pd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qd + [0] * (size - n - 1 - i))
    return rows


def resultant(p, q, var=None):
    """Sylvester resultant of p and q with respect to var.

    Dense polynomials eliminate their own variable and return a coefficient;
    MPoly inputs eliminate var and return an MPoly over the same variables."""
    if isinstance(p, MPoly):
        if not p or not q:
            raise ZeroInput("resultant of a zero polynomial")
        pc = p.coefficients_in(var)
        qc = q.coefficients_in(var)
        det = bareiss_det(sylvester_matrix(pc, qc))
        if isinstance(det, int):
            return MPoly.constant(p.vars, det)
        return det
    if not p or not q:
        raise ZeroInput("resultant of a zero polynomial")
    return bareiss_det(sylvester_matrix(list(p.coeffs), list(q.coeffs)))


def discriminant(p):
    """Standard discriminant (-1)^(n(n-1)/2) Res(p, p') / lc(p)."""
    n = p.degree
    r = _exact_div(resultant(p, p.derivative()), p.lc())
    return -r if (n * (n - 1) // 2) % 2 else r


def _as_matrix(m):
    if len(m) == 4:
        return m
    (a, b), (c, d) = m
    return a, b, c, d


def mobius_transform(p, m):
    """(c x + d)^n p((a x + b)/(c x + d)) with n = deg p."""
    a, b, c, d = _as_matrix(m)
    if a * d - b * c == 0:
        raise ZeroDeterminant("singular Mobius matrix")
    n = p.degree
    num = Poly._make([b, a], p.var)
    den = Poly._make([d, c], p.var)
    out = Poly._make([], p.var)
    for k, coeff in enumerate(p.coeffs):
        if coeff:
            out = out + (num ** k) * (den ** (n - k)) * coeff
    return out


def compose_power(p, k):
    return p.compose_power(k)


def exact_divide(p, q):
    return p.exact_div(q)


def palindrome_scaled(p, s):
    """x^n p(s/x) with n = deg p."""
    n = p.degree
    out = [0] * (n + 1)
    for k, c in enumerate(p.coeffs):
        out[n - k] = c * s ** k
    return Poly._make(out, p.var)


class MPoly:
    """Sparse multivariate polynomial: {exponent tuple: coefficient}."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, vars, c):
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, vars, name):
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): 1})

    @staticmethod
    def constant_like(p, c):
        return MPoly.constant(p.vars, c)

    def _wrap(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError("mismatched variables")
            return other
        return MPoly.constant(self.vars, other)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._wrap(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result, base = MPoly.constant(self.vars, 1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        return self == self._wrap(other)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other):
        if not isinstance(other, MPoly):
            out = {}
            for e, c in self.terms.items():
                out[e] = _exact_div(c, other)
            return MPoly(self.vars, out)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = other.leading()
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, le))
            if min(qe) < 0:
                raise NotDivisible(MPoly(self.vars, rem))
            qc = _exact_div(c, lc)
            quot[qe] = qc
            for e2, c2 in other.terms.items():
                t = tuple(a + b for a, b in zip(qe, e2))
                v = rem.get(t, 0) - qc * c2
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return MPoly(self.vars, quot)

    def degree(self, var):
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def coefficients_in(self, var):
        """Ascending list of coefficients (MPoly, var exponent zero) in var."""
        i = self.vars.index(var)
        out = [MPoly(self.vars) for _ in range(self.degree(var) + 1)]
        for e, c in self.terms.items():
            k = e[i]
            out[k].terms[e[:i] + (0,) + e[i + 1:]] = c
        return out

    def coeff(self, *exps):
        return self.terms.get(tuple(exps), 0)

    def subs(self, **values):
        """Substitute numbers (or MPolys) for some variables."""
        out = MPoly(self.vars)
        for e, c in self.terms.items():
            term = MPoly.constant(self.vars, c)
            keep = list(e)
            for name, val in values.items():
                i = self.vars.index(name)
                if e[i]:
                    term = term * (val ** e[i])
                    keep[i] = 0
            mono = MPoly(self.vars, {tuple(keep): 1})
            out = out + term * mono
        return out

    def to_univariate(self, var):
        """Poly in var with integer coefficients (other variables absent)."""
        i = self.vars.index(var)
        out = [0] * (self.degree(var) + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            out[e[i]] = c
        return Poly._make(out, var)

    @classmethod
    def from_univariate(cls, vars, var, p):
        i = vars.index(var)
        terms = {}
        for k, c in enumerate(p.coeffs):
            e = [0] * len(vars)
            e[i] = k
            terms[tuple(e)] = c
        return cls(vars, terms)

    def __repr__(self):
        return f"MPoly({self.vars!r}, {self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out


class BivarPolynomial(MPoly):
    """Integer polynomial in two named variables."""

    __slots__ = ()

    def __init__(self, vars, terms=None):
        if len(vars) != 2:
            raise ValueError("need exactly two variables")
        super().__init__(vars, terms)

    def to_json(self):
        return {"vars": list(self.vars),
                "terms": [[e[0], e[1], str(c)] for e, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["vars"]), {(i, j): int(c) for i, j, c in obj["terms"]})


def parse_poly(text, vars):
    """Parse an integer polynomial written with +, -, *, ** and parentheses."""
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MPoly.constant(vars, node.value)
        if isinstance(node, ast.Name):
            return MPoly.variable(vars, node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.UAdd):
            return ev(node.operand)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ValueError("exponents must be integer literals")
                return ev(node.left) ** exp.value
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)


def _to_gaussian(c):
    if isinstance(c, QuadFieldElement):
        if c.d != 1:
            raise ValueError("coefficients must be Gaussian rationals")
        return c
    return gaussian(c)


def _field_gcd(a, b):
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic() if a else a


class RationalFunction:
    """Quotient of polynomials over Q(i) in one variable, kept reduced with a
    monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var="b"):
        if not isinstance(num, Poly):
            num = Poly([_to_gaussian(num)], var)
        else:
            num = Poly([_to_gaussian(c) for c in num.coeffs], num.var)
        if den is None:
            den = Poly([gaussian(1)], num.var)
        elif not isinstance(den, Poly):
            den = Poly([_to_gaussian(den)], num.var)
        else:
            den = Poly([_to_gaussian(c) for c in den.coeffs], den.var)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = num, Poly([gaussian(1)], num.var)
            return
        if den.degree > 0:
            g = _field_gcd(num, den)
            if g.degree > 0:
                num, den = num.divmod(g)[0], den.divmod(g)[0]
        lead = den.lc()
        if lead != 1:
            inv = lead.inverse()
            num = Poly([c * inv for c in num.coeffs], num.var)
            den = Poly([c * inv for c in den.coeffs], den.var)
        self.num, self.den = num, den

    @classmethod
    def variable(cls, var="b"):
        return cls(Poly([gaussian(0), gaussian(1)], var))

    @property
    def var(self):
        return self.num.var

    def _wrap(self, other):
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(other, var=self.var)

    def __add__(self, other):
        other = self._wrap(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._wrap(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __pow__(self, n):
        if n < 0:
            return RationalFunction(1, var=self.var) / self ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, (RationalFunction, int, Fraction, QuadFieldElement)):
            return NotImplemented
        return rf_equal(self, self._wrap(other))

    def __hash__(self):
        return hash((self.num, self.den))

    def subs(self, value):
        """Substitute value (a RationalFunction or an exact number) for the variable."""
        if isinstance(value, RationalFunction):
            return _eval_rf_poly(self.num, value) / _eval_rf_poly(self.den, value)
        return self.num(value) / self.den(value)

    def __repr__(self):
        return f"({self.num}) / ({self.den})"


def _eval_rf_poly(p, value):
    acc = RationalFunction(0, var=value.var)
    for c in reversed(p.coeffs):
        acc = acc * value + c
    return acc


def rf_equal(r1, r2):
    return r1.num * r2.den == r2.num * r1.den
