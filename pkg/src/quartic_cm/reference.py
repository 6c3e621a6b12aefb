"""Reference polynomials shipped as CSV (header "d,kind,degree,coeffs...",
coefficients from the leading one down)."""

import csv
from functools import lru_cache
from importlib import resources

from .poly import IntPolynomial

TABLE_FILE = "reference_tables.csv"


@lru_cache(maxsize=None)
def reference_rows():
    text = resources.files("quartic_cm").joinpath("data", TABLE_FILE).read_text(encoding="utf-8")
    out = {}
    reader = csv.reader(text.splitlines())
    next(reader)
    for row in reader:
        d, kind, degree = int(row[0]), row[1], int(row[2])
        coeffs = [int(c) for c in row[3:]]
        if len(coeffs) != degree + 1:
            raise ValueError(f"row {d},{kind}: degree {degree} but {len(coeffs)} coefficients")
        out[(d, kind)] = coeffs
    return out


def reference_poly(d, kind):
    """IntPolynomial for (d, kind), or None when not tabulated."""
    c = reference_rows().get((d, kind))
    return None if c is None else IntPolynomial(list(reversed(c)))


def reference_value(d, kind):
    c = reference_rows().get((d, kind))
    return None if c is None else c[0]


def tabulated(kind):
    return sorted(d for d, k in reference_rows() if k == kind)
