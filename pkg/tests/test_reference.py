import pytest

from quartic_cm.invariants import invariant_bundle, product_poly_t
from quartic_cm.poly import discriminant
from quartic_cm.reference import reference_poly, reference_rows, reference_value, tabulated


def test_rows_are_well_formed():
    rows = reference_rows()
    assert rows
    for (d, kind), coeffs in rows.items():
        assert d % 8 == 7 and coeffs[0] != 0


def test_missing_entry():
    assert reference_poly(7, "t") is None


@pytest.mark.parametrize("key", sorted(k for k in reference_rows() if k[1] in ("H", "b", "A", "q", "W", "u", "r")))
def test_bundle_matches_table(key):
    d, kind = key
    assert invariant_bundle(d).polys()[kind] == reference_poly(d, kind)


@pytest.mark.parametrize("d", tabulated("t"))
def test_t_matches_table(d):
    assert product_poly_t(d) == reference_poly(d, "t")


@pytest.mark.parametrize("d", tabulated("disc_t"))
def test_t_discriminants(d):
    assert discriminant(product_poly_t(d)) == reference_value(d, "disc_t")
