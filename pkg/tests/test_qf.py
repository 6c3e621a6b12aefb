import math
import random

import pytest

from quartic_cm.qf import (
    BadDiscriminant, ClassRep, QuadForm, check_discriminant, choose_v0, class_number,
    class_representatives, discriminant_info, enumerate_reduced, pair_index, reduce_form, t_class,
)


def naive_class_number(d):
    """Count reduced primitive forms by brute force over a <= sqrt(d/3)."""
    n = 0
    for a in range(1, math.isqrt(d // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b + d) % (4 * a):
                continue
            c = (b * b + d) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                n += 1
    return n


@pytest.mark.parametrize("d", [7, 8, 9, 1, 0, -7, 3, 11])
def test_bad_discriminants(d):
    if d in (7,):
        check_discriminant(d)
        return
    with pytest.raises(BadDiscriminant):
        check_discriminant(d)


def test_class_numbers_match_brute_force():
    for d in range(7, 1000, 8):
        assert class_number(d) == naive_class_number(d), d


def test_reduction_preserves_discriminant():
    rng = random.Random(3)
    for _ in range(200):
        a, b = rng.randint(1, 500), rng.randint(-500, 500)
        d = 8 * rng.randint(1, 300) - 1
        if (b * b + d) % (4 * a) or b % 2 == 0:
            continue
        q = QuadForm(a, b, (b * b + d) // (4 * a))
        r = reduce_form(q)
        assert r.disc == -d and r.is_reduced()


def test_enumerate_reduced():
    forms, h = enumerate_reduced(23)
    assert h == 3
    assert set(forms) == {QuadForm(1, 1, 6), QuadForm(2, 1, 3), QuadForm(2, -1, 3)}
    assert all(f.is_reduced() and f.is_primitive() for f in forms)


def test_discriminant_info():
    info = discriminant_info(63)
    assert (info.f, info.d1, info.h, info.div3) == (3, 7, 4, True)
    assert discriminant_info(175).f == 5


def test_v0_choice():
    for d in range(7, 500, 8):
        v0 = choose_v0(d)
        assert v0 in (1, 3) and (v0 * v0 + d) % 16 == 0


@pytest.mark.parametrize("modulus", [8, 24])
def test_representatives_cover_class_group(modulus):
    for d in range(7, 400, 8):
        reps = class_representatives(d, modulus)
        assert len(reps) == class_number(d)
        assert len({r.reduced for r in reps}) == len(reps)
        v0 = choose_v0(d)
        for r in reps:
            assert r.is_valid()
            assert (r.v - v0) % modulus == 0
            assert (r.v ** 2 + d) % (16 * r.c) == 0
            assert r.reduced.disc == -d


def test_pairing_is_a_permutation():
    for d in (23, 71, 159, 191):
        idx = pair_index(class_representatives(d))
        assert sorted(idx) == list(range(len(idx)))


def test_t_class():
    assert t_class(23).disc == -23
    assert t_class(7) == QuadForm(1, 1, 2)


def test_rep_invariants():
    r = ClassRep(159, 7, 17)
    assert r.is_valid()
    assert not ClassRep(159, 3, 17).is_valid()
