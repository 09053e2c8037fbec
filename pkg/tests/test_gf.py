import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wcw.gf import (Field, FieldMismatch, NonPrime, artin_schreier_roots, format_element,
                    frobenius, is_irreducible, least_irreducible, parse_element, pth_root)

FIELDS = [(5, 1), (7, 1), (5, 2), (7, 2), (5, 3), (5, 5)]


def _has_factor(f, p, d):
    """Brute force: does some monic polynomial of degree d divide f over F_p?"""
    for tail in itertools.product(range(p), repeat=d):
        g = list(tail) + [1]
        r = list(f)
        while len(r) >= len(g):
            c = r[-1]
            shift = len(r) - len(g)
            for k, gk in enumerate(g):
                r[shift + k] = (r[shift + k] - c * gk) % p
            r.pop()
        if not any(r):
            return True
    return False


def brute_irreducible(f, p):
    m = len(f) - 1
    return not any(_has_factor(f, p, d) for d in range(1, m // 2 + 1))


def _el(F, code):
    from wcw.gf import FieldElement
    return FieldElement(F, code)


@st.composite
def field_and_elements(draw, k=3):
    p, m = draw(st.sampled_from(FIELDS))
    F = Field(p, m)
    return F, [_el(F, draw(st.integers(0, F.q - 1))) for _ in range(k)]


def test_rejects_bad_characteristic():
    for p in (1, 2, 3, 4, 9, 15):
        with pytest.raises(NonPrime):
            Field(p)


def test_prime_field_modulus_is_x():
    assert Field(7).modulus == (0, 1)


@pytest.mark.parametrize("p,m", [(5, 2), (5, 3), (7, 2), (5, 5), (7, 3)])
def test_least_irreducible_against_brute_force(p, m):
    f = least_irreducible(p, m)
    assert brute_irreducible(f, p)
    # all candidates earlier in (c_{m-1}, ..., c_0) order are reducible
    for top_down in itertools.product(range(p), repeat=m):
        g = tuple(reversed(top_down)) + (1,)
        if g == f:
            break
        assert not brute_irreducible(g, p)


def test_degree5_modulus_value():
    assert least_irreducible(5, 5) == (1, 4, 0, 0, 0, 1)


@given(st.integers(0, 5 ** 4 - 1))
def test_ben_or_matches_brute_force_quartics(code):
    coeffs = [(code // 5 ** i) % 5 for i in range(4)] + [1]
    assert is_irreducible(coeffs, 5) == brute_irreducible(coeffs, 5)


@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + F.zero == a and a * F.one == a
    assert a - a == F.zero
    if a:
        assert a * a.inv() == F.one
        assert (b / a) * a == b


@given(field_and_elements())
def test_frobenius_is_a_field_automorphism(data):
    F, (a, b, _) = data
    assert frobenius(a + b) == frobenius(a) + frobenius(b)
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    assert pth_root(frobenius(a)) == a
    assert frobenius(pth_root(a)) == a
    assert a ** F.q == a


@given(field_and_elements(k=1))
def test_coords_roundtrip(data):
    F, (a,) = data
    assert F(a.coeffs) == a
    assert parse_element(F, format_element(a)) == a


def test_mixed_fields_rejected():
    a, b = Field(5)(1), Field(7)(1)
    with pytest.raises(FieldMismatch):
        a + b


@pytest.mark.parametrize("p,m", [(5, 1), (5, 2), (7, 2), (5, 5)])
def test_artin_schreier_against_brute_force(p, m):
    F = Field(p, m)
    rng = np.random.Generator(np.random.Philox(3))
    for code in list(range(min(F.q, 30))) + [int(x) for x in rng.integers(0, F.q, 20)]:
        c = _el(F, code)
        got = artin_schreier_roots(c)
        if F.q <= 625:
            want = [x for x in F.elements() if x ** p - x == c]
            assert got == sorted(want, key=lambda e: e.code)
        assert len(got) in (0, p)
        assert all(x ** p - x == c for x in got)


def test_artin_schreier_prime_field_cases():
    F = Field(5)
    assert [x.code for x in artin_schreier_roots(F(0))] == [0, 1, 2, 3, 4]
    assert artin_schreier_roots(F(1)) == []
    G = Field(5, 5)
    assert len(artin_schreier_roots(G(1))) == 5


def test_f3125_multiplicative_group_by_scan():
    F = Field(5, 5)
    assert F.q == 3125
    g = _el(F, F.primitive_element)
    seen = set()
    x = F.one
    for _ in range(F.q - 1):
        seen.add(x.code)
        x = x * g
    assert x == F.one
    assert seen == set(range(1, F.q))
