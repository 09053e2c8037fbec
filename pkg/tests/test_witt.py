"""W_l structure checked against the derivation algebra of k[X]/(X^p) (x) k[t]/(t^(l+1))."""

import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wcw.gf import Field
from wcw.witt import (BasisIndex, Infeasible, NoVanishing, NotBasisElement, OutOfRange, PChar,
                      WittShape, ad_power, bracket, classify_scenario, height, p_map, parse_index,
                      parse_scenario, scenario_chi)


class Derivations:
    """Oracle: sum_j f_j(X) d/dX (x) t^j acting on k[X]/(X^p) (x) k[t]/(t^(l+1))."""

    def __init__(self, p, ell):
        self.p, self.ell = p, ell

    def of_basis(self, b):
        f = np.zeros((self.p, self.ell + 1), dtype=np.int64)  # f[a, j]: coefficient of X^a t^j
        f[b.i + 1, b.j] = 1
        return f

    def bracket(self, f, g):
        p, L = self.p, self.ell
        out = np.zeros_like(f)
        # [f d, g d] = (f g' - g f') d, with X^p = 0 and t^(l+1) = 0
        for a in range(p):
            for j in range(L + 1):
                for b in range(p):
                    for k in range(L + 1):
                        if j + k > L:
                            continue
                        if b >= 1 and a + b - 1 < p:
                            out[a + b - 1, j + k] += f[a, j] * g[b, k] * b
                        if a >= 1 and a + b - 1 < p:
                            out[a + b - 1, j + k] -= g[b, k] * f[a, j] * a
        return out % p

    def operator(self, f):
        """Matrix of f d on the basis X^a t^j of the truncated polynomial ring."""
        p, L = self.p, self.ell
        n = p * (L + 1)
        M = np.zeros((n, n), dtype=np.int64)
        for a in range(p):
            for j in range(L + 1):
                col = a * (L + 1) + j
                if a == 0:
                    continue
                for c in range(p):
                    for k in range(L + 1):
                        if f[c, k] and a - 1 + c < p and j + k <= L:
                            M[(a - 1 + c) * (L + 1) + j + k, col] += a * f[c, k]
        return M % p

    def to_element(self, shape, f):
        return shape.element({BasisIndex(a - 1, j): int(f[a, j])
                              for a in range(self.p) for j in range(self.ell + 1) if f[a, j]})


SHAPES = [(5, 0), (5, 1), (5, 2), (7, 1)]


@pytest.mark.parametrize("p,ell", SHAPES)
def test_structure_constants_match_derivations(p, ell):
    shape = WittShape(Field(p), ell)
    D = Derivations(p, ell)
    for a in shape.basis:
        for b in shape.basis:
            want = D.to_element(shape, D.bracket(D.of_basis(a), D.of_basis(b)))
            assert bracket(shape.e(*a), shape.e(*b)) == want


@pytest.mark.parametrize("p,ell", SHAPES)
def test_p_map_matches_pth_power_of_derivation(p, ell):
    shape = WittShape(Field(p), ell)
    D = Derivations(p, ell)
    for b in shape.basis:
        op = D.operator(D.of_basis(b))
        power = np.linalg.matrix_power(op, p) % p
        img = p_map(shape.e(*b))
        want = np.zeros_like(op)
        for c, coeff in img.terms.items():
            want = (want + coeff.code * D.operator(D.of_basis(c))) % p
        assert np.array_equal(power, want), b


def test_p_map_values():
    shape = WittShape(Field(5), 2)
    assert p_map(shape.e(0, 0)) == shape.e(0, 0)
    assert not p_map(shape.e(0, 1))
    assert not p_map(shape.e(-1, 0))
    assert not p_map(shape.e(1, 2))
    with pytest.raises(NotBasisElement):
        p_map(shape.e(0, 0) + shape.e(1, 0))


@st.composite
def elements(draw, shape):
    F = shape.field
    vals = draw(st.lists(st.integers(0, F.p - 1), min_size=shape.dim, max_size=shape.dim))
    return shape.element({b: v for b, v in zip(shape.basis, vals)})


SH = WittShape(Field(5), 1)


@given(elements(SH), elements(SH), elements(SH))
def test_lie_axioms(x, y, z):
    assert bracket(x, y) == -bracket(y, x)
    assert not bracket(x, x)
    jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert not jac


@given(elements(SH), elements(SH))
def test_bracket_bilinear(x, y):
    F = SH.field
    assert bracket(x + y, y) == bracket(x, y)
    assert bracket(F(3) * x, y) == F(3) * bracket(x, y)


def test_ad_e_minus_one_nilpotent_on_degree_p_minus_2():
    shape = WittShape(Field(5), 0)
    x = shape.e(-1)
    assert ad_power(x, shape.e(3), 4) == shape.element({BasisIndex(-1, 0): 4 * 3 * 2 * 1 % 5})
    assert not ad_power(x, shape.e(3), 5)


def test_gradings_and_filtration():
    shape = WittShape(Field(5), 1)
    assert shape.dim == 10
    assert len(shape.filtration(-1)) == 10
    assert shape.filtration(1) == [b for b in shape.basis if b.i >= 1]
    assert shape.graded(0) == [BasisIndex(0, 0), BasisIndex(0, 1)]
    assert len(shape.tgraded(1)) == 5
    for i in range(-1, 4):
        for j in range(-1, 4):
            for a in shape.graded(i):
                for b in shape.graded(j):
                    z = bracket(shape.e(*a), shape.e(*b))
                    assert all(c.i == i + j for c in z.support())
    with pytest.raises(OutOfRange):
        shape.filtration(4)
    with pytest.raises(OutOfRange):
        shape.e(4, 0)


def test_basis_index_format():
    assert str(BasisIndex(-1, 2)) == "e(-1,2)"
    assert parse_index("e(-1, 2)") == BasisIndex(-1, 2)
    with pytest.raises(ValueError):
        parse_index("f(1,2)")


def test_height_examples():
    F = Field(5)
    sh = WittShape(F, 1)
    assert height(PChar(sh, {})) == -1
    assert height(PChar(sh, {(-1, 1): 1})) == 0
    assert height(PChar(sh, {(0, 1): 1})) == 1
    assert height(PChar(sh, {(1, 0): 2})) == 2
    with pytest.raises(NoVanishing):
        height(PChar(sh, {(3, 0): 1}))


def test_chi_json_roundtrip_and_strictness():
    F = Field(5, 2)
    sh = WittShape(F, 1)
    chi = PChar(sh, {(-1, 1): F((1, 2)), (0, 0): 3})
    again = PChar.from_json(json.dumps(chi.to_json()))
    assert again == chi
    with pytest.raises(ValueError):
        PChar.from_json({"p": 5, "ell": 1, "values": {}, "colour": 1})
    with pytest.raises(OutOfRange):
        PChar.from_json({"p": 5, "ell": 1, "values": {"e(2,3)": "1"}})


def test_chi_linear_on_elements():
    F = Field(7)
    sh = WittShape(F, 1)
    chi = PChar(sh, {(-1, 0): 2, (1, 1): 5})
    x = sh.element({(-1, 0): 3, (1, 1): 1, (0, 0): 4})
    assert chi(x) == F(2 * 3 + 5)


def test_restrict_drops_high_t_degrees():
    sh = WittShape(Field(5), 2)
    chi = PChar(sh, {(-1, 0): 1, (0, 1): 2, (1, 2): 3})
    psi = chi.restrict(1)
    assert psi.shape.ell == 1
    assert set(psi.values) == {BasisIndex(-1, 0), BasisIndex(0, 1)}


SCENARIO_TAGS = ["height-minus-one", "height0", "height1-a", "height1-b", "heightr(2)"]


@given(st.sampled_from(SCENARIO_TAGS), st.integers(0, 2 ** 32), st.sampled_from([1, 2]))
def test_scenario_hypotheses_hold(tag, seed, ell):
    chi = scenario_chi(WittShape(Field(5), ell), tag, seed)
    assert classify_scenario(chi) == tag


def test_scenario_seed_is_deterministic():
    sh = WittShape(Field(7), 2)
    assert scenario_chi(sh, "heightr(3)", 11) == scenario_chi(sh, "heightr(3)", 11)


def test_infeasible_scenarios():
    with pytest.raises(Infeasible):
        scenario_chi(WittShape(Field(5), 0), "height1-a")
    with pytest.raises(Infeasible):
        scenario_chi(WittShape(Field(5), 1), "heightr(4)")
    with pytest.raises(ValueError):
        parse_scenario("height7")
    assert parse_scenario("heightr:3") == ("heightr", 3)
