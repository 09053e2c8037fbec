"""Induced U_chi(W_l)-modules built by PBW straightening.

Both constructions induce a one-dimensional module k_mu of a filtration
subalgebra W_{l,(cut)}:

* cut = 0: the chi-reduced Verma module Z_chi(lambda), for height(chi) <= 1;
* cut = s = floor(r/2): the module U_chi(W_l) (x)_{U_chi(W_{l,(s)})} k_chi
  for 1 < r = height(chi) < p-1 with chi(e_{r-1} t^l) != 0.

A basis is given by ordered monomials y_1^{a_1} ... y_d^{a_d} (x) v with
0 <= a_k < p over a fixed ordered basis (y_k) of the complement
sum_{i<cut} W_{l,[i]}.  Monomials are stored as exponent tuples.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field as dc_field
from typing import Mapping

import numpy as np

from . import cache as _cache
from .gf import FieldElement, NotSplit, artin_schreier_roots, format_element, frobenius, pth_root
from .rep import Representation
from .linalg import Subspace, arith_for
from .witt import BasisIndex, LieElement, NoVanishing, PChar, WittShape, bracket, height


class HypothesisViolated(ValueError):
    pass


class BadLambda(ValueError):
    pass


class NotOneDim(ValueError):
    pass


Monomial = tuple[int, ...]


@dataclass
class InductionDatum:
    shape: WittShape
    chi: PChar
    cut: int
    mu: dict[BasisIndex, FieldElement]
    order: list[BasisIndex]
    lam: FieldElement | None = None

    @property
    def rank(self) -> int:
        return len(self.order)

    def subalgebra(self) -> list[BasisIndex]:
        return self.shape.filtration(self.cut)


def lambda_set(chi: PChar) -> list[FieldElement]:
    """Lambda(chi) = {lambda : lambda^p - lambda = chi(e_0)^p}, sorted by code."""
    c = frobenius(chi((0, 0)))
    roots = artin_schreier_roots(c)
    if not roots:
        raise NotSplit(f"lambda^p - lambda = {c!r} has no root in {chi.shape.field!r}; "
                       "extend field degree by factor p")
    return roots


def complement_order(shape: WittShape, cut: int) -> list[BasisIndex]:
    """Degrees ascending -1..cut-1, t-powers ascending within a degree."""
    return [BasisIndex(i, j) for i in range(-1, cut) for j in range(shape.ell + 1)]


def base_scalars(chi: PChar, cut: int, lam: FieldElement | None = None) -> InductionDatum:
    shape = chi.shape
    F = shape.field
    ell, p = shape.ell, shape.p
    try:
        r = height(chi)
    except NoVanishing as exc:
        raise HypothesisViolated(str(exc)) from exc
    mu: dict[BasisIndex, FieldElement] = {}
    if cut == 0:
        if r > 1:
            raise HypothesisViolated(f"Verma induction needs height(chi) <= 1, got {r}")
        if lam is None:
            raise BadLambda("Verma induction needs a weight lambda")
        lam = F(lam)
        if lam ** p - lam != frobenius(chi((0, 0))):
            raise BadLambda(f"lambda={lam!r} is not in Lambda(chi)")
        chis: dict[int, FieldElement] = {}
        for i in range(ell, 0, -1):
            prev = chis[i * p] if i * p <= ell else F.zero
            chis[i] = pth_root(prev + frobenius(chi((0, i))))
        for b in shape.filtration(0):
            if b.i == 0:
                mu[b] = lam if b.j == 0 else chis[b.j]
            else:
                mu[b] = F.zero
    else:
        if not 1 <= cut <= p - 2:
            raise HypothesisViolated(f"cut {cut} out of range")
        if lam is not None:
            raise ValueError("height-r induction takes no lambda")
        for b in shape.filtration(cut):
            mu[b] = chi(b)
    datum = InductionDatum(shape, chi, cut, mu, complement_order(shape, cut), lam)
    check_datum(datum)
    return datum


def check_datum(datum: InductionDatum) -> None:
    """Assert that k_mu is a one-dimensional U_chi(W_{l,(cut)})-module."""
    shape, chi, mu = datum.shape, datum.chi, datum.mu
    sub = datum.subalgebra()
    for a in sub:
        for b in sub:
            br = shape.bracket_basis(a, b)
            if br is not None and mu[br[1]]:
                raise NotOneDim(f"mu does not vanish on [{a}, {b}]")
    p = shape.p
    for x in sub:
        img = shape.p_map_basis(x)
        lhs = mu[x] ** p - (mu[img] if img is not None else 0)
        if lhs != frobenius(chi(x)):
            if x == BasisIndex(0, 0):
                raise BadLambda(f"mu(e_0)^p - mu(e_0) != chi(e_0)^p")
            raise NotOneDim(f"p-th power condition fails at {x}")


class Straightener:
    """Computes g . (monomial (x) v) with memoisation on (g, monomial).

    Recursion, with y the leading factor of the monomial y M':
        g . (y M' (x) v) = y . (g . (M' (x) v)) + [g, y] . (M' (x) v)
    Base cases place a complement generator in front of an in-order monomial
    (reducing y^p = y^[p] + chi(y)^p) or let the subalgebra act by mu on 1 (x) v.
    """

    def __init__(self, datum: InductionDatum):
        shape = datum.shape
        F = shape.field
        self.F = F
        self.p = shape.p
        self.shape = shape
        self.order = datum.order
        self.d = len(self.order)
        self.pos = {b: k for k, b in enumerate(self.order)}
        self.mu = {b: c.code for b, c in datum.mu.items()}
        self.chi_p = {b: frobenius(datum.chi(b)).code for b in self.order}
        self.table = shape.structure_table
        self.memo: dict[tuple[BasisIndex, Monomial], dict[Monomial, int]] = {}
        self._active: set[tuple[BasisIndex, Monomial]] = set()

    def _axpy(self, out: dict[Monomial, int], c: int, vec: Mapping[Monomial, int]) -> None:
        F = self.F
        for m, v in vec.items():
            out[m] = F.add(out.get(m, 0), F.mul(c, v))

    def act(self, x: BasisIndex, mono: Monomial) -> dict[Monomial, int]:
        key = (x, mono)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if key in self._active:
            raise RuntimeError(f"straightening cycle at {x} . {mono}")
        self._active.add(key)
        F = self.F
        first = next((k for k, a in enumerate(mono) if a), self.d)
        k = self.pos.get(x)
        res: dict[Monomial, int] = {}
        if k is not None and k <= first:
            a = mono[k]
            if a + 1 < self.p:
                res[mono[:k] + (a + 1,) + mono[k + 1:]] = 1
            else:
                rest = mono[:k] + (0,) + mono[k + 1:]
                if self.chi_p[x]:
                    res[rest] = self.chi_p[x]
                img = self.shape.p_map_basis(x)
                if img is not None:
                    self._axpy(res, 1, self.act(img, rest))
        elif first == self.d:
            c = self.mu[x]
            if c:
                res[mono] = c
        else:
            y = self.order[first]
            tail = mono[:first] + (mono[first] - 1,) + mono[first + 1:]
            for m, c in self.act(x, tail).items():
                self._axpy(res, c, self.act(y, m))
            br = self.table[(x, y)]
            if br is not None:
                coef, z = br
                self._axpy(res, coef % self.p, self.act(z, tail))
        res = {m: c for m, c in res.items() if c}
        self._active.discard(key)
        self.memo[key] = res
        return res


@dataclass
class ModuleVector:
    terms: dict[Monomial, FieldElement] = dc_field(default_factory=dict)

    def __post_init__(self):
        self.terms = {m: c for m, c in self.terms.items() if c}

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleVector) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)


class InducedModule(Representation):
    """U_chi(W_l) (x)_{U_chi(W_{l,(cut)})} k_mu with a PBW monomial basis."""

    def __init__(self, datum: InductionDatum, label: str = ""):
        d = datum.rank
        p = datum.shape.p
        super().__init__(datum.shape, datum.chi, None, p ** d, label)
        self.datum = datum
        self.monomials: list[Monomial] = list(itertools.product(range(p), repeat=d))
        self.position = {m: k for k, m in enumerate(self.monomials)}
        self.engine = Straightener(datum)

    @property
    def generator_vector(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[0] = 1
        return v

    def act(self, g: BasisIndex, v: ModuleVector) -> ModuleVector:
        F = self.field
        out: dict[Monomial, int] = {}
        g = BasisIndex(*g)
        for m, c in v.terms.items():
            self.engine._axpy(out, F(c).code, self.engine.act(g, m))
        return ModuleVector({m: FieldElement(F, c) for m, c in out.items()})

    def act_element(self, x: LieElement, v: ModuleVector) -> ModuleVector:
        F = self.field
        acc: dict[Monomial, FieldElement] = {}
        for b, c in x.terms.items():
            for m, cm in self.act(b, v).terms.items():
                acc[m] = acc.get(m, F.zero) + c * cm
        return ModuleVector(acc)

    def matrix(self, b: BasisIndex) -> np.ndarray:
        b = BasisIndex(*b)
        M = self._mats.get(b)
        if M is None:
            M = np.zeros((self.dim, self.dim), dtype=np.int64)
            for col, mono in enumerate(self.monomials):
                for m, c in self.engine.act(b, mono).items():
                    M[self.position[m], col] = c
            self._mats[b] = M
        return M

    def materialize(self) -> None:
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 20000))
        try:
            for b in self.shape.basis:
                self.matrix(b)
        finally:
            sys.setrecursionlimit(limit)

    def to_array(self, v: ModuleVector) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        for m, c in v.terms.items():
            out[self.position[m]] = self.field(c).code
        return out

    def from_array(self, arr) -> ModuleVector:
        F = self.field
        return ModuleVector({self.monomials[k]: FieldElement(F, int(c))
                             for k, c in enumerate(arr) if c})

    def basis_vector(self, mono: Monomial) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        out[self.position[tuple(mono)]] = 1
        return out

    def monomial_vector(self, mono: Monomial) -> ModuleVector:
        return ModuleVector({tuple(mono): self.field.one})


def _finish(module: InducedModule, cache_dir, check: bool) -> InducedModule:
    loaded = False
    if cache_dir is not None:
        loaded = _cache.load_into(module, cache_dir)
    if not loaded:
        module.materialize()
        if cache_dir is not None:
            _cache.store(module, cache_dir)
    if check:
        module.check_axioms()
    return module


def build_verma(chi: PChar, lam, cache_dir=None, check: bool = True) -> InducedModule:
    """The chi-reduced Verma module Z_chi(lambda), dimension p^(l+1)."""
    try:
        r = height(chi)
    except NoVanishing as exc:
        raise HypothesisViolated(str(exc)) from exc
    if r > 1:
        raise HypothesisViolated(f"Verma modules need height(chi) <= 1, got {r}")
    lam = chi.shape.field(lam)
    datum = base_scalars(chi, 0, lam)
    return _finish(InducedModule(datum, f"Z({format_element(lam)})"), cache_dir, check)


def build_height_r(chi: PChar, cache_dir=None, check: bool = True) -> InducedModule:
    """U_chi(W_l) (x)_{U_chi(W_{l,(s)})} k_chi, dimension p^((l+1)(s+1))."""
    shape = chi.shape
    try:
        r = height(chi)
    except NoVanishing as exc:
        raise HypothesisViolated(f"height p-1 is excluded (needs 1 < r < p-1): {exc}") from exc
    if not 1 < r < shape.p - 1:
        raise HypothesisViolated(f"needs 1 < r < p-1, got r={r}")
    if not chi((r - 1, shape.ell)):
        raise HypothesisViolated(f"needs chi(e_{r - 1} t^{shape.ell}) != 0")
    s = r // 2
    datum = base_scalars(chi, s, None)
    return _finish(InducedModule(datum, f"S(r={r},s={s})"), cache_dir, check)


@dataclass
class LemmaRecord:
    k: int
    b: dict[int, FieldElement]
    y: list[LieElement]
    diagonal: list[FieldElement]
    expected_diagonal: FieldElement
    conditions: dict[str, bool]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())


class ConditionFailed(AssertionError):
    def __init__(self, which: int, detail: str):
        super().__init__(f"condition ({which}) failed: {detail}")
        self.which = which


def _span_closure(shape: WittShape, gens: list[LieElement]) -> list[LieElement]:
    """Basis of the Lie subalgebra generated by `gens`."""
    ar = arith_for(shape.field)
    space = Subspace(ar, shape.dim)
    frontier = [g for g in gens if g]
    basis: list[LieElement] = []
    while frontier:
        new = []
        for g in frontier:
            if space.extend(g.vector()[None, :]).shape[0]:
                basis.append(g)
                new.append(g)
        frontier = [bracket(a, b) for a in new for b in basis]
        frontier = [x for x in frontier if x and not space.contains(x.vector())]
    return basis


def strade_elements(chi: PChar, k: int, strict: bool = True) -> LemmaRecord:
    """Build y_{k,0..l} by the recursion and check the three conditions.

    y_{k,j} = e_{r-k} t^{l-j} + sum_{i<j} b_{l-j+i} y_{k,i},
    b_i = -chi(e_{r-1} t^i) / chi(e_{r-1} t^l).
    """
    shape = chi.shape
    F = shape.field
    ell = shape.ell
    r = height(chi)
    if not 1 < r < shape.p - 1 or not chi((r - 1, ell)):
        raise HypothesisViolated("needs 1 < r < p-1 and chi(e_{r-1} t^l) != 0")
    s = r // 2
    if not 0 <= k <= s:
        raise ValueError(f"k must lie in [0, {s}]")
    top = chi((r - 1, ell))
    b = {i: -chi((r - 1, i)) / top for i in range(ell)}
    y: list[LieElement] = []
    for j in range(ell + 1):
        el = shape.e(r - k, ell - j)
        for i in range(j):
            el = el + b[ell - j + i] * y[i]
        y.append(el)

    failures: list[str] = []
    fk = set(shape.filtration(k))
    e = [shape.e(k - 1, i) for i in range(ell + 1)]
    brackets = [[bracket(e[i], y[j]) for j in range(ell + 1)] for i in range(ell + 1)]
    diag = [chi(brackets[i][i]) for i in range(ell + 1)]
    cond1 = True
    for i in range(ell + 1):
        for j in range(ell + 1):
            v = chi(brackets[i][j])
            if (i == j) != bool(v):
                cond1 = False
                failures.append(f"(1) chi([e_{k - 1}t^{i}, y_{k},{j}]) = {v!r}")
    cond2 = True
    for i in range(ell + 1):
        for j in range(ell + 1):
            z = brackets[i][j]
            if not z.lies_in(fk):
                cond2 = False
                failures.append(f"(2) [e_{k - 1}t^{i}, y_{k},{j}] not in W_(k)")
            for l in range(ell + 1):
                if not bracket(z, e[l]).lies_in(fk):
                    cond2 = False
                    failures.append(f"(2) [[e_{k - 1}t^{i}, y_{k},{j}], e_{k - 1}t^{l}] not in W_(k)")
    gens = [shape.e(bb.i, bb.j) for bb in shape.filtration(r - k)]
    gens += [z for row in brackets for z in row]
    rad = _span_closure(shape, gens)
    cond3 = True
    for a in shape.filtration(k):
        for c in shape.filtration(r - k):
            br = shape.bracket_basis(a, c)
            if br is not None and chi(br[1]):
                cond3 = False
                failures.append(f"(3) chi([{a}, {c}]) != 0")
    for u in rad:
        for w in rad:
            if chi(bracket(u, w)):
                cond3 = False
                failures.append(f"(3) chi([{u!r}, {w!r}]) != 0")
    expected = F((r + 1 - 2 * k) % shape.p) * top
    rec = LemmaRecord(k, b, y, diag, expected, {"1": cond1, "2": cond2, "3": cond3}, failures)
    if strict and not rec.ok:
        which = next(int(n) for n, ok in rec.conditions.items() if not ok)
        raise ConditionFailed(which, failures[0])
    return rec
