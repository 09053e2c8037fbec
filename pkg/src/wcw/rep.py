"""Matrix representations of W_l over F_q.

Generator matrices act on column vectors and hold integer element codes.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .gf import frobenius
from .linalg import Arith, arith_for
from .witt import BasisIndex, LieElement, PChar, WittShape


class ModuleAxiomError(AssertionError):
    pass


class Representation:
    """A finite-dimensional U_chi(W_l)-module given by its generator matrices."""

    def __init__(self, shape: WittShape, chi: PChar, mats: Mapping[BasisIndex, np.ndarray] | None,
                 dim: int, label: str = ""):
        if chi.shape != shape:
            raise ValueError("chi lives on a different shape")
        self.shape = shape
        self.chi = chi
        self.dim = dim
        self.label = label
        self._mats: dict[BasisIndex, np.ndarray] = dict(mats or {})

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label or ''} dim={self.dim} over {self.shape}>"

    @property
    def field(self):
        return self.shape.field

    @property
    def arith(self) -> Arith:
        return arith_for(self.shape.field)

    def matrix(self, b: BasisIndex) -> np.ndarray:
        b = BasisIndex(*b)
        return self._mats[b]

    def matrices(self) -> list[np.ndarray]:
        return [self.matrix(b) for b in self.shape.basis]

    def rho(self, x: LieElement) -> np.ndarray:
        ar = self.arith
        out = ar.zeros((self.dim, self.dim))
        for b, c in x.terms.items():
            out = ar.add(out, ar.scale(c.code, self.matrix(b)))
        return out

    # -- module axioms
    def bracket_failures(self) -> list[tuple[BasisIndex, BasisIndex]]:
        ar = self.arith
        basis = self.shape.basis
        bad = []
        for k, a in enumerate(basis):
            A = self.matrix(a)
            for b in basis[k + 1:]:
                B = self.matrix(b)
                lhs = ar.sub(ar.matmul(A, B), ar.matmul(B, A))
                br = self.shape.bracket_basis(a, b)
                if br is None:
                    ok = not lhs.any()
                else:
                    c, z = br
                    ok = np.array_equal(lhs, ar.scale(c, self.matrix(z)))
                if not ok:
                    bad.append((a, b))
        return bad

    def pmap_failures(self) -> list[BasisIndex]:
        ar = self.arith
        p = self.shape.p
        bad = []
        ident = ar.eye(self.dim)
        for b in self.shape.basis:
            lhs = ar.matpow(self.matrix(b), p)
            img = self.shape.p_map_basis(b)
            if img is not None:
                lhs = ar.sub(lhs, self.matrix(img))
            want = ar.scale(frobenius(self.chi(b)).code, ident)
            if not np.array_equal(lhs, want):
                bad.append(b)
        return bad

    def check_axioms(self) -> None:
        br = self.bracket_failures()
        pm = self.pmap_failures()
        if br or pm:
            raise ModuleAxiomError(f"{self!r}: bracket failures {br[:3]}, p-map failures {pm[:3]}")

    # -- constructions
    def direct_sum(self, other: "Representation") -> "Representation":
        if other.shape != self.shape or other.chi != self.chi:
            raise ValueError("direct sum needs a common shape and p-character")
        n, m = self.dim, other.dim
        mats = {}
        for b in self.shape.basis:
            M = np.zeros((n + m, n + m), dtype=np.int64)
            M[:n, :n] = self.matrix(b)
            M[n:, n:] = other.matrix(b)
            mats[b] = M
        return Representation(self.shape, self.chi, mats, n + m, f"({self.label})+({other.label})")

    def pullback(self, chi_big: PChar) -> "Representation":
        """Inflate to W_L (L >= l) through W_L -> W_l, t^j -> 0 for j > l."""
        big = chi_big.shape
        if big.ell < self.shape.ell or big.field != self.field:
            raise ValueError("pullback needs a larger truncation degree over the same field")
        if chi_big.restrict(self.shape.ell).values != self.chi.values:
            raise ValueError("chi_big does not restrict to this module's character")
        zero = np.zeros((self.dim, self.dim), dtype=np.int64)
        mats = {b: (self.matrix(b) if b.j <= self.shape.ell else zero) for b in big.basis}
        return Representation(big, chi_big, mats, self.dim, f"inflate({self.label})")

    def transposed(self) -> list[np.ndarray]:
        return [M.T.copy() for M in self.matrices()]
