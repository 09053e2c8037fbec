"""Dense exact linear algebra over F_q on arrays of integer element codes.

Prime fields use plain modular arithmetic (matrix products go through
float64 BLAS whenever the accumulated sums are provably exact).  Extension
fields use log/antilog tables for products and digit tables for sums.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .gf import Field

_EXACT_FLOAT = 2 ** 52
_ADD_TABLE_MAX_Q = 4096


class Arith:
    """Vectorised field arithmetic on int64 code arrays."""

    def __init__(self, field: Field):
        self.field = field
        self.p = field.p
        self.q = field.q
        self.prime = field.m == 1
        if not self.prime:
            self._exp, self._log = field.tables
            self._digits = field.digits
            self._pw = np.array(field._powers, dtype=np.int64)
            codes = np.arange(self.q, dtype=np.int64)
            self._neg = ((-self._digits) % self.p) @ self._pw
            inv = np.zeros(self.q, dtype=np.int64)
            inv[1:] = self._exp[(-self._log[1:]) % (self.q - 1)]
            self._inv = inv
            self._add_table = None
            if self.q <= _ADD_TABLE_MAX_Q:
                tab = np.empty((self.q, self.q), dtype=np.int16)
                for a in codes:
                    tab[a] = ((self._digits[a] + self._digits) % self.p) @ self._pw
                self._add_table = tab

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def add(self, a, b) -> np.ndarray:
        if self.prime:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a, b].astype(np.int64)
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._pw

    def neg(self, a) -> np.ndarray:
        if self.prime:
            return (-np.asarray(a)) % self.p
        return self._neg[a]

    def sub(self, a, b) -> np.ndarray:
        if self.prime:
            return (a - b) % self.p
        return self.add(a, self._neg[b])

    def mul(self, a, b) -> np.ndarray:
        if self.prime:
            return (a * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.prime:
            return np.array([pow(int(x), self.p - 2, self.p) for x in a.ravel()],
                            dtype=np.int64).reshape(a.shape)
        return self._inv[a]

    def inv_scalar(self, a: int) -> int:
        return self.field.inv(int(a))

    def scale(self, c: int, A) -> np.ndarray:
        return self.mul(np.int64(c), A)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.prime:
            k = A.shape[-1]
            if k * (self.p - 1) ** 2 < _EXACT_FLOAT:
                C = A.astype(np.float64) @ B.astype(np.float64)
                return np.rint(C).astype(np.int64) % self.p
            return (A @ B) % self.p  # pragma: no cover - huge p only
        vec = B.ndim == 1
        if vec:
            B = B[:, None]
        C = np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
        for t in range(A.shape[-1]):
            col = A[..., t:t + 1]
            row = B[t:t + 1, :]
            if not col.any() or not row.any():
                continue
            C = self.add(C, self.mul(col, row))
        return C[..., 0] if vec else C

    def matpow(self, A: np.ndarray, e: int) -> np.ndarray:
        result = self.eye(A.shape[0])
        base = A
        while e:
            if e & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            e >>= 1
        return result

    def lincomb(self, coeffs, mats) -> np.ndarray:
        out = None
        for c, M in zip(coeffs, mats):
            if c == 0:
                continue
            term = self.scale(c, M)
            out = term if out is None else self.add(out, term)
        return out

    # -- elimination

    def rref(self, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form; ties broken by the lowest column index."""
        A = np.array(A, dtype=np.int64, copy=True)
        rows, cols = A.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(A[r:, c])
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                A[[r, k]] = A[[k, r]]
            lead = int(A[r, c])
            if lead != 1:
                A[r, c:] = self.scale(self.inv_scalar(lead), A[r, c:])
            f = A[:, c].copy()
            f[r] = 0
            hit = np.flatnonzero(f)
            if hit.size:
                A[hit, c:] = self.sub(A[hit, c:], self.mul(f[hit, None], A[r, c:][None, :]))
            pivots.append(c)
            r += 1
        return A[:r], pivots

    def rank(self, A: np.ndarray) -> int:
        return len(self.rref(A)[1])

    def nullspace(self, A: np.ndarray) -> np.ndarray:
        """Basis (as rows) of {v : A v = 0}."""
        A = np.asarray(A, dtype=np.int64)
        n = A.shape[1]
        R, piv = self.rref(A) if A.shape[0] else (np.zeros((0, n), dtype=np.int64), [])
        free = [c for c in range(n) if c not in set(piv)]
        N = np.zeros((len(free), n), dtype=np.int64)
        for k, f in enumerate(free):
            N[k, f] = 1
            if piv:
                N[k, piv] = self.neg(R[:, f])
        return N

    def inverse(self, A: np.ndarray) -> np.ndarray:
        n = A.shape[0]
        R, piv = self.rref(np.concatenate([A, self.eye(n)], axis=1))
        if piv != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return R[:, n:]

    def poly_roots(self, coeffs: list[int]) -> list[int]:
        """Roots in the field of sum(coeffs[i] x^i), by evaluation at every element."""
        xs = np.arange(self.q, dtype=np.int64)
        acc = np.zeros(self.q, dtype=np.int64)
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, xs), np.int64(c))
        return [int(x) for x in np.flatnonzero(acc == 0)]


@lru_cache(maxsize=8)
def arith_for(field: Field) -> Arith:
    return Arith(field)


class Subspace:
    """Row space kept in reduced echelon form, for exact membership tests."""

    def __init__(self, arith: Arith, n: int, rows: np.ndarray | None = None):
        self.arith = arith
        self.n = n
        self.basis = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []
        if rows is not None and len(rows):
            self.extend(rows)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self) -> int:
        return self.dim

    def reduce(self, V: np.ndarray) -> np.ndarray:
        V = np.atleast_2d(np.asarray(V, dtype=np.int64))
        if not self.pivots:
            return V.copy()
        ar = self.arith
        return ar.sub(V, ar.matmul(V[:, self.pivots], self.basis))

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    def contains_space(self, other: "Subspace") -> bool:
        return other.dim == 0 or not self.reduce(other.basis).any()

    def extend(self, V: np.ndarray) -> np.ndarray:
        """Add the rows of V; return the new echelon rows (the increment)."""
        V = np.atleast_2d(np.asarray(V, dtype=np.int64))
        if V.shape[0] == 0:
            return V
        residual = self.reduce(V)
        residual = residual[residual.any(axis=1)]
        if residual.shape[0] == 0:
            return residual
        R, piv = self.arith.rref(residual)
        if self.pivots:
            ar = self.arith
            self.basis = ar.sub(self.basis, ar.matmul(self.basis[:, piv], R))
        basis = np.concatenate([self.basis, R])
        pivots = self.pivots + piv
        order = np.argsort(pivots, kind="stable")
        self.basis = basis[order]
        self.pivots = [pivots[i] for i in order]
        return R

    def copy(self) -> "Subspace":
        out = Subspace(self.arith, self.n)
        out.basis = self.basis.copy()
        out.pivots = list(self.pivots)
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.n == other.n
                and self.pivots == other.pivots and np.array_equal(self.basis, other.basis))

    def key(self) -> bytes:
        return bytes(str(self.pivots), "ascii") + self.basis.tobytes()

    def annihilator(self) -> "Subspace":
        """{v : w . v = 0 for all w in self}."""
        if self.dim == 0:
            return Subspace(self.arith, self.n, np.eye(self.n, dtype=np.int64))
        return Subspace(self.arith, self.n, self.arith.nullspace(self.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        return self.annihilator().sum(other.annihilator()).annihilator()

    def sum(self, other: "Subspace") -> "Subspace":
        out = self.copy()
        out.extend(other.basis)
        return out


def projective_points(arith: Arith, basis: np.ndarray):
    """Yield one representative per 1-dimensional subspace of the row span."""
    k, n = basis.shape
    q = arith.q
    for lead in range(k):
        # coefficient 1 at position `lead`, 0 before it, anything after
        tail = k - lead - 1
        for code in range(q ** tail):
            coeffs = np.zeros(k, dtype=np.int64)
            coeffs[lead] = 1
            c = code
            for j in range(tail):
                coeffs[lead + 1 + j] = c % q
                c //= q
            yield arith.matmul(coeffs[None, :], basis)[0]


def projective_count(q: int, k: int) -> int:
    return (q ** k - 1) // (q - 1) if k else 0
