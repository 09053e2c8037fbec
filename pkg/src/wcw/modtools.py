"""Exact module-theoretic linear algebra: spinning, irreducibility, hom spaces."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .gf import format_element
from .linalg import Arith, Subspace, projective_count, projective_points
from .rep import ModuleAxiomError, Representation
from .verma import InducedModule, ModuleVector
from .witt import BasisIndex

DEFAULT_HOM_BOUND = 20_000
MAX_SAMPLES = 64
# Above this many projective kernel points a sampled theta is rejected.
MAX_KERNEL_LINES = 3126
# Kernels are scanned line by line only over fields up to this size.
SCAN_FIELD_MAX = 5 ** 5
LARGE_FIELD_PROBES = 32
SOCLE_MAX_DIM = 32
EXHAUSTIVE_LINES = 200_000


class TooLarge(ValueError):
    pass


class NotInvariant(ValueError):
    pass


class ZeroQuotient(ValueError):
    pass


class OracleNotApplicable(ValueError):
    pass


# --- spinning ---------------------------------------------------------------

def _as_rows(M: Representation, seeds) -> np.ndarray:
    rows = []
    for s in seeds:
        if isinstance(s, ModuleVector):
            rows.append(M.to_array(s))
        elif isinstance(s, Subspace):
            rows.extend(s.basis)
        else:
            rows.append(np.asarray(s, dtype=np.int64))
    if not rows:
        return np.zeros((0, M.dim), dtype=np.int64)
    return np.atleast_2d(np.array(rows, dtype=np.int64))


def spin_rows(ar: Arith, gens: list[np.ndarray], seeds: np.ndarray, n: int) -> Subspace:
    """Smallest subspace containing the seed rows and closed under v -> G v."""
    S = Subspace(ar, n)
    front = S.extend(seeds) if len(seeds) else seeds
    gt = [G.T for G in gens]
    while front.shape[0] and S.dim < n:
        cand = np.concatenate([ar.matmul(front, G) for G in gt])
        front = S.extend(cand)
    return S


def spin(seeds, M: Representation) -> Subspace:
    return spin_rows(M.arith, M.matrices(), _as_rows(M, seeds), M.dim)


def is_submodule(S: Subspace, M: Representation) -> bool:
    if S.dim == 0:
        return True
    ar = M.arith
    return all(S.contains_space(Subspace(ar, M.dim, ar.matmul(S.basis, G.T))) for G in M.matrices())


# --- Norton irreducibility test ---------------------------------------------

@dataclass
class Verdict:
    tag: str  # "Irreducible" | "ReducibleWithWitness" | "Inconclusive"
    seed: int
    samples: int
    witness: Subspace | None = None
    kernel_dim: int | None = None

    @property
    def irreducible(self) -> bool:
        return self.tag == "Irreducible"

    def to_json(self) -> dict:
        out = {"verdict": self.tag, "seed": self.seed, "theta_samples": self.samples,
               "kernel_dim": self.kernel_dim}
        if self.witness is not None:
            F = self.witness.arith.field
            out["witness_dim"] = self.witness.dim
            out["witness_basis"] = [[list(F.coords(int(c))) if F.m > 1 else int(c) for c in row]
                                    for row in self.witness.basis]
        return out


def krylov_minpoly(ar: Arith, A: np.ndarray, v: np.ndarray) -> list[int]:
    """Coefficients (low-to-high, monic) of the minimal polynomial of A relative to v."""
    n = A.shape[0]
    K = np.zeros((n + 1, n), dtype=np.int64)
    K[0] = v
    for k in range(n):
        K[k + 1] = ar.matmul(A, K[k])
    N = ar.nullspace(K.T)
    first = N[0]
    deg = int(np.flatnonzero(first)[-1])
    return [int(c) for c in first[:deg + 1]]


def _random_algebra_element(ar: Arith, gens: list[np.ndarray], rng: np.random.Generator) -> np.ndarray:
    q = ar.q
    coeffs = [int(c) for c in rng.integers(0, q, size=len(gens))]
    A = ar.lincomb(coeffs, gens)
    if A is None:
        A = ar.zeros(gens[0].shape)
    for length in (2, 3):
        idx = rng.integers(0, len(gens), size=length)
        P = gens[idx[0]]
        for t in idx[1:]:
            P = ar.matmul(P, gens[t])
        A = ar.add(A, ar.scale(int(rng.integers(1, q)), P))
    return A


def _probe_kernel(ar, gens, gt, theta, K, n, rng) -> Subspace | None:
    """Large fields: spin random kernel vectors looking for a witness.

    A clean probe proves nothing, so the caller resamples theta instead of
    declaring irreducibility.
    """
    KT = ar.nullspace(theta.T)
    for basis, acts, dual in ((K, gens, False), (KT, gt, True)):
        for _ in range(LARGE_FIELD_PROBES):
            c = rng.integers(0, ar.q, size=basis.shape[0]).astype(np.int64)
            if not c.any():
                continue
            S = spin_rows(ar, acts, ar.matmul(c[None, :], basis), n)
            if S.dim < n:
                return S.annihilator() if dual else S
    return None


def norton_test(ar: Arith, gens: list[np.ndarray], n: int, seed: int = 0,
                max_samples: int = MAX_SAMPLES) -> Verdict:
    if n == 0:
        raise ValueError("the zero module is not a candidate for irreducibility")
    if n == 1:
        return Verdict("Irreducible", seed, 0, kernel_dim=1)
    rng = np.random.Generator(np.random.Philox(seed))
    gt = [G.T.copy() for G in gens]
    for sample in range(1, max_samples + 1):
        A = _random_algebra_element(ar, gens, rng)
        v = rng.integers(0, ar.q, size=n).astype(np.int64)
        if not v.any():
            continue
        roots = ar.poly_roots(krylov_minpoly(ar, A, v))
        if not roots:
            continue
        c = roots[int(rng.integers(0, len(roots)))]
        theta = ar.sub(A, ar.scale(c, ar.eye(n)))
        K = ar.nullspace(theta)
        if ar.q > SCAN_FIELD_MAX and K.shape[0] > 1:
            w = _probe_kernel(ar, gens, gt, theta, K, n, rng)
            if w is not None:
                return Verdict("ReducibleWithWitness", seed, sample, w, K.shape[0])
            continue
        if projective_count(ar.q, K.shape[0]) > MAX_KERNEL_LINES:
            continue
        for x in projective_points(ar, K):
            S = spin_rows(ar, gens, x[None, :], n)
            if S.dim < n:
                return Verdict("ReducibleWithWitness", seed, sample, S, K.shape[0])
        KT = ar.nullspace(theta.T)
        for x in projective_points(ar, KT):
            S = spin_rows(ar, gt, x[None, :], n)
            if S.dim < n:
                return Verdict("ReducibleWithWitness", seed, sample, S.annihilator(), K.shape[0])
        return Verdict("Irreducible", seed, sample, kernel_dim=K.shape[0])
    return Verdict("Inconclusive", seed, max_samples)


def is_irreducible(M: Representation, seed: int = 0, max_samples: int = MAX_SAMPLES) -> Verdict:
    """Randomised Norton criterion with deterministic Philox seeding."""
    return norton_test(M.arith, M.matrices(), M.dim, seed, max_samples)


# --- homomorphisms ----------------------------------------------------------

@dataclass
class ModuleMorphismSpace:
    dimension: int
    basis: list[np.ndarray]
    method: str

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "method": self.method}


def standard_basis(M: Representation, seed_vec: np.ndarray):
    """Spin one vector keeping words: returns (B, parents) or None if not cyclic.

    B[k] is a basis vector; parents[k] = (i, g) means B[k] = G_g B[i].
    """
    ar = M.arith
    n = M.dim
    gens = M.matrices()
    S = Subspace(ar, n)
    S.extend(seed_vec[None, :])
    vecs = [np.asarray(seed_vec, dtype=np.int64)]
    parents: list[tuple[int, int]] = [(-1, -1)]
    i = 0
    while i < len(vecs) and len(vecs) < n:
        for g, G in enumerate(gens):
            x = ar.matmul(G, vecs[i])
            if S.extend(x[None, :]).shape[0]:
                vecs.append(x)
                parents.append((i, g))
                if len(vecs) == n:
                    break
        i += 1
    if len(vecs) < n:
        return None
    return np.array(vecs), parents


def _cyclic_generator(M: Representation):
    if isinstance(M, InducedModule):
        sb = standard_basis(M, M.generator_vector)
        if sb is not None:
            return sb
    for k in range(M.dim):
        e = np.zeros(M.dim, dtype=np.int64)
        e[k] = 1
        sb = standard_basis(M, e)
        if sb is not None:
            return sb
    return None


def intertwines(Phi: np.ndarray, M: Representation, N: Representation) -> bool:
    ar = M.arith
    return all(np.array_equal(ar.matmul(Phi, M.matrix(b)), ar.matmul(N.matrix(b), Phi))
               for b in M.shape.basis)


def _hom_cyclic(M: Representation, N: Representation, sb) -> ModuleMorphismSpace:
    ar = M.arith
    B, parents = sb
    nM, nN = M.dim, N.dim
    Bc = B.T  # columns are basis vectors
    Binv = ar.inverse(Bc)
    # W[k] maps a candidate image u of the cyclic vector to the image of B[k].
    W = np.zeros((nM, nN, nN), dtype=np.int64)
    W[0] = ar.eye(nN)
    for k in range(1, nM):
        i, g = parents[k]
        W[k] = ar.matmul(N.matrix(M.shape.basis[g]), W[i])
    cons = Subspace(ar, nN)
    Wflat = W.reshape(nM, nN * nN)
    WT = W.transpose(0, 2, 1).reshape(nM * nN, nN)
    for b in M.shape.basis:
        C = ar.matmul(Binv, ar.matmul(M.matrix(b), Bc))  # coordinates of G B[i] in basis B
        rhs = ar.matmul(C.T, Wflat).reshape(nM, nN, nN)
        lhs = ar.matmul(WT, N.matrix(b).T).reshape(nM, nN, nN).transpose(0, 2, 1)
        cons.extend(ar.sub(lhs, rhs).reshape(nM * nN, nN))
        if cons.dim == nN:
            break
    sols = ar.nullspace(cons.basis) if cons.dim else ar.eye(nN)
    basis = []
    for u in sols:
        images = np.stack([ar.matmul(W[k], u) for k in range(nM)], axis=1)
        Phi = ar.matmul(images, Binv)
        if not intertwines(Phi, M, N):
            raise ModuleAxiomError("cyclic hom solver produced a non-intertwiner")
        basis.append(Phi)
    return ModuleMorphismSpace(len(basis), basis, "cyclic")


def _hom_kronecker(M: Representation, N: Representation) -> ModuleMorphismSpace:
    """Kernel of Phi -> Phi rho_M(g) - rho_N(g) Phi, one generator at a time."""
    ar = M.arith
    nM, nN = M.dim, N.dim
    IM = np.eye(nM, dtype=np.int64)
    IN = np.eye(nN, dtype=np.int64)
    cons = Subspace(ar, nM * nN)
    for b in M.shape.basis:
        C = ar.sub(np.kron(IN, M.matrix(b).T), np.kron(N.matrix(b), IM))
        cons.extend(C)
    sols = ar.nullspace(cons.basis) if cons.dim else ar.eye(nM * nN)
    basis = [s.reshape(nN, nM) for s in sols]
    for Phi in basis:
        if not intertwines(Phi, M, N):
            raise ModuleAxiomError("kronecker hom solver produced a non-intertwiner")
    return ModuleMorphismSpace(len(basis), basis, "kronecker")


def hom_space(M: Representation, N: Representation, bound: int = DEFAULT_HOM_BOUND) -> ModuleMorphismSpace:
    """Basis of Hom(M, N): matrices Phi with Phi rho_M(g) = rho_N(g) Phi for all g."""
    if M.shape != N.shape or M.chi != N.chi:
        raise ValueError("hom_space needs modules over the same shape and p-character")
    if M.dim * N.dim > bound:
        raise TooLarge(f"dim(M)*dim(N) = {M.dim * N.dim} exceeds {bound}; "
                       "use intertwiner_candidate for Verma pairs")
    sb = _cyclic_generator(M)
    if sb is not None:
        return _hom_cyclic(M, N, sb)
    return _hom_kronecker(M, N)


@dataclass
class Intertwiner:
    matrix: np.ndarray  # Z(mu) -> Z(lambda)
    w: np.ndarray
    exponent: int


@dataclass
class NotApplicable:
    reason: str

    def __bool__(self) -> bool:
        return False


def intertwiner_candidate(M: InducedModule, N: InducedModule):
    """Try v_mu -> w = (e_{-1} t^l)^[lambda - mu] (x) v_lambda, for M = Z(lambda), N = Z(mu).

    Returns an :class:`Intertwiner` (a map N -> M, verified on all generators)
    or :class:`NotApplicable` naming the failed annihilation condition.
    """
    dm, dn = M.datum, N.datum
    if dm.cut != 0 or dn.cut != 0 or M.chi != N.chi:
        return NotApplicable("needs two Verma modules for the same chi")
    diff = dm.lam - dn.lam
    if not diff.is_prime_field():
        return NotApplicable("lambda - mu is not in the prime field")
    e = diff.code
    shape = M.shape
    ell = shape.ell
    ar = M.arith
    top = dm.order.index(BasisIndex(-1, ell))
    mono = [0] * dm.rank
    mono[top] = e
    w = M.basis_vector(tuple(mono))
    for b in shape.filtration(0):
        img = ar.matmul(M.matrix(b), w)
        want = ar.scale(dn.mu[b].code, w)
        if not np.array_equal(img, want):
            return NotApplicable(f"{b} . w != {format_element(dn.mu[b])} w")
    Phi = np.zeros((M.dim, N.dim), dtype=np.int64)
    images: dict[tuple, np.ndarray] = {}
    for col, m in enumerate(N.monomials):
        first = next((k for k, a in enumerate(m) if a), None)
        if first is None:
            img = w
        else:
            tail = m[:first] + (m[first] - 1,) + m[first + 1:]
            img = ar.matmul(M.matrix(dn.order[first]), images[tail])
        images[m] = img
        Phi[:, col] = img
    if not intertwines(Phi, N, M):
        return NotApplicable("map defined by w does not intertwine")
    return Intertwiner(Phi, w, e)


# --- submodule structure ----------------------------------------------------

def cyclic_submodules(ar: Arith, gens: list[np.ndarray], n: int, max_lines: int = EXHAUSTIVE_LINES) -> list[Subspace]:
    """All distinct cyclic submodules, by spinning every 1-dimensional subspace."""
    if projective_count(ar.q, n) > max_lines:
        raise TooLarge(f"{projective_count(ar.q, n)} lines exceed the exhaustive bound {max_lines}")
    seen: dict[bytes, Subspace] = {}
    for v in projective_points(ar, np.eye(n, dtype=np.int64)):
        S = spin_rows(ar, gens, v[None, :], n)
        seen.setdefault(S.key(), S)
    return list(seen.values())


def _socle(ar: Arith, gens, n: int, max_lines: int) -> Subspace:
    cyc = cyclic_submodules(ar, gens, n, max_lines)
    minimal = [S for S in cyc
               if not any(T.dim < S.dim and S.contains_space(T) for T in cyc)]
    soc = Subspace(ar, n)
    for S in minimal:
        soc.extend(S.basis)
    return soc


def socle_and_maximal(M: Representation, max_lines: int = EXHAUSTIVE_LINES) -> tuple[Subspace, Subspace]:
    """(socle, radical) by exhaustive spinning; the radical is the annihilator of the dual socle."""
    if M.dim > SOCLE_MAX_DIM:
        raise TooLarge(f"exhaustive socle search is limited to dimension {SOCLE_MAX_DIM}")
    ar = M.arith
    gens = M.matrices()
    soc = _socle(ar, gens, M.dim, max_lines)
    dual_soc = _socle(ar, [G.T.copy() for G in gens], M.dim, max_lines)
    return soc, dual_soc.annihilator()


def quotient(M: Representation, S: Subspace, label: str = "") -> Representation:
    """Action on M/S in the coordinates of the non-pivot columns of S."""
    ar = M.arith
    n = M.dim
    if S.dim == n:
        raise ZeroQuotient("quotient by the whole module is the zero module")
    if not is_submodule(S, M):
        raise NotInvariant("subspace is not invariant under all generators")
    keep = [c for c in range(n) if c not in set(S.pivots)]
    mats = {}
    for b in M.shape.basis:
        W = M.matrix(b)[:, keep]
        if S.dim:
            W = ar.sub(W, ar.matmul(S.basis.T, W[S.pivots, :]))
        mats[b] = W[keep, :]
    Q = Representation(M.shape, M.chi, mats, len(keep), label or f"{M.label}/[{S.dim}]")
    Q.check_axioms()
    return Q


def submodule_rep(M: Representation, S: Subspace, label: str = "") -> Representation:
    """Action restricted to an invariant subspace, in the basis S.basis."""
    ar = M.arith
    if not is_submodule(S, M):
        raise NotInvariant("subspace is not invariant under all generators")
    mats = {}
    for b in M.shape.basis:
        img = ar.matmul(S.basis, M.matrix(b).T)  # rows: G s
        mats[b] = img[:, S.pivots].T.copy()  # echelon coordinates are the pivot entries
    R = Representation(M.shape, M.chi, mats, S.dim, label or f"sub[{S.dim}]({M.label})")
    R.check_axioms()
    return R


# --- independent exhaustive oracle -----------------------------------------

@dataclass
class OracleResult:
    irreducible: bool
    method: str
    lines_spun: int
    witness: Subspace | None = None
    notes: list[str] = dc_field(default_factory=list)


def _restricted(ar: Arith, A: np.ndarray, U: Subspace) -> np.ndarray:
    """Matrix of A on the invariant subspace U, in the echelon basis of U."""
    img = ar.matmul(U.basis, A.T)
    if U.reduce(img).any():
        raise OracleNotApplicable("subspace is not invariant")
    return img[:, U.pivots].T


def _eigen_split(ar: Arith, A: np.ndarray, U: Subspace) -> list[Subspace]:
    """Eigenspaces of A on U; raise when A|U has eigenvalues outside the field."""
    u = U.dim
    AU = _restricted(ar, A, U)
    roots: set[int] = set()
    for k in range(u):
        e = np.zeros(u, dtype=np.int64)
        e[k] = 1
        roots.update(ar.poly_roots(krylov_minpoly(ar, AU, e)))
    total = 0
    out = []
    for c in sorted(roots):
        shifted = ar.sub(AU, ar.scale(c, ar.eye(u)))
        total += ar.nullspace(ar.matpow(shifted, u)).shape[0]
        coeffs = ar.nullspace(shifted)
        out.append(Subspace(ar, U.n, ar.matmul(coeffs, U.basis)))
    if total != u:
        raise OracleNotApplicable("characteristic polynomial does not split over the field")
    return out


def primitive_vector_spaces(M: Representation) -> list[Subspace]:
    """Joint eigenspaces of W_{l,[0]} inside the W_{l,(1)}-invariants.

    Every nonzero submodule meets one of these, provided W_{l,(1)} acts
    nilpotently (checked) and the degree-0 actions split over the field.
    """
    ar = M.arith
    n = M.dim
    shape = M.shape
    nil = [M.matrix(b) for b in shape.filtration(1)]
    if nil:
        X = Subspace(ar, n, np.eye(n, dtype=np.int64))
        for _ in range(n + 1):
            if X.dim == 0:
                break
            X = Subspace(ar, n, np.concatenate([ar.matmul(X.basis, G.T) for G in nil]))
        if X.dim:
            raise OracleNotApplicable("W_(1) does not act nilpotently")
        U = Subspace(ar, n, ar.nullspace(np.concatenate(nil)))
    else:
        U = Subspace(ar, n, np.eye(n, dtype=np.int64))
    spaces = [U]
    for b in shape.graded(0):
        spaces = [E for S in spaces for E in _eigen_split(ar, M.matrix(b), S) if E.dim]
    return spaces


def exhaustive_oracle(M: Representation, max_lines: int = EXHAUSTIVE_LINES,
                      method: str = "auto") -> OracleResult:
    """Decide irreducibility without random sampling.

    ``all-lines`` spins every 1-dimensional subspace; ``primitive-lines``
    spins every line of every primitive-vector space (see
    :func:`primitive_vector_spaces`).  ``auto`` picks all-lines when the
    line count is within `max_lines`.
    """
    ar = M.arith
    n = M.dim
    gens = M.matrices()
    if method not in ("auto", "all-lines", "primitive-lines"):
        raise ValueError(f"unknown oracle method {method!r}")
    if method == "auto":
        method = "all-lines" if projective_count(ar.q, n) <= max_lines else "primitive-lines"
    if method == "all-lines":
        if projective_count(ar.q, n) > max_lines:
            raise TooLarge(f"{projective_count(ar.q, n)} lines exceed {max_lines}")
        lines = 0
        for v in projective_points(ar, np.eye(n, dtype=np.int64)):
            lines += 1
            S = spin_rows(ar, gens, v[None, :], n)
            if S.dim < n:
                return OracleResult(False, "all-lines", lines, S)
        return OracleResult(True, "all-lines", lines)
    spaces = primitive_vector_spaces(M)
    total = sum(projective_count(ar.q, E.dim) for E in spaces)
    if total > max_lines:
        raise TooLarge(f"{total} primitive lines exceed {max_lines}")
    lines = 0
    for E in spaces:
        for v in projective_points(ar, E.basis):
            lines += 1
            S = spin_rows(ar, gens, v[None, :], n)
            if S.dim < n:
                return OracleResult(False, "primitive-lines", lines, S)
    return OracleResult(True, "primitive-lines", lines,
                        notes=[f"{len(spaces)} joint eigenspaces of dims {[E.dim for E in spaces]}"])
