"""The truncated current Witt algebra W_l = W (x) k[t]/(t^(l+1)).

Basis elements e_i t^j (-1 <= i <= p-2, 0 <= j <= l) are indexed by
:class:`BasisIndex`.  Brackets and the p-map follow the closed-form rules

    [e_i t^k, e_j t^l] = (j - i) e_{i+j} t^{k+l},   (e_i t^k)^[p] = delta_{i,0} e_0 t^{kp}

with out-of-range degrees and t-powers vanishing.
"""

from __future__ import annotations

import json
import re
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .gf import Field, FieldElement, format_element, parse_element


class ShapeMismatch(ValueError):
    pass


class NotBasisElement(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class NoVanishing(ValueError):
    """chi is nonzero on the last filtration piece, so its height exceeds p-2."""


class Infeasible(ValueError):
    pass


class BasisIndex(NamedTuple):
    i: int  # Witt degree
    j: int  # power of t

    def __str__(self) -> str:
        return f"e({self.i},{self.j})"


_KEY_RE = re.compile(r"^e\((-?\d+),(\d+)\)$")


def parse_index(key: str) -> BasisIndex:
    m = _KEY_RE.match(key.replace(" ", ""))
    if not m:
        raise ValueError(f"bad basis key {key!r}; expected e(i,j)")
    return BasisIndex(int(m.group(1)), int(m.group(2)))


class WittShape:
    """Shape data of W_l over a working field: basis, bracket table, gradings."""

    def __init__(self, field: Field, ell: int):
        if ell < 0:
            raise ValueError("truncation degree must be >= 0")
        self.field = field
        self.p = field.p
        self.ell = ell

    def __repr__(self) -> str:
        return f"WittShape(p={self.p}, ell={self.ell}, m={self.field.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, WittShape) and self.ell == other.ell and self.field == other.field

    def __hash__(self) -> int:
        return hash((self.field, self.ell))

    @property
    def dim(self) -> int:
        return (self.ell + 1) * self.p

    @cached_property
    def basis(self) -> list[BasisIndex]:
        return [BasisIndex(i, j) for i in range(-1, self.p - 1) for j in range(self.ell + 1)]

    def index(self, b: BasisIndex) -> int:
        return (b.i + 1) * (self.ell + 1) + b.j

    def contains(self, b: BasisIndex) -> bool:
        return -1 <= b.i <= self.p - 2 and 0 <= b.j <= self.ell

    def with_field(self, field: Field) -> "WittShape":
        return WittShape(field, self.ell)

    # -- structure constants
    def bracket_basis(self, a: BasisIndex, b: BasisIndex) -> tuple[int, BasisIndex] | None:
        """[a, b] as (integer coefficient mod p, basis index), or None when zero."""
        c = (b.i - a.i) % self.p
        deg, tp = a.i + b.i, a.j + b.j
        if c == 0 or deg > self.p - 2 or deg < -1 or tp > self.ell:
            return None
        return c, BasisIndex(deg, tp)

    @cached_property
    def structure_table(self) -> dict[tuple[BasisIndex, BasisIndex], tuple[int, BasisIndex] | None]:
        return {(a, b): self.bracket_basis(a, b) for a in self.basis for b in self.basis}

    def p_map_basis(self, b: BasisIndex) -> BasisIndex | None:
        if b.i != 0 or b.j * self.p > self.ell:
            return None
        return BasisIndex(0, b.j * self.p)

    # -- gradings and filtrations
    def filtration(self, i: int) -> list[BasisIndex]:
        """Basis of W_{l,(i)} = sum of degrees >= i."""
        if not -1 <= i <= self.p - 2:
            raise OutOfRange(f"filtration index {i} outside [-1, {self.p - 2}]")
        return [b for b in self.basis if b.i >= i]

    def graded(self, i: int) -> list[BasisIndex]:
        if not -1 <= i <= self.p - 2:
            raise OutOfRange(f"degree {i} outside [-1, {self.p - 2}]")
        return [b for b in self.basis if b.i == i]

    def tgraded(self, j: int) -> list[BasisIndex]:
        """Basis of W_l^[j] = W (x) t^j."""
        if not 0 <= j <= self.ell:
            raise OutOfRange(f"t-degree {j} outside [0, {self.ell}]")
        return [b for b in self.basis if b.j == j]

    def element(self, terms: Mapping[BasisIndex, object] | None = None) -> "LieElement":
        return LieElement(self, terms or {})

    def e(self, i: int, j: int = 0) -> "LieElement":
        b = BasisIndex(i, j)
        if not self.contains(b):
            raise OutOfRange(f"{b} not in basis of W_{self.ell}")
        return LieElement(self, {b: self.field.one})


class LieElement:
    """Element of W_l stored as a sparse map BasisIndex -> FieldElement (no zeros)."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape: WittShape, terms: Mapping[BasisIndex, object]):
        F = shape.field
        clean = {}
        for b, c in terms.items():
            b = BasisIndex(*b)
            if not shape.contains(b):
                raise OutOfRange(f"{b} not in basis of W_{shape.ell}")
            c = F(c)
            if c:
                clean[b] = c
        self.shape = shape
        self.terms = clean

    def _check(self, other: "LieElement") -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, self.shape.field.zero) + c
        return LieElement(self.shape, out)

    def __neg__(self) -> "LieElement":
        return LieElement(self.shape, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "LieElement":
        s = self.shape.field(scalar)
        return LieElement(self.shape, {b: s * c for b, c in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and self.shape == other.shape and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"{format_element(c)}*{b}" for b, c in sorted(self.terms.items())]
        return " + ".join(parts)

    def is_basis(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.values())) == 1

    def support(self) -> set[BasisIndex]:
        return set(self.terms)

    def lies_in(self, indices: Iterable[BasisIndex]) -> bool:
        return self.support() <= set(indices)

    def vector(self) -> np.ndarray:
        v = np.zeros(self.shape.dim, dtype=np.int64)
        for b, c in self.terms.items():
            v[self.shape.index(b)] = c.code
        return v

    @classmethod
    def from_vector(cls, shape: WittShape, v) -> "LieElement":
        F = shape.field
        return cls(shape, {b: FieldElement(F, int(v[k])) for k, b in enumerate(shape.basis) if v[k]})


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """Bilinear extension of the basis bracket rule."""
    a._check(b)
    shape = a.shape
    F = shape.field
    out: dict[BasisIndex, FieldElement] = {}
    table = shape.structure_table
    for x, cx in a.terms.items():
        for y, cy in b.terms.items():
            r = table[(x, y)]
            if r is None:
                continue
            k, z = r
            out[z] = out.get(z, F.zero) + cx * cy * k
    return LieElement(shape, out)


def p_map(x: LieElement) -> LieElement:
    """p-map on a single basis element e_i t^k."""
    if not x.is_basis():
        raise NotBasisElement(f"p-map is only exposed on basis elements, got {x!r}")
    (b,) = x.terms
    img = x.shape.p_map_basis(b)
    return x.shape.element({img: 1} if img else {})


def ad_power(x: LieElement, y: LieElement, n: int) -> LieElement:
    for _ in range(n):
        y = bracket(x, y)
    return y


class PChar:
    """A p-character chi: a linear functional on W_l given by its basis values."""

    def __init__(self, shape: WittShape, values: Mapping[BasisIndex, object] | None = None):
        F = shape.field
        vals = {}
        for b, c in (values or {}).items():
            b = BasisIndex(*b)
            if not shape.contains(b):
                raise OutOfRange(f"{b} not in basis of W_{shape.ell}")
            c = F(c)
            if c:
                vals[b] = c
        self.shape = shape
        self.values = vals

    def __call__(self, x) -> FieldElement:
        F = self.shape.field
        if isinstance(x, LieElement):
            out = F.zero
            for b, c in x.terms.items():
                v = self.values.get(b)
                if v is not None:
                    out = out + c * v
            return out
        return self.values.get(BasisIndex(*x), F.zero)

    def __eq__(self, other) -> bool:
        return isinstance(other, PChar) and self.shape == other.shape and self.values == other.values

    def __repr__(self) -> str:
        body = ", ".join(f"{b}: {format_element(c)}" for b, c in sorted(self.values.items()))
        return f"PChar(p={self.shape.p}, ell={self.shape.ell}, {{{body}}})"

    def is_zero(self) -> bool:
        return not self.values

    def vanishes_on(self, indices: Iterable[BasisIndex]) -> bool:
        return all(b not in self.values for b in indices)

    def with_field(self, field: Field) -> "PChar":
        return PChar(self.shape.with_field(field), {b: field(c) for b, c in self.values.items()})

    def restrict(self, k: int) -> "PChar":
        """chi restricted to W_k, identified with t-degrees 0..k of W_l."""
        shape = WittShape(self.shape.field, k)
        return PChar(shape, {b: c for b, c in self.values.items() if b.j <= k})

    def to_json(self) -> dict:
        out = {"p": self.shape.p, "ell": self.shape.ell,
               "values": {str(b): format_element(c) for b, c in sorted(self.values.items())}}
        if self.shape.field.m > 1:
            out["field"] = self.shape.field.describe()
        return out

    @classmethod
    def from_json(cls, data: dict | str, field: Field | None = None) -> "PChar":
        if isinstance(data, str):
            data = json.loads(data)
        unknown = set(data) - {"p", "ell", "values", "field"}
        if unknown:
            raise ValueError(f"unknown chi keys: {sorted(unknown)}")
        p, ell = int(data["p"]), int(data["ell"])
        if field is None:
            fd = data.get("field")
            field = Field(p, fd["m"], fd["modulus"]) if fd else Field(p, 1)
        if field.p != p:
            raise ValueError("field characteristic does not match chi")
        shape = WittShape(field, ell)
        values = {}
        for key, text in data.get("values", {}).items():
            b = parse_index(key)
            if not shape.contains(b):
                raise OutOfRange(f"{key} not in basis of W_{ell}")
            values[b] = parse_element(field, text)
        return cls(shape, values)


def height(chi: PChar) -> int:
    """Least i in [-1, p-2] with chi(W_{l,(i)}) = 0."""
    shape = chi.shape
    for i in range(-1, shape.p - 1):
        if chi.vanishes_on(shape.filtration(i)):
            return i
    raise NoVanishing("chi is nonzero on W_{l,(p-2)}; height p-1 is outside the treated range")


SCENARIOS = ("height-minus-one", "height0", "height1-a", "height1-b", "heightr")

_R_RE = re.compile(r"^heightr[(:]?(\d+)\)?$")


def parse_scenario(tag: str) -> tuple[str, int | None]:
    """Split 'heightr(2)' / 'heightr:2' into ('heightr', 2); other tags pass through."""
    m = _R_RE.match(tag)
    if m:
        return "heightr", int(m.group(1))
    if tag not in SCENARIOS or tag == "heightr":
        raise ValueError(f"unknown scenario {tag!r}")
    return tag, None


def scenario_chi(shape: WittShape, tag: str, seed: int = 0) -> PChar:
    """A p-character satisfying the hypotheses named by `tag`.

    Free values are drawn from the prime field with a Philox stream seeded by
    `seed`; the forced nonzero values are drawn from F_p^*.
    """
    kind, r = parse_scenario(tag)
    p, ell = shape.p, shape.ell
    rng = np.random.Generator(np.random.Philox(seed))

    def free() -> int:
        return int(rng.integers(0, p))

    def nonzero() -> int:
        return int(rng.integers(1, p))

    vals: dict[BasisIndex, int] = {}
    if kind == "height-minus-one":
        pass
    elif kind == "height0":
        for j in range(ell):
            vals[BasisIndex(-1, j)] = free()
        vals[BasisIndex(-1, ell)] = nonzero()
    elif kind == "height1-a":
        if ell < 1:
            raise Infeasible("height1-a needs ell >= 1 (chi(e_0 t^j) != 0 for some j < ell)")
        for j in range(ell):
            vals[BasisIndex(-1, j)] = free()
            vals[BasisIndex(0, j)] = free()
        vals[BasisIndex(-1, ell)] = nonzero()
        jstar = int(rng.integers(0, ell))
        vals[BasisIndex(0, jstar)] = nonzero()
    elif kind == "height1-b":
        for j in range(ell + 1):
            vals[BasisIndex(-1, j)] = free()
        for j in range(ell):
            vals[BasisIndex(0, j)] = free()
        vals[BasisIndex(0, ell)] = nonzero()
    else:
        if not 1 < r < p - 1:
            raise Infeasible(f"heightr needs 1 < r < p-1 = {p - 1}, got r={r}")
        for i in range(-1, r - 1):
            for j in range(ell + 1):
                vals[BasisIndex(i, j)] = free()
        for j in range(ell):
            vals[BasisIndex(r - 1, j)] = free()
        vals[BasisIndex(r - 1, ell)] = nonzero()
    chi = PChar(shape, vals)
    _assert_scenario(chi, kind, r)
    return chi


def _assert_scenario(chi: PChar, kind: str, r: int | None) -> None:
    ell = chi.shape.ell
    h = height(chi)
    if kind == "height-minus-one":
        assert h == -1
    elif kind == "height0":
        assert h == 0 and chi((-1, ell))
    elif kind == "height1-a":
        assert h == 1 and chi((-1, ell)) and not chi((0, ell))
    elif kind == "height1-b":
        assert h == 1 and chi((0, ell))
    else:
        assert h == r and chi((r - 1, ell))


def classify_scenario(chi: PChar) -> str:
    """Name the hypothesis family a (truncated) character falls in."""
    ell = chi.shape.ell
    h = height(chi)
    if h == -1:
        return "height-minus-one"
    if h == 0:
        return "height0"
    if h == 1:
        if chi((0, ell)):
            return "height1-b"
        return "height1-a"
    return f"heightr({h})"
