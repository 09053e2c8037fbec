"""Exact arithmetic in F_{p^m}.

Elements are stored as integer codes: the coordinate tuple (c_0, ..., c_{m-1})
in the power basis of the modulus maps to sum(c_i * p**i).  Scalar arithmetic
uses polynomial multiplication; vectorised array arithmetic lives in
:mod:`wcw.linalg` and uses log/antilog tables built lazily here.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np


class NonPrime(ValueError):
    """The requested characteristic is composite or at most 3."""


class FieldMismatch(TypeError):
    """Binary operation on elements of different fields."""


class NotSplit(ValueError):
    """An Artin-Schreier equation has no root in the working field."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p, coefficient lists low-to-high -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _poly_mod([c % p for c in prod], f, p)


def _poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: f is irreducible iff gcd(f, x^(p^k) - x) = 1 for all k <= deg/2."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    xp = list(x)
    for k in range(1, m // 2 + 1):
        xp = _poly_powmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(list(f), _trim(diff), p)) > 1:
            return False
    return True


def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree m over F_p.

    Candidates x^m + c_{m-1}x^{m-1} + ... + c_0 are compared on the tuple
    (c_{m-1}, ..., c_1, c_0), i.e. by the integer sum c_i p^i.  Returned
    low-to-high with the leading 1.
    """
    if m == 1:
        return (0, 1)
    for code in range(p ** m):
        coeffs = [(code // p ** i) % p for i in range(m)]
        if coeffs[0] == 0:
            continue
        f = coeffs + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """The finite field F_{p^m} = F_p[x]/(modulus)."""

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p) or p <= 3:
            raise NonPrime(f"characteristic must be a prime > 3, got {p}")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        self.p = p
        self.m = m
        self.q = p ** m
        if modulus is None:
            modulus = least_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus
        self._key = (p, m, modulus)
        self._powers = [p ** i for i in range(m)]

    def __repr__(self) -> str:
        return f"Field(p={self.p}, m={self.m}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, Field) and self._key == other._key)

    def __hash__(self) -> int:
        return hash(self._key)

    def describe(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    # -- codes <-> coordinates
    def coords(self, code: int) -> tuple[int, ...]:
        p = self.p
        return tuple((code // pw) % p for pw in self._powers)

    def encode(self, coeffs: Iterable[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            coeffs = _poly_mod([int(c) % self.p for c in coeffs], self.modulus, self.p)
        return sum((int(c) % self.p) * pw for c, pw in zip(coeffs, self._powers))

    # -- element construction
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            if value.field.m == 1:
                return FieldElement(self, value.code)
            raise FieldMismatch("only prime-field elements embed canonically")
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, int(value) % self.p)
        return FieldElement(self, self.encode(value))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.q):
            yield FieldElement(self, c)

    def prime_subfield(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.p)]

    def random_element(self, rng: np.random.Generator, nonzero: bool = False) -> "FieldElement":
        lo = 1 if nonzero else 0
        return FieldElement(self, int(rng.integers(lo, self.q)))

    # -- arithmetic on integer codes
    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.m == 1:
            return (a + b) % p
        out = 0
        for pw in self._powers:
            out += (((a // pw) + (b // pw)) % p) * pw
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.m == 1:
            return (-a) % p
        out = 0
        for pw in self._powers:
            out += ((-(a // pw)) % p) * pw
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self.encode(_poly_mulmod(self.coords(a), self.coords(b), self.modulus, self.p))

    def power(self, a: int, e: int) -> int:
        if self.m == 1:
            if a == 0:
                if e < 0:
                    raise ZeroDivisionError("inverse of zero")
                return 1 if e == 0 else 0
            return pow(a, e % (self.p - 1), self.p)
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.q - 1
        return self.encode(_poly_powmod(self.coords(a), e, self.modulus, self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self.power(a, self.q - 2)

    def frob(self, a: int) -> int:
        return self.power(a, self.p)

    def pth_root(self, a: int) -> int:
        return self.power(a, self.p ** (self.m - 1)) if self.m > 1 else a

    # -- tables for vectorised arithmetic (q up to a few million)
    @cached_property
    def primitive_element(self) -> int:
        if self.m == 1 and self.p == 2:  # pragma: no cover - p > 3 enforced
            return 1
        factors = _prime_factors(self.q - 1)
        for g in range(2, self.q):
            if all(self.power(g, (self.q - 1) // f) != 1 for f in factors):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(exp, log): exp[k] = g^k for k in [0, q-1); log[0] is unused."""
        q = self.q
        g = self.primitive_element
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            exp[k] = x
            log[x] = k
            x = self.mul(x, g)
        return exp, log

    @cached_property
    def digits(self) -> np.ndarray:
        codes = np.arange(self.q, dtype=np.int64)
        return np.stack([(codes // pw) % self.p for pw in self._powers], axis=1)


class FieldElement:
    """Value-type element of a :class:`Field`."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coords(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, self.field.inv(b)))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(b, self.field.inv(self.code)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.code, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.code == other.code and self.field == other.field
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field._key, self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return format_element(self)

    def is_prime_field(self) -> bool:
        return self.code < self.field.p


def field_create(p: int, m: int = 1) -> Field:
    """Build F_{p^m} with the lexicographically least irreducible modulus."""
    return Field(p, m)


def frobenius(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.frob(a.code))


def pth_root(a: FieldElement) -> FieldElement:
    """The unique b with b^p = a, namely a^(p^(m-1))."""
    return FieldElement(a.field, a.field.pth_root(a.code))


def frobenius_matrix(field: Field) -> np.ndarray:
    """Matrix (over F_p, acting on coordinate columns) of a -> a^p."""
    m = field.m
    cols = [field.coords(field.frob(field.encode([0] * k + [1]))) for k in range(m)]
    return np.array(cols, dtype=np.int64).T


def _solve_mod_p(A: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray | None, list[np.ndarray]]:
    """One solution of A x = b over F_p (or None) plus a kernel basis."""
    rows, cols = A.shape
    M = np.concatenate([A % p, (b % p).reshape(-1, 1)], axis=1)
    pivots = []
    r = 0
    for c in range(cols):
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        M[[r, k]] = M[[k, r]]
        M[r] = M[r] * pow(int(M[r, c]), p - 2, p) % p
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if np.any(M[r:, -1] % p):
        return None, []
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = M[i, -1]
    kernel = []
    for f in (c for c in range(cols) if c not in pivots):
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-M[i, f]) % p
        kernel.append(v)
    return x, kernel


def artin_schreier_roots(c: FieldElement) -> list[FieldElement]:
    """All lambda in the field of c with lambda^p - lambda = c.

    The map lambda -> lambda^p - lambda is F_p-linear, so this solves an m x m
    linear system over F_p.  The result is empty or has exactly p elements,
    sorted by code.
    """
    F = c.field
    L = (frobenius_matrix(F) - np.eye(F.m, dtype=np.int64)) % F.p
    x, kernel = _solve_mod_p(L, np.array(c.coeffs, dtype=np.int64), F.p)
    if x is None:
        return []
    # ker(L) is the prime field, spanned by 1.
    assert len(kernel) == 1
    base = F(x.tolist())
    return sorted((base + k for k in range(F.p)), key=lambda e: e.code)


def format_element(a: FieldElement) -> str:
    """String encoding: "3" for prime-field elements, "c0,c1,..." otherwise."""
    if a.field.m == 1 or a.code < a.field.p:
        return str(a.code)
    return ",".join(str(c) for c in a.coeffs)


def parse_element(field: Field, text) -> FieldElement:
    if isinstance(text, int):
        return field(text)
    text = str(text).strip()
    if "," in text:
        coeffs = [int(t) for t in text.strip("[]() ").split(",")]
        if len(coeffs) > field.m:
            raise ValueError(f"{text!r} has more than {field.m} coordinates")
        return field(coeffs)
    return field(int(text))
