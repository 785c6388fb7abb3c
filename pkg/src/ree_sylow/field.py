"""Arithmetic in GF(3^(2m+1)).

Elements are plain ints ``0 <= x < q``; the base-3 digits of ``x``, least
significant first, are the coefficients of the residue polynomial
(``c0 + c1*X + ... + c_{d-1}*X^(d-1)``).  The integer order is the canonical
element order used everywhere for deterministic output, so 0, 1, 2 come
first.

Scalar operations go through Python list tables.  ``Field.vec`` exposes the
same operations on numpy integer arrays for the enumeration-heavy code.
"""

from __future__ import annotations

import functools
import itertools
from typing import Sequence

import numpy as np

P = 3

#: Exhaustive enumeration (and the numpy tables) stop at 3^5 elements.
ENUM_CAP = 3**5
#: make_field refuses degrees whose irreducibility check would be slow.
MAX_M = 4


class FieldError(ArithmeticError):
    pass


# --- polynomials over F_3 as coefficient tuples, low to high ---------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymod(a: Sequence[int], b: Sequence[int]) -> list[int]:
    a = _trim([x % P for x in a])
    b = _trim([x % P for x in b])
    lead_inv = b[-1]  # 1 and 2 are self-inverse mod 3
    while len(a) >= len(b):
        k = len(a) - len(b)
        f = (a[-1] * lead_inv) % P
        for i, bi in enumerate(b):
            a[k + i] = (a[k + i] - f * bi) % P
        a = _trim(a)
    return a


def _polymul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % P
    return out


def _monic(degree: int):
    """All monic polynomials of a degree, lowest coefficient most significant."""
    for low in itertools.product(range(P), repeat=degree):
        yield tuple(low) + (1,)


def is_irreducible(poly: Sequence[int]) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim(list(poly))
    d = len(poly) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for g in _monic(k):
            if not _polymod(poly, g):
                return False
    return True


@functools.lru_cache(maxsize=None)
def canonical_modulus(degree: int) -> tuple[int, ...]:
    """Least monic irreducible polynomial of ``degree``.

    Candidates are compared as coefficient vectors read low-to-high.
    """
    for cand in _monic(degree):
        if is_irreducible(cand):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {degree}")  # pragma: no cover


# --- the field --------------------------------------------------------------


def _digits(x: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        x, r = divmod(x, P)
        out.append(r)
    return out


def _undigits(c: Sequence[int]) -> int:
    x = 0
    for ci in reversed(c):
        x = x * P + ci
    return x


class Field:
    """GF(q), q = 3^(2m+1), with theta = 3^m."""

    def __init__(self, m: int):
        if m < 0:
            raise ValueError("m must be non-negative")
        if m > MAX_M:
            raise ValueError(f"m={m} exceeds the supported range m <= {MAX_M}")
        self.m = m
        self.degree = 2 * m + 1
        self.q = P**self.degree
        self.theta = P**m
        self.modulus = canonical_modulus(self.degree)
        if not is_irreducible(self.modulus):  # pragma: no cover
            raise FieldError("modulus failed the irreducibility re-check")
        self._build_tables()
        self._vec: VecOps | None = None

    def __repr__(self) -> str:
        return f"Field(m={self.m}, q={self.q})"

    def __reduce__(self):
        return (make_field, (self.m,))

    # table construction

    def _polymul_int(self, a: int, b: int) -> int:
        d = self.degree
        prod = _polymul(_digits(a, d), _digits(b, d))
        return _undigits(_polymod(prod, self.modulus) + [0] * d)

    def _build_tables(self) -> None:
        q, d = self.q, self.degree
        # digit-wise addition, 5 trits per chunk
        chunk = min(d, 5)
        self._chunk = P**chunk
        self._nchunks = -(-d // chunk)
        n = self._chunk
        dig = np.array([_digits(x, chunk) for x in range(n)], dtype=np.int64)
        w = P ** np.arange(chunk, dtype=np.int64)
        self._add_np = (((dig[:, None, :] + dig[None, :, :]) % P) @ w).astype(np.int64)
        self._sub_np = (((dig[:, None, :] - dig[None, :, :]) % P) @ w).astype(np.int64)
        self._add_chunk = self._add_np.tolist()
        self._sub_chunk = self._sub_np.tolist()

        if q <= ENUM_CAP:
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(a, q):
                    mul[a, b] = mul[b, a] = self._polymul_int(a, b)
            self._mul_np = mul
            self._mul = mul.tolist()
            inv = [0] * q
            for a in range(1, q):
                inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
            self._inv = inv
            self._log = self._exp = None
        else:
            # log/antilog tables with respect to a primitive element
            gen = self._primitive_element()
            exp = [1] * (2 * (q - 1))
            for i in range(1, 2 * (q - 1)):
                exp[i] = self._polymul_int(exp[i - 1], gen)
            log = [0] * q
            for i in range(q - 1):
                log[exp[i]] = i
            self._exp, self._log = exp, log
            self._mul = self._mul_np = None
            self._inv = [0] + [exp[(q - 1 - log[a]) % (q - 1)] for a in range(1, q)]

        frob = [self._pow_slow(x, P) for x in range(q)]
        self._frob = [list(range(q))]
        for _ in range(d - 1):
            self._frob.append([frob[x] for x in self._frob[-1]])
        self._trace = []
        for x in range(q):
            t = 0
            for k in range(d):
                t = self.add(t, self._frob[k][x])
            if t >= P:  # pragma: no cover
                raise FieldError("trace left the prime field")
            self._trace.append(t)
        self._f3t = self._frob[(self.m + 1) % d]
        self._ft = self._frob[self.m % d]

    def _pow_slow(self, x: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self._polymul_int(r, x)
        return r

    def _primitive_element(self) -> int:
        q = self.q
        factors = [f for f in range(2, q) if (q - 1) % f == 0 and all(f % g for g in range(2, f))]
        for g in range(2, q):
            if all(self._pow_fast(g, (q - 1) // f) != 1 for f in factors):
                return g
        raise FieldError("no primitive element")  # pragma: no cover

    def _pow_fast(self, x: int, e: int) -> int:
        r, base = 1, x
        while e:
            if e & 1:
                r = self._polymul_int(r, base)
            base = self._polymul_int(base, base)
            e >>= 1
        return r

    # element conversion

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(_digits(a, self.degree))

    def from_coeffs(self, c: Sequence[int]) -> int:
        if len(c) != self.degree or any(x not in (0, 1, 2) for x in c):
            raise ValueError(f"expected {self.degree} coefficients in 0..2, got {list(c)}")
        return _undigits(c)

    def from_int(self, n: int) -> int:
        """Image of an ordinary integer in the prime subfield."""
        return n % P

    def format(self, a: int) -> str:
        return ",".join(str(c) for c in self.coeffs(a))

    def parse(self, text: str) -> int:
        parts = [p.strip() for p in text.strip().split(",")]
        try:
            c = [int(p) for p in parts]
        except ValueError:
            raise ValueError(f"malformed field element {text!r}") from None
        return self.from_coeffs(c)

    def elements(self) -> range:
        if self.q > ENUM_CAP:
            raise ValueError(f"refusing to enumerate GF({self.q}); cap is {ENUM_CAP}")
        return range(self.q)

    # arithmetic

    def add(self, a: int, b: int) -> int:
        if self._nchunks == 1:
            return self._add_chunk[a][b]
        n = self._chunk
        return self._add_chunk[a % n][b % n] + n * self._add_chunk[a // n][b // n]

    def sub(self, a: int, b: int) -> int:
        if self._nchunks == 1:
            return self._sub_chunk[a][b]
        n = self._chunk
        return self._sub_chunk[a % n][b % n] + n * self._sub_chunk[a // n][b // n]

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        return self._inv[a]

    def pow(self, a: int, e: int) -> int:
        """a**e for a small non-negative exponent (0**0 == 1)."""
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def frob_pow(self, a: int, k: int) -> int:
        """a^(3^k)."""
        if k < 0:
            raise ValueError("k must be non-negative")
        return self._frob[k % self.degree][a]

    def ft(self, a: int) -> int:
        """a^theta."""
        return self._ft[a]

    def f3t(self, a: int) -> int:
        """a^(3*theta)."""
        return self._f3t[a]

    def power_expr(self, a: int, c1: int, c0: int) -> int:
        """a^(c1*theta + c0), with the theta part routed through Frobenius."""
        if c1 < 0 or c0 < 0:
            raise ValueError("exponent coefficients must be non-negative")
        return self.mul(self.pow(self.ft(a), c1), self.pow(a, c0))

    def trace(self, a: int) -> int:
        return self._trace[a]

    @property
    def vec(self) -> VecOps:
        if self._vec is None:
            self._vec = VecOps(self)
        return self._vec


class VecOps:
    """Element-wise field arithmetic on numpy integer arrays (q <= 243)."""

    def __init__(self, field: Field):
        if field.q > ENUM_CAP:
            raise ValueError(f"vectorised arithmetic needs q <= {ENUM_CAP}")
        self.field = field
        self.q = field.q
        self._add = field._add_np
        self._sub = field._sub_np
        self._mul = field._mul_np
        self._inv = np.array(field._inv, dtype=np.int64)
        self._frob = np.array(field._frob, dtype=np.int64)
        self._trace = np.array(field._trace, dtype=np.int64)
        self._ft = self._frob[field.m % field.degree]
        self._f3t = self._frob[(field.m + 1) % field.degree]

    def add(self, a, b):
        return self._add[a, b]

    def sub(self, a, b):
        return self._sub[a, b]

    def neg(self, a):
        return self._sub[0, a]

    def mul(self, a, b):
        return self._mul[a, b]

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        return self._inv[a]

    def pow(self, a, e: int):
        r = np.ones_like(np.asarray(a))
        for _ in range(e):
            r = self._mul[r, a]
        return r

    def frob_pow(self, a, k: int):
        return self._frob[k % self.field.degree][a]

    def ft(self, a):
        return self._ft[a]

    def f3t(self, a):
        return self._f3t[a]

    def trace(self, a):
        return self._trace[a]


@functools.lru_cache(maxsize=None)
def make_field(m: int) -> Field:
    return Field(m)
