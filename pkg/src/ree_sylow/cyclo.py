"""Exact Eisenstein integers Z[w], w^2 = -1 - w, and the additive character."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .field import Field


@dataclass(frozen=True, eq=False)
class Eisenstein:
    """a + b*w with arbitrary-precision integer components."""

    a: int = 0
    b: int = 0

    @classmethod
    def coerce(cls, z: Eisenstein | int) -> Eisenstein:
        if isinstance(z, Eisenstein):
            return z
        if isinstance(z, (int, np.integer)):
            return cls(int(z), 0)
        return NotImplemented

    def __add__(self, other):
        other = Eisenstein.coerce(other)
        if other is NotImplemented:
            return other
        return Eisenstein(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = Eisenstein.coerce(other)
        if other is NotImplemented:
            return other
        return Eisenstein(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return Eisenstein.coerce(other) - self

    def __neg__(self) -> Eisenstein:
        return Eisenstein(-self.a, -self.b)

    def __mul__(self, other):
        other = Eisenstein.coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
        return Eisenstein(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = Eisenstein.coerce(other)
        if other is NotImplemented:
            return False
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def conj(self) -> Eisenstein:
        return Eisenstein(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def exact_div(self, n: int) -> Eisenstein:
        if n <= 0:
            raise ValueError("divisor must be positive")
        if self.a % n or self.b % n:
            raise ArithmeticError(f"{self} is not divisible by {n}")
        return Eisenstein(self.a // n, self.b // n)

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}*w"

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b}

    @classmethod
    def parse(cls, text: str) -> Eisenstein:
        m = _TEXT_RE.fullmatch(text.strip())
        if not m:
            raise ValueError(f"malformed Eisenstein integer {text!r}")
        return cls(int(m.group(1)), int(re.sub(r"\s", "", m.group(2))))


_TEXT_RE = re.compile(r"([+-]?\d+)\s*([+-]\s*\d+)\s*\*\s*w")

ZERO = Eisenstein(0, 0)
ONE = Eisenstein(1, 0)
OMEGA = Eisenstein(0, 1)
_POWERS = (ONE, OMEGA, Eisenstein(-1, -1))


def omega_pow(k: int) -> Eisenstein:
    return _POWERS[k % 3]


def theta_char(field: Field, x: int) -> Eisenstein:
    """The fixed additive character x -> w^Tr(x)."""
    return _POWERS[field.trace(x)]


class EisVec:
    """A vector of Eisenstein integers stored as two int64 arrays.

    Used for character values over a whole enumerated group; all arithmetic
    stays integral.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = np.asarray(a, dtype=np.int64)
        self.b = np.asarray(b, dtype=np.int64)

    @classmethod
    def zeros(cls, n: int) -> EisVec:
        return cls(np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64))

    @classmethod
    def from_omega_exponents(cls, k) -> EisVec:
        """w^k element-wise."""
        k = np.asarray(k) % 3
        a = np.where(k == 0, 1, np.where(k == 2, -1, 0))
        b = np.where(k == 0, 0, -np.ones_like(k) + 2 * (k == 1))
        return cls(a, b)

    @classmethod
    def from_counts(cls, c0, c1, c2) -> EisVec:
        """c0 + c1 w + c2 w^2 element-wise."""
        c0, c1, c2 = (np.asarray(c, dtype=np.int64) for c in (c0, c1, c2))
        return cls(c0 - c2, c1 - c2)

    @classmethod
    def from_list(cls, zs) -> EisVec:
        zs = list(zs)
        return cls([z.a for z in zs], [z.b for z in zs])

    def __len__(self) -> int:
        return len(self.a)

    def __getitem__(self, i):
        if isinstance(i, (int, np.integer)):
            return Eisenstein(int(self.a[i]), int(self.b[i]))
        return EisVec(self.a[i], self.b[i])

    def __add__(self, other: EisVec) -> EisVec:
        return EisVec(self.a + other.a, self.b + other.b)

    def __sub__(self, other: EisVec) -> EisVec:
        return EisVec(self.a - other.a, self.b - other.b)

    def scale(self, n: int) -> EisVec:
        return EisVec(self.a * n, self.b * n)

    def __mul__(self, other: EisVec) -> EisVec:
        a, b, c, d = self.a, self.b, other.a, other.b
        return EisVec(a * c - b * d, a * d + b * c - b * d)

    def conj(self) -> EisVec:
        return EisVec(self.a - self.b, -self.b)

    def __eq__(self, other) -> bool:
        return bool(np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b))

    def total(self) -> Eisenstein:
        return Eisenstein(int(self.a.sum()), int(self.b.sum()))

    def dot_conj(self, other: EisVec) -> Eisenstein:
        """sum_i self[i] * conj(other[i])."""
        return (self * other.conj()).total()

    def tolist(self) -> list[Eisenstein]:
        return [Eisenstein(int(x), int(y)) for x, y in zip(self.a, self.b)]
