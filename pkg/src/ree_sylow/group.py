"""The Sylow 3-subgroup of the Ree group in coordinates Y(t1, t3, t4).

The closed-form laws are written once against a small "ops" interface
(``add``, ``sub``, ``neg``, ``mul``, ``f3t``) so the same code runs on plain
ints (via :class:`~ree_sylow.field.Field`) and element-wise on numpy arrays
(via ``field.vec``).
"""

from __future__ import annotations

import re
from typing import Iterator, NamedTuple

import numpy as np

from . import chevalley
from .field import ENUM_CAP, Field, make_field


class Y(NamedTuple):
    t1: int
    t3: int
    t4: int


# --- closed forms, generic in the arithmetic backend --------------------------


def _mul(o, x, y):
    t1, t3, t4 = x
    s1, s3, s4 = y
    s1_3t = o.f3t(s1)
    return (
        o.add(t1, s1),
        o.sub(o.add(t3, s3), o.mul(t1, s1_3t)),
        o.sub(
            o.sub(
                o.add(o.add(t4, s4), o.mul(t1, o.mul(s1_3t, s1))),
                o.mul(o.mul(t1, t1), s1_3t),
            ),
            o.mul(t3, s1),
        ),
    )


def _inv(o, x):
    t1, t3, t4 = x
    t1_3t1 = o.mul(o.f3t(t1), t1)
    return (
        o.neg(t1),
        o.sub(o.neg(t3), t1_3t1),
        o.sub(o.add(o.neg(t4), o.mul(t1_3t1, t1)), o.mul(t1, t3)),
    )


def _commutator(o, x, y):
    t1, t3, _ = x
    s1, s3, _ = y
    t1_3t = o.f3t(t1)
    s1_3t = o.f3t(s1)
    mid = o.sub(o.mul(t1_3t, s1), o.mul(t1, s1_3t))
    last = o.add(
        o.add(
            o.sub(o.mul(t1, o.mul(s1_3t, s1)), o.mul(o.mul(t1_3t, t1), s1)),
            o.sub(o.mul(t1_3t, o.mul(s1, s1)), o.mul(o.mul(t1, t1), s1_3t)),
        ),
        o.sub(o.mul(t1, s3), o.mul(t3, s1)),
    )
    return (o.mul(t1, 0), mid, last)


def _conjugate(o, x, by):
    """by * x * by^-1."""
    t1, t3, t4 = x
    s1, s3, _ = by
    t1_3t = o.f3t(t1)
    s1_3t = o.f3t(s1)
    mid = o.sub(o.add(t3, o.mul(t1, s1_3t)), o.mul(t1_3t, s1))
    last = o.add(
        o.add(
            o.add(t4, o.add(o.mul(o.mul(t1, t1), s1_3t), o.mul(t1_3t, o.mul(s1, s1)))),
            o.mul(o.mul(t1_3t, t1), s1),
        ),
        o.sub(o.mul(t3, s1), o.mul(t1, s3)),
    )
    return (t1, mid, last)


class ReeSylow:
    """The group of order q^3 with the multiplication of Y-coordinates."""

    def __init__(self, field: Field):
        self.field = field
        self.q = field.q
        self.order = field.q**3

    @classmethod
    def from_m(cls, m: int) -> ReeSylow:
        return cls(make_field(m))

    def __repr__(self) -> str:
        return f"ReeSylow(q={self.q})"

    def __reduce__(self):
        return (ReeSylow.from_m, (self.field.m,))

    # elements

    def identity(self) -> Y:
        return Y(0, 0, 0)

    def a(self, t: int) -> Y:
        return Y(t, 0, 0)

    def b(self, t: int) -> Y:
        return Y(0, t, 0)

    def c(self, t: int) -> Y:
        return Y(0, 0, t)

    def index(self, x: Y) -> int:
        q = self.q
        return (x[0] * q + x[1]) * q + x[2]

    def element(self, i: int) -> Y:
        q = self.q
        rest, t4 = divmod(i, q)
        t1, t3 = divmod(rest, q)
        return Y(t1, t3, t4)

    def _check_cap(self) -> None:
        if self.q > ENUM_CAP:
            raise ValueError(f"refusing to enumerate a group over GF({self.q})")

    def elements(self) -> Iterator[Y]:
        """All q^3 elements, lexicographic in (t1, t3, t4)."""
        self._check_cap()
        F = self.field.elements()
        for t1 in F:
            for t3 in F:
                for t4 in F:
                    yield Y(t1, t3, t4)

    def element_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Coordinates of all elements as three arrays, in enumeration order."""
        self._check_cap()
        idx = np.arange(self.order, dtype=np.int64)
        q = self.q
        return idx // (q * q), (idx // q) % q, idx % q

    # laws

    def mul(self, x: Y, y: Y) -> Y:
        return Y(*_mul(self.field, x, y))

    def inv(self, x: Y) -> Y:
        return Y(*_inv(self.field, x))

    def commutator(self, x: Y, y: Y) -> Y:
        """x^-1 y^-1 x y."""
        return Y(*_commutator(self.field, x, y))

    def conjugate(self, x: Y, by: Y) -> Y:
        """by x by^-1."""
        return Y(*_conjugate(self.field, x, by))

    def pow(self, x: Y, n: int) -> Y:
        if n < 0:
            return self.pow(self.inv(x), -n)
        out, base = self.identity(), x
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def order_of(self, x: Y) -> int:
        e = self.identity()
        n, y = 1, x
        while y != e:
            y = self.mul(y, x)
            n += 1
        return n

    def is_central(self, x: Y) -> bool:
        return all(self.conjugate(x, g) == x for g in self.elements())

    # vectorised laws on coordinate arrays

    def mul_arrays(self, x, y):
        return _mul(self.field.vec, x, y)

    def inv_arrays(self, x):
        return _inv(self.field.vec, x)

    def commutator_arrays(self, x, y):
        return _commutator(self.field.vec, x, y)

    def conjugate_arrays(self, x, by):
        return _conjugate(self.field.vec, x, by)

    # matrix view

    def matrix(self, x) -> np.ndarray:
        return chevalley.ree_matrix(self.field, *x)

    def from_matrix(self, M: np.ndarray) -> Y:
        """Coordinates of a matrix in the group; raises if it is not one."""
        t = chevalley.matrix_to_g2_tuple(self.field, M)
        fixed = chevalley.fixed_tuple(self.field, t.t1, t.t3, t.t4, ops=self.field.vec)
        if not all(np.array_equal(a, b) for a, b in zip(fixed, t)):
            raise chevalley.NotInGroupError("matrix is in G2^syl(q) but not F-fixed")
        return Y(t.t1, t.t3, t.t4)

    # text form

    def format(self, x: Y) -> str:
        f = self.field.format
        return f"Y({f(x[0])};{f(x[1])};{f(x[2])})"

    def parse(self, text: str) -> Y:
        m = re.fullmatch(r"\s*Y\((.*)\)\s*", text)
        if not m:
            raise ValueError(f"malformed group element {text!r}")
        parts = m.group(1).split(";")
        if len(parts) != 3:
            raise ValueError(f"malformed group element {text!r}")
        return Y(*(self.field.parse(p) for p in parts))
