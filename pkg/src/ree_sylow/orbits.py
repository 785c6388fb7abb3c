"""Patterns, the 1-cocycle f, the two actions on V, and U-orbits.

V is spanned by e12, e13, e14; a pattern is stored as the coordinate triple
(A12, A13, A14).  The matrix definitions (projection onto J, the
contragredient g^-T) are implemented against 8x8 matrices for the oracle
path; orbit enumeration uses the closed-form action on Y-coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy as np

from . import chevalley
from .cyclo import EisVec, Eisenstein, theta_char
from .group import ReeSylow, Y

# 0-based positions (1,2), (1,3), (1,4) of the pattern space
J = ((0, 1), (0, 2), (0, 3))

FAMILIES = ("zero", "F1", "F3", "F4")


class Pattern(NamedTuple):
    a12: int
    a13: int
    a14: int


@dataclass(frozen=True)
class OrbitRecord:
    verge: Pattern
    members: frozenset = dc_field(repr=False)
    stabilizer_order: int = 0
    family: str = "zero"

    @property
    def size(self) -> int:
        return len(self.members)


# --- matrix-level definitions -------------------------------------------------


def pattern_matrix(A) -> np.ndarray:
    M = np.zeros(np.shape(A[0]) + (8, 8), dtype=np.int64)
    for (r, c), x in zip(J, A):
        M[..., r, c] = x
    return M


def project(M: np.ndarray) -> Pattern:
    """The projection onto V: keep entries (1,2), (1,3), (1,4)."""
    vals = [M[..., r, c] for r, c in J]
    if np.ndim(vals[0]) == 0:
        vals = [int(x) for x in vals]
    return Pattern(*vals)


def cocycle_f_matrix(M: np.ndarray) -> Pattern:
    """f(g) = pi(g), valid for any upper unitriangular g."""
    return project(M)


def act_circ(group: ReeSylow, A, g: np.ndarray) -> Pattern:
    """A o g = pi(A g)."""
    return project(chevalley.matmul(group.field, pattern_matrix(A), g))


def act_dot(group: ReeSylow, A, g: np.ndarray) -> Pattern:
    """A . g = pi(A g^-T)."""
    F = group.field
    ginvT = chevalley.transpose(chevalley.inverse_unitriangular(F, g))
    return project(chevalley.matmul(F, pattern_matrix(A), ginvT))


# --- closed forms on coordinates ------------------------------------------------


def _cocycle(o, u):
    t1, t3, t4 = u
    return (t1, o.neg(t3), o.sub(o.mul(t1, t3), t4))


def _act(o, A, u):
    a12, a13, a14 = A
    t1, t3, _ = u
    return (
        o.sub(o.sub(a12, o.mul(a13, o.f3t(t1))), o.mul(a14, t3)),
        o.sub(a13, o.mul(a14, t1)),
        o.add(a14, o.mul(t1, 0)),
    )


def _kappa(o, A, B):
    return o.add(o.add(o.mul(A[0], B[0]), o.mul(A[1], B[1])), o.mul(A[2], B[2]))


def cocycle_f(group: ReeSylow, u: Y) -> Pattern:
    """f(Y(t1,t3,t4)) = (t1, -t3, t1 t3 - t4)."""
    return Pattern(*_cocycle(group.field, u))


def kappa(group: ReeSylow, A, B) -> int:
    return _kappa(group.field, A, B)


def act_dot_closed(group: ReeSylow, A, u: Y) -> Pattern:
    return Pattern(*_act(group.field, A, u))


def chi_A(group: ReeSylow, A, u: Y) -> Eisenstein:
    """theta(kappa(A, f(u)))."""
    return theta_char(group.field, kappa(group, A, cocycle_f(group, u)))


def chi_A_values(group: ReeSylow, A) -> EisVec:
    """chi_A on every element of U, in enumeration order."""
    v = group.field.vec
    f = _cocycle(v, group.element_arrays())
    return EisVec.from_omega_exponents(v.trace(_kappa(v, A, f)))


# --- verges, orbits ---------------------------------------------------------------


def family_of(A) -> str:
    if A[2]:
        return "F4"
    if A[1]:
        return "F3"
    if A[0]:
        return "F1"
    return "zero"


def verge_of(A) -> Pattern:
    """Keep only the rightmost nonzero entry of the (single) row."""
    a12, a13, a14 = A
    if a14:
        return Pattern(0, 0, a14)
    if a13:
        return Pattern(0, a13, 0)
    return Pattern(a12, 0, 0)


def is_verge(A) -> bool:
    return verge_of(A) == tuple(A)


def verge_patterns(group: ReeSylow) -> list[Pattern]:
    """zero, then (x,0,0), (0,x,0), (0,0,x) for x != 0, in field order."""
    q = group.q
    out = [Pattern(0, 0, 0)]
    out += [Pattern(x, 0, 0) for x in range(1, q)]
    out += [Pattern(0, x, 0) for x in range(1, q)]
    out += [Pattern(0, 0, x) for x in range(1, q)]
    return out


def _orbit_arrays(group: ReeSylow, A):
    v = group.field.vec
    u = group.element_arrays()
    A = tuple(np.int64(a) for a in A)
    return _act(v, A, u)


def orbit_of(group: ReeSylow, A) -> OrbitRecord:
    """Orbit of A under the dot action of all of U, with stabilizer order by scan."""
    q = group.q
    imgs = _orbit_arrays(group, A)
    codes = (imgs[0] * q + imgs[1]) * q + imgs[2]
    members = frozenset(Pattern(int(c // (q * q)), int(c // q % q), int(c % q)) for c in np.unique(codes))
    a_code = (A[0] * q + A[1]) * q + A[2]
    stab = int(np.count_nonzero(codes == a_code))
    verges = [C for C in members if is_verge(C)]
    if len(verges) != 1:
        raise AssertionError(f"orbit of {A} contains {len(verges)} verge patterns")
    return OrbitRecord(verges[0], members, stab, family_of(verges[0]))


def classify_all(group: ReeSylow) -> list[OrbitRecord]:
    """All U-orbits on V, generated from the verge patterns; asserts a partition."""
    records = [orbit_of(group, A) for A in verge_patterns(group)]
    seen: set = set()
    for r in records:
        if seen & r.members:
            raise AssertionError("orbits overlap")
        seen |= r.members
    if len(seen) != group.q**3:
        raise AssertionError("orbits do not cover V")
    return records


def orbit_character(group: ReeSylow, record: OrbitRecord, u: Y) -> Eisenstein:
    """Trace of u on the orbit module: sum of chi_C(u) over members fixed by u."""
    total = Eisenstein(0, 0)
    for C in record.members:
        if act_dot_closed(group, C, u) == C:
            total = total + chi_A(group, C, u)
    return total


def orbit_character_values(group: ReeSylow, record: OrbitRecord) -> EisVec:
    """orbit_character on every element of U, in enumeration order."""
    v = group.field.vec
    u = group.element_arrays()
    f = _cocycle(v, u)
    counts = [np.zeros(group.order, dtype=np.int64) for _ in range(3)]
    for C in sorted(record.members):
        C = tuple(np.int64(c) for c in C)
        img = _act(v, C, u)
        fixed = (img[0] == C[0]) & (img[1] == C[1]) & (img[2] == C[2])
        tr = v.trace(_kappa(v, C, f))
        for k in range(3):
            counts[k] += fixed & (tr == k)
    return EisVec.from_counts(*counts)
