"""The supercharacter table and a checker for the supercharacter-theory axioms."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import classes as cl
from . import orbits as ob
from .cyclo import EisVec, Eisenstein, theta_char
from .group import ReeSylow, Y


@dataclass
class SuperRow:
    label: str
    verge: ob.Pattern
    family: str
    values: dict[str, Eisenstein]

    @property
    def degree(self) -> int:
        return self.values["C0"].a


@dataclass
class SuperTable:
    q: int
    columns: list[str]
    rows: list[SuperRow]
    column_sizes: dict[str, int] = dc_field(default_factory=dict)


def row_label(group: ReeSylow, verge: ob.Pattern) -> str:
    fmt = group.field.format
    fam = ob.family_of(verge)
    if fam == "zero":
        return "Psi_M(0)"
    if fam == "F1":
        return f"Psi_M(A12*e12;A12*={fmt(verge.a12)})"
    if fam == "F3":
        return f"Psi_M(A13*e13;A13*={fmt(verge.a13)})"
    return f"Psi_M(A14*e14;A14*={fmt(verge.a14)})"


def supercharacter(group: ReeSylow, verge, u: Y) -> Eisenstein:
    """Value at u of the character of the orbit module of a verge pattern."""
    if not ob.is_verge(verge):
        raise ValueError(f"{tuple(verge)} is not a verge pattern")
    if not any(verge):
        return Eisenstein(1, 0)
    return ob.orbit_character(group, ob.orbit_of(group, verge), u)


def supercharacter_values(group: ReeSylow, verge) -> EisVec:
    if not ob.is_verge(verge):
        raise ValueError(f"{tuple(verge)} is not a verge pattern")
    return ob.orbit_character_values(group, ob.orbit_of(group, verge))


class ConstancyError(AssertionError):
    pass


@functools.lru_cache(maxsize=4)
def _values_for(m: int) -> tuple[tuple[ob.Pattern, EisVec], ...]:
    group = ReeSylow.from_m(m)
    return tuple((A, supercharacter_values(group, A)) for A in ob.verge_patterns(group))


def _all_values(group: ReeSylow) -> list[tuple[ob.Pattern, EisVec]]:
    return list(_values_for(group.field.m))


def _constancy_violation(vals: EisVec, part_idx: np.ndarray, nparts: int):
    """First (part, element index) where vals is not constant on its part, else None."""
    order = np.argsort(part_idx, kind="stable")
    starts = np.searchsorted(part_idx[order], np.arange(nparts))
    first = order[starts]
    ref_a = vals.a[first][part_idx]
    ref_b = vals.b[first][part_idx]
    bad = np.nonzero((vals.a != ref_a) | (vals.b != ref_b))[0]
    if len(bad):
        return int(part_idx[bad[0]]), int(bad[0])
    return None


def build_supertable(group: ReeSylow, partition: cl.SuperclassPartition | None = None) -> SuperTable:
    """Evaluate every supercharacter on all of U, check constancy, tabulate."""
    partition = partition or cl.superclass_partition(group)
    idx = cl.superclass_index_array(group, partition)
    labels = partition.labels()
    rows = []
    for A, vals in _all_values(group):
        bad = _constancy_violation(vals, idx, len(labels))
        if bad is not None:
            part, el = bad
            raise ConstancyError(
                f"{row_label(group, A)} is not constant on {labels[part]} "
                f"(element {group.format(group.element(el))})"
            )
        values = {}
        for k, part in enumerate(partition.parts):
            rep = group.index(min(part.members))
            values[labels[k]] = vals[rep]
        rows.append(SuperRow(row_label(group, A), A, ob.family_of(A), values))
    return SuperTable(group.q, labels, rows, {p.label: p.size for p in partition.parts})


def closed_form_cell(group: ReeSylow, verge: ob.Pattern, kind: str, t: int) -> Eisenstein:
    """The closed-form entry for row ``verge`` and superclass (kind, t)."""
    F = group.field
    q = group.q
    th = lambda x: theta_char(F, x)  # noqa: E731
    fam = ob.family_of(verge)
    if kind == "C0":
        return Eisenstein({"zero": 1, "F1": 1, "F3": q, "F4": q * q}[fam])
    if fam == "zero":
        return Eisenstein(1)
    if fam == "F1":
        return th(F.mul(verge.a12, t)) if kind == "C1" else Eisenstein(1)
    if fam == "F3":
        if kind == "C1":
            return Eisenstein(0)
        if kind == "C3":
            return q * th(F.neg(F.mul(verge.a13, t)))
        return Eisenstein(q)
    if kind == "C4":
        return q * q * th(F.neg(F.mul(verge.a14, t)))
    return Eisenstein(0)


def compare_with_closed_forms(group: ReeSylow, table: SuperTable, partition: cl.SuperclassPartition) -> list[dict]:
    out = []
    for row in table.rows:
        for part in partition.parts:
            expect = closed_form_cell(group, row.verge, part.kind, part.param)
            got = row.values[part.label]
            if got != expect:
                out.append({"row": row.label, "column": part.label, "computed": str(got), "table": str(expect)})
    return out


def inner_product(r1: EisVec, r2: EisVec) -> Eisenstein:
    """|U| <r1, r2>_U = sum_u r1(u) conj(r2(u)), exact."""
    return r1.dot_conj(r2)


@dataclass
class AxiomReport:
    q: int
    n_characters: int
    n_superclasses: int
    axiom_a: bool
    axiom_b: bool
    axiom_c: bool
    axiom_d: bool
    failures: list[str] = dc_field(default_factory=list)
    norms: dict[str, int] = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.axiom_a and self.axiom_b and self.axiom_c and self.axiom_d

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "characters": self.n_characters,
            "superclasses": self.n_superclasses,
            "a_counts_equal": self.axiom_a,
            "b_constant_on_superclasses": self.axiom_b,
            "c_pairwise_orthogonal": self.axiom_c,
            "d_identity_is_superclass": self.axiom_d,
            "passed": self.passed,
            "failures": self.failures,
        }


def verify_supercharacter_theory(group: ReeSylow) -> AxiomReport:
    """Check (a) equal counts, (b) constancy, (c) orthogonality, (d) {1} is a part.

    All sums run over every element of U in exact Z[w] arithmetic.
    """
    if group.q > cl.BRUTE_FORCE_CAP:
        raise ValueError(f"exhaustive axiom check is capped at q <= {cl.BRUTE_FORCE_CAP}")
    partition = cl.superclass_partition(group)
    idx = cl.superclass_index_array(group, partition)
    labels = partition.labels()
    values = _all_values(group)
    failures: list[str] = []

    a_ok = len(values) == len(partition) == 3 * (group.q - 1) + 1
    if not a_ok:
        failures.append(f"(a) {len(values)} characters vs {len(partition)} superclasses")

    b_ok = True
    for A, vals in values:
        bad = _constancy_violation(vals, idx, len(labels))
        if bad is not None:
            b_ok = False
            failures.append(f"(b) {row_label(group, A)} not constant on {labels[bad[0]]}")

    c_ok = True
    norms = {}
    for i, (A, vi) in enumerate(values):
        norms[row_label(group, A)] = inner_product(vi, vi).a
        if inner_product(vi, vi) == 0:
            c_ok = False
            failures.append(f"(c) {row_label(group, A)} is the zero function")
        for B, vj in values[i + 1 :]:
            ip = inner_product(vi, vj)
            if ip != 0:
                c_ok = False
                failures.append(f"(c) <{row_label(group, A)}, {row_label(group, B)}> = {ip}")

    d_ok = any(p.members == frozenset({group.identity()}) for p in partition.parts)
    if not d_ok:
        failures.append("(d) {1} is not a superclass")
    return AxiomReport(group.q, len(values), len(partition), a_ok, b_ok, c_ok, d_ok, failures, norms)
