"""The irreducible characters of the group over GF(3).

Linear characters come from the homomorphisms of the abelian quotient by the
centre Y_c = {c(t)}; the two characters of degree 3 are induced from the
normal subgroup H = Y_b Y_c.  Everything is exact and exhaustive over the 27
group elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import classes as cl
from . import orbits as ob
from . import superchar as sc
from .cyclo import EisVec, Eisenstein, theta_char
from .group import ReeSylow, Y


class CharTableError(AssertionError):
    pass


@dataclass
class Character:
    label: str
    values: EisVec  # on every group element, enumeration order

    @property
    def degree(self) -> int:
        return int(self.values.a[0])


@dataclass
class CharTable:
    classes: list[cl.ClassRecord]
    rows: list[Character]
    column_labels: list[str] = dc_field(default_factory=list)

    def cell_values(self, group: ReeSylow) -> list[list[Eisenstein]]:
        reps = [group.index(c.representative) for c in self.classes]
        return [[r.values[i] for i in reps] for r in self.rows]


def _require_q3(group: ReeSylow) -> None:
    if group.q != 3:
        raise ValueError("the irreducible character table is only built for q = 3")


def default_group() -> ReeSylow:
    return ReeSylow.from_m(0)


# --- linear characters ---------------------------------------------------------


def _coset(x: Y) -> tuple[int, int]:
    """Coordinates of x modulo the centre."""
    return x[0], x[1]


def quotient_coordinates(group: ReeSylow) -> dict[tuple[int, int], tuple[int, int]]:
    """Map each coset of Y_c to (i, j) with coset = abar^i bbar^j.

    Checks on the way that the quotient has order 9 and exponent 3 and is
    abelian, i.e. that it is elementary abelian of rank 2.
    """
    _require_q3(group)
    cosets = {_coset(x) for x in group.elements()}
    if len(cosets) != 9:
        raise CharTableError(f"quotient by the centre has order {len(cosets)}")
    for x in group.elements():
        if _coset(group.pow(x, 3)) != (0, 0):
            raise CharTableError(f"{group.format(x)}^3 is not central")
        for y in group.elements():
            if _coset(group.commutator(x, y)) != (0, 0):
                raise CharTableError("quotient by the centre is not abelian")
    a1, b1 = group.a(1), group.b(1)
    coords = {}
    for i, j in itertools.product(range(3), repeat=2):
        coords[_coset(group.mul(group.pow(a1, i), group.pow(b1, j)))] = (i, j)
    if len(coords) != 9:
        raise CharTableError("a(1) and b(1) do not generate the quotient")
    return coords


def linear_characters(group: ReeSylow) -> list[Character]:
    """The nine lifts of hom(U/Y_c, <w>), labelled by the images of a(1), b(1)."""
    coords = quotient_coordinates(group)
    out = []
    for alpha, beta in itertools.product(range(3), repeat=2):
        exps = [alpha * coords[_coset(x)][0] + beta * coords[_coset(x)][1] for x in group.elements()]
        out.append(Character(f"lin(a->w^{alpha},b->w^{beta})", EisVec.from_omega_exponents(exps)))
    for ch in out:
        if not is_homomorphism(group, ch):
            raise CharTableError(f"{ch.label} is not multiplicative")
    return out


def is_homomorphism(group: ReeSylow, ch: Character) -> bool:
    vals = ch.values.tolist()
    elems = list(group.elements())
    for x in elems:
        for y in elems:
            if vals[group.index(group.mul(x, y))] != vals[group.index(x)] * vals[group.index(y)]:
                return False
    return True


# --- induced characters -----------------------------------------------------------


def in_H(x: Y) -> bool:
    return x[0] == 0


def lam(group: ReeSylow, a14: int, a13: int, h: Y) -> Eisenstein:
    """theta(-A14 t4 - A13 t3) on b(t3) c(t4) = Y(0, t3, t4)."""
    F = group.field
    return theta_char(F, F.sub(F.neg(F.mul(a14, h[2])), F.mul(a13, h[1])))


def induced_value(group: ReeSylow, a14: int, u: Y) -> Eisenstein:
    """(1/|H|) sum over g in U with g u g^-1 in H of lambda(g u g^-1)."""
    total = Eisenstein(0, 0)
    for g in group.elements():
        x = group.conjugate(u, g)
        if in_H(x):
            total = total + lam(group, a14, 0, x)
    return total.exact_div(group.q * group.q)


def induced_characters(group: ReeSylow) -> list[Character]:
    _require_q3(group)
    out = []
    for a14 in range(1, group.q):
        vals = [induced_value(group, a14, u) for u in group.elements()]
        out.append(Character(f"chi2(A14*={group.field.format(a14)})", EisVec.from_list(vals)))
    return out


# --- the table ---------------------------------------------------------------------


def class_inner(group: ReeSylow, x: EisVec, y: EisVec) -> Eisenstein:
    """<x, y>_U, exact; raises if the scaled sum is not divisible by |U|."""
    return x.dot_conj(y).exact_div(group.order)


def build_char_table(group: ReeSylow | None = None) -> CharTable:
    group = group or default_group()
    _require_q3(group)
    classes = cl.all_classes_bruteforce(group)
    rows = linear_characters(group) + induced_characters(group)
    for ch in rows:
        for c in classes:
            vals = {ch.values[group.index(x)] for x in c.members}
            if len(vals) != 1:
                raise CharTableError(f"{ch.label} is not a class function")
    n = len(rows)
    for i in range(n):
        for j in range(n):
            ip = class_inner(group, rows[i].values, rows[j].values)
            if ip != (1 if i == j else 0):
                raise CharTableError(f"<{rows[i].label}, {rows[j].label}> = {ip}")
    if n != len(classes):
        raise CharTableError(f"{n} characters but {len(classes)} classes")
    if sum(r.degree**2 for r in rows) != group.order:
        raise CharTableError("sum of squared degrees differs from |U|")
    # column orthogonality
    reps = [group.index(c.representative) for c in classes]
    for k, ck in enumerate(classes):
        for l in range(len(classes)):
            s = Eisenstein(0, 0)
            for r in rows:
                s = s + r.values[reps[k]] * r.values[reps[l]].conj()
            expect = group.order // ck.size if k == l else 0
            if s != expect:
                raise CharTableError(f"column orthogonality fails for classes {k}, {l}: {s}")
    return CharTable(classes, rows, [group.format(c.representative) for c in classes])


# --- comparison with closed-form character formulas ---------------------------


def character_formulas(group: ReeSylow) -> list[tuple[str, callable]]:
    """Closed-form character formulas, as functions of a class representative."""
    F = group.field
    th = lambda x: theta_char(F, x)  # noqa: E731
    rows = []
    for a12, a13 in itertools.product(range(3), repeat=2):

        def f(u: Y, a12=a12, a13=a13) -> Eisenstein:
            t1, t3, t4 = u
            if t1:
                return th(F.mul(a12, t1)) * th(F.neg(F.mul(a13, t3)))
            if t3:
                return th(F.neg(F.mul(a13, t3)))
            return Eisenstein(1)

        rows.append((f"chi_lin^({a12},{a13})", f))
    for a14 in range(1, 3):

        def g(u: Y, a14=a14) -> Eisenstein:
            t1, t3, t4 = u
            if t1 or t3:
                return Eisenstein(0)
            if t4:
                return 3 * th(F.neg(F.mul(a14, t4)))
            return Eisenstein(3)

        rows.append((f"chi_2^({a14})", g))
    return rows


def compare_with_character_formulas(table: CharTable, group: ReeSylow | None = None) -> list[dict]:
    """Cell-by-cell diff of the closed-form formulas against the computed table.

    Rows are matched by an assignment minimising the number of differing
    cells; every differing cell is reported.
    """
    group = group or default_group()
    reps = [c.representative for c in table.classes]
    expected = [(name, [f(u) for u in reps]) for name, f in character_formulas(group)]
    computed = table.cell_values(group)
    cost = np.array([[sum(a != b for a, b in zip(pv, cv)) for cv in computed] for _, pv in expected])
    rows, cols = linear_sum_assignment(cost)
    out = []
    for i, j in sorted(zip(rows, cols)):
        name, pv = expected[i]
        for k, (a, b) in enumerate(zip(pv, computed[j])):
            if a != b:
                out.append(
                    {
                        "formula_row": name,
                        "matched_row": table.rows[j].label,
                        "class": group.format(reps[k]),
                        "formula": str(a),
                        "computed": str(b),
                    }
                )
    return out


# --- supercharacters versus irreducibles --------------------------------------------


@dataclass
class RelationReport:
    checks: dict[str, bool]
    decompositions: dict[str, dict[str, int]]
    diagnostics: list[str]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": self.checks,
            "decompositions": self.decompositions,
            "diagnostics": self.diagnostics,
        }


def verify_decompositions(table: CharTable | None = None, group: ReeSylow | None = None) -> RelationReport:
    group = group or default_group()
    table = table or build_char_table(group)
    lin = table.rows[:9]
    chi2 = {r.label: r for r in table.rows[9:]}
    F = group.field
    checks: dict[str, bool] = {}
    decomps: dict[str, dict[str, int]] = {}
    diags: list[str] = []
    formulas = dict(character_formulas(group))
    elems = list(group.elements())

    for A in ob.verge_patterns(group):
        label = sc.row_label(group, A)
        psi = sc.supercharacter_values(group, A)
        mults = {}
        for r in table.rows:
            ip = class_inner(group, psi, r.values)
            if ip.b != 0 or ip.a < 0:
                checks[f"{label}: integral multiplicities"] = False
            if ip != 0:
                mults[r.label] = ip.a
        decomps[label] = mults
        fam = ob.family_of(A)
        if fam == "zero":
            checks[f"{label} is trivial"] = psi == lin[0].values
        elif fam == "F1":
            checks[f"{label} is a linear character"] = any(psi == r.values for r in lin)
        elif fam == "F4":
            target = chi2[f"chi2(A14*={F.format(A.a14)})"].values.scale(3)
            checks[f"{label} = 3 chi2(A14*={F.format(A.a14)})"] = psi == target
        else:
            ok = len(mults) == 3 and all(v == 1 for v in mults.values()) and all(k in {r.label for r in lin} for k in mults)
            checks[f"{label} is a sum of three linear characters"] = ok
            # the formula decomposition, evaluated pointwise
            a13 = A.a13
            summed = [sum((formulas[f"chi_lin^({a12},{a13})"](u) for a12 in range(3)), Eisenstein(0)) for u in elems]
            same = EisVec.from_list(summed) == psi
            diags.append(
                f"{label}: sum over A12 of the formula chi_lin^(A12,{a13}) "
                f"{'agrees' if same else 'disagrees'} with the supercharacter pointwise; "
                f"computed constituents: {', '.join(sorted(mults))}"
            )
            for a12 in range(3):
                fn = formulas[f"chi_lin^({a12},{a13})"]
                vals = EisVec.from_list([fn(u) for u in elems])
                hom = is_homomorphism(group, Character("", vals))
                diags.append(f"formula chi_lin^({a12},{a13}) is {'' if hom else 'not '}multiplicative on U")
    checks.setdefault("multiplicities integral", True)
    return RelationReport(checks, decomps, diags)
