"""Verification suites shared by the command line and the test-suite.

Every suite returns a :class:`SuiteReport`: a list of named pass/fail checks,
each with a small detail record, plus non-blocking diagnostics.  Exhaustive
where the group is small (m = 0), seeded sampling otherwise.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from . import chevalley as ch
from . import classes as cl
from . import orbits as ob
from . import superchar as sc
from .group import ReeSylow

SUITES = ("cocycle", "matrix", "classes", "axioms", "chartable")
CHUNK = 20_000
DEFAULT_SAMPLES = 100_000


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    m: int
    q: int
    checks: list[CheckResult] = dc_field(default_factory=list)
    diagnostics: list[dict] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, **detail) -> CheckResult:
        res = CheckResult(name, bool(passed), detail)
        self.checks.append(res)
        return res

    def failures(self) -> list[dict]:
        return [{"suite": self.suite, "check": c.name, "detail": c.detail} for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "m": self.m,
            "q": self.q,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "diagnostics": self.diagnostics,
        }


# --- element sources -----------------------------------------------------------


def _pairs(group: ReeSylow, samples: int, seed: int):
    """Yield chunks (x, y) of coordinate arrays: all pairs at q = 3, else seeded samples."""
    q = group.q
    if q == 3:
        n = group.order
        i, j = np.divmod(np.arange(n * n, dtype=np.int64), n)
        yield _coords(group, i), _coords(group, j)
        return
    rng = np.random.default_rng(seed)
    done = 0
    while done < samples:
        k = min(CHUNK, samples - done)
        yield tuple(rng.integers(0, q, k) for _ in range(3)), tuple(rng.integers(0, q, k) for _ in range(3))
        done += k


def _coords(group: ReeSylow, idx: np.ndarray):
    q = group.q
    return idx // (q * q), (idx // q) % q, idx % q


def _n_pairs(group: ReeSylow, samples: int) -> int:
    return group.order**2 if group.q == 3 else samples


def _first_bad(mask: np.ndarray, *arrays) -> list | None:
    bad = np.nonzero(~mask)[0]
    if not len(bad):
        return None
    k = int(bad[0])
    return [[int(a[k]) for a in arr] for arr in arrays]


def _rows_equal(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.all((A == B).reshape(A.shape[0], -1), axis=1)


# --- matrix suite ------------------------------------------------------------------


def check_fixed_points(group: ReeSylow) -> tuple[bool, dict]:
    """Scan every 6-tuple: the twisted map fixes exactly the q^3 tuples of the group."""
    F = group.field
    q = group.q
    if q ** 6 > 10**6:
        raise ValueError("the fixed-point scan over all 6-tuples is limited to q = 3")
    cols = np.array(list(itertools.product(range(q), repeat=6)), dtype=np.int64).T
    img = ch.twisted_F(F, tuple(cols), ops=F.vec)
    fixed = np.all(np.stack(img) == cols, axis=0)
    found = {tuple(int(c) for c in cols[:, k]) for k in np.nonzero(fixed)[0]}
    t1, t3, t4 = group.element_arrays()
    expected = {tuple(int(c) for c in col) for col in np.stack(ch.fixed_tuple(F, t1, t3, t4, ops=F.vec)).T}
    images = {tuple(int(c) for c in col) for col in np.stack(img).T}
    ok = found == expected and len(found) == group.order
    return ok, {"tuples": q**6, "fixed": len(found), "bijective": len(images) == q**6}


def check_group_laws(group: ReeSylow, samples: int, seed: int) -> dict[str, tuple[bool, dict]]:
    """Closed-form laws against 8x8 matrix products, without matrix inversion.

    mul:   M(x) M(y) = M(xy)
    inv:   M(x) M(x^-1) = I
    comm:  M(x) M(y) = M(y) M(x) M([x,y])
    conj:  M(g) M(x) = M(g x g^-1) M(g)
    """
    F = group.field
    stats = {k: [True, None] for k in ("mul", "inv", "commutator", "conjugate")}
    for x, y in _pairs(group, samples, seed):
        Mx = group.matrix(x)
        My = group.matrix(y)
        MxMy = ch.matmul(F, Mx, My)
        checks = {
            "mul": (MxMy, group.matrix(group.mul_arrays(x, y))),
            "inv": (ch.matmul(F, Mx, group.matrix(group.inv_arrays(x))), np.broadcast_to(ch.identity(), Mx.shape)),
            "commutator": (
                MxMy,
                ch.matmul(F, ch.matmul(F, My, Mx), group.matrix(group.commutator_arrays(x, y))),
            ),
            "conjugate": (
                ch.matmul(F, My, Mx),
                ch.matmul(F, group.matrix(group.conjugate_arrays(x, y)), My),
            ),
        }
        for name, (lhs, rhs) in checks.items():
            ok = _rows_equal(lhs, rhs)
            if stats[name][0] and not ok.all():
                stats[name] = [False, _first_bad(ok, x, y)]
    n = _n_pairs(group, samples)
    out = {}
    for name, (ok, bad) in stats.items():
        detail = {"pairs": n, "exhaustive": group.q == 3}
        if bad is not None:
            detail["counterexample"] = bad
        out[name] = (ok, detail)
    return out


def check_commutator_relations(group: ReeSylow, samples: int, seed: int) -> dict[str, tuple[bool, dict]]:
    """The five root-subgroup commutator relations, all (t, s) at q = 3."""
    F = group.field
    q = group.q
    if q == 3:
        t, s = (a.ravel() for a in np.meshgrid(np.arange(q), np.arange(q), indexing="ij"))
        chunks = [(t, s)]
        n = q * q
    else:
        rng = np.random.default_rng(seed + 1)
        chunks = []
        n = samples
        for lo in range(0, samples, CHUNK):
            k = min(CHUNK, samples - lo)
            chunks.append((rng.integers(0, q, k), rng.integers(0, q, k)))
    out: dict[str, tuple[bool, dict]] = {}
    for t, s in chunks:
        for name, (lhs, rhs) in ch.commutator_relations(F, t, s).items():
            ok = _rows_equal(lhs, rhs)
            prev = out.get(name, (True, {"pairs": n, "exhaustive": q == 3}))
            if prev[0] and not ok.all():
                bad = int(np.nonzero(~ok)[0][0])
                prev = (False, dict(prev[1], counterexample=[int(t[bad]), int(s[bad])]))
            out[name] = prev
    return out


def display_diagnostics(group: ReeSylow, limit: int = 27, seed: int = 0) -> list[dict]:
    """Diff of the displayed 8x8 matrix against the root-element product.

    The first entry summarises what was compared; one entry follows per
    differing cell.
    """
    if group.q == 3:
        elems = list(group.elements())
    else:
        rng = np.random.default_rng(seed + 2)
        elems = [group.element(int(i)) for i in rng.integers(0, group.order, limit)]
    cells = []
    for x in elems:
        for mm in ch.check_display(group.field, *x):
            cells.append(
                {
                    "kind": "matrix-display",
                    "element": group.format(x),
                    "row": mm.row,
                    "col": mm.col,
                    "computed": group.field.format(mm.computed),
                    "displayed": group.field.format(mm.displayed),
                }
            )
    summary = {
        "kind": "matrix-display-summary",
        "elements": len(elems),
        "exhaustive": group.q == 3,
        "cells_compared": 64 * len(elems),
        "mismatches": len(cells),
    }
    return [summary] + cells


def suite_matrix(group: ReeSylow, samples: int = DEFAULT_SAMPLES, seed: int = 0, **_) -> SuiteReport:
    rep = SuiteReport("matrix", group.field.m, group.q)
    if group.q == 3:
        ok, detail = check_fixed_points(group)
        rep.add("twisted map fixes exactly the group", ok, **detail)
    for name, (ok, detail) in check_group_laws(group, samples, seed).items():
        rep.add(f"{name} agrees with matrix products", ok, **detail)
    for name, (ok, detail) in check_commutator_relations(group, max(1, samples // 10), seed).items():
        rep.add(f"commutator relation {name}", ok, **detail)
    rep.diagnostics = display_diagnostics(group, seed=seed)
    return rep


# --- cocycle suite ----------------------------------------------------------------


def _pattern_sum(F, A, B):
    v = F.vec
    return tuple(v.add(a, b) for a, b in zip(A, B))


def _patterns_equal(A, B) -> np.ndarray:
    return np.logical_and.reduce([np.asarray(a) == np.asarray(b) for a, b in zip(A, B)])


def random_unitriangular(field, n: int, rng: np.random.Generator) -> np.ndarray:
    M = np.broadcast_to(ch.identity(), (n, 8, 8)).copy()
    iu = np.triu_indices(8, 1)
    M[:, iu[0], iu[1]] = rng.integers(0, field.q, (n, len(iu[0])))
    return M


def suite_cocycle(group: ReeSylow, samples: int = DEFAULT_SAMPLES, seed: int = 0, **_) -> SuiteReport:
    rep = SuiteReport("cocycle", group.field.m, group.q)
    F = group.field
    v = F.vec
    q = group.q

    # f read off the matrix equals the closed form, and f is a bijection
    u = group.element_arrays()
    ok_read = True
    images = set()
    for lo in range(0, group.order, CHUNK):
        part = tuple(a[lo : lo + CHUNK] for a in u)
        read = ob.cocycle_f_matrix(group.matrix(part))
        closed = ob._cocycle(v, part)
        ok_read &= bool(_patterns_equal(read, closed).all())
        images.update(zip(*(c.tolist() for c in closed)))
    rep.add("f equals the matrix read", ok_read, elements=group.order)
    rep.add("f is a bijection onto V", len(images) == group.order, images=len(images))

    # cocycle law and the closed-form dot action, on pairs of U
    law_ok = dot_ok = right_ok = True
    bad_law = None
    for x, g in _pairs(group, samples, seed):
        Mg = group.matrix(g)
        lhs = ob._cocycle(v, group.mul_arrays(x, g))
        rhs = _pattern_sum(F, ob.act_circ(group, ob._cocycle(v, x), Mg), ob._cocycle(v, g))
        ok = _patterns_equal(lhs, rhs)
        if law_ok and not ok.all():
            law_ok, bad_law = False, _first_bad(ok, x, g)
        # treat x's coordinates as a pattern A
        A = x
        dot_m = ob.act_dot(group, A, Mg)
        dot_c = ob._act(v, A, g)
        dot_ok &= bool(_patterns_equal(dot_m, dot_c).all())
        # A.(g h) = (A.g).h with h = g^-1 x
        h = group.mul_arrays(group.inv_arrays(g), x)
        right_ok &= bool(_patterns_equal(ob._act(v, A, group.mul_arrays(g, h)), ob._act(v, dot_c, h)).all())
    n = _n_pairs(group, samples)
    detail = {"pairs": n, "exhaustive": q == 3}
    rep.add("cocycle law on U", law_ok, **(detail | ({"counterexample": bad_law} if bad_law else {})))
    rep.add("dot action matches pi(A g^-T)", dot_ok, **detail)
    rep.add("dot action is a right action", right_ok, **detail)

    # cocycle law with g an arbitrary unitriangular matrix
    rng = np.random.default_rng(seed + 3)
    n_out = min(samples, CHUNK) if q > 3 else 2000
    x = tuple(rng.integers(0, q, n_out) for _ in range(3))
    G = random_unitriangular(F, n_out, rng)
    Mx = group.matrix(x)
    lhs = ob.cocycle_f_matrix(ch.matmul(F, Mx, G))
    rhs = _pattern_sum(F, ob.act_circ(group, ob.cocycle_f_matrix(Mx), G), ob.cocycle_f_matrix(G))
    outside = int(np.count_nonzero(~_in_group_mask(group, G)))
    rep.add("cocycle law for unitriangular g", bool(_patterns_equal(lhs, rhs).all()), pairs=n_out, outside_group=outside)

    # duality kappa(A.g, B) = kappa(A, B o g^-1)
    ok, detail = _duality(group, samples, seed)
    rep.add("duality of the two actions", ok, **detail)

    # orbits
    records = ob.classify_all(group) if q <= 243 else []
    expect = {"zero": (1, q**3), "F1": (1, q**3), "F3": (q, q**2), "F4": (q**2, q)}
    bad = [r.verge for r in records if (r.size, r.stabilizer_order) != expect[r.family]]
    rep.add(
        "orbit sizes and stabilizers",
        not bad and len(records) == 3 * (q - 1) + 1,
        orbits=len(records),
        sizes={fam: list(expect[fam]) for fam in ob.FAMILIES},
    )
    one_verge = all(sum(ob.is_verge(C) for C in r.members) == 1 for r in records)
    rep.add("one verge per orbit", one_verge, orbits=len(records))
    return rep


def _in_group_mask(group: ReeSylow, G: np.ndarray) -> np.ndarray:
    """Whether each matrix equals the matrix of the element with the same (1,2),(1,3),(1,4) read."""
    f = ob.cocycle_f_matrix(G)
    v = group.field.vec
    # invert f(Y(t1,t3,t4)) = (t1, -t3, t1 t3 - t4)
    t1 = f[0]
    t3 = v.neg(f[1])
    t4 = v.sub(v.mul(t1, t3), f[2])
    return _rows_equal(G, group.matrix((t1, t3, t4)))


def _duality(group: ReeSylow, samples: int, seed: int) -> tuple[bool, dict]:
    F = group.field
    v = F.vec
    q = group.q
    if q == 3:
        grid = np.array(list(itertools.product(range(group.order), repeat=3)), dtype=np.int64).T
        A, B, g = (_coords(group, grid[k]) for k in range(3))
        n = grid.shape[1]
    else:
        rng = np.random.default_rng(seed + 4)
        n = min(samples, CHUNK)
        A, B, g = (tuple(rng.integers(0, q, n) for _ in range(3)) for _ in range(3))
    Mginv = group.matrix(group.inv_arrays(g))
    lhs = ob._kappa(v, ob._act(v, A, g), B)
    rhs = ob._kappa(v, A, ob.act_circ(group, B, Mginv))
    return bool(np.all(lhs == rhs)), {"triples": int(n), "exhaustive": q == 3}


# --- classes suite ----------------------------------------------------------------


def check_sigma(field) -> tuple[bool, dict]:
    """ker sigma_t = {0, t, -t} and |im sigma_t| = q/3 for every t != 0."""
    v = field.vec
    s = np.arange(field.q, dtype=np.int64)
    target = field.q // 3
    for t in range(1, field.q):
        tt = np.full_like(s, t)
        img = v.sub(v.mul(tt, v.f3t(s)), v.mul(v.f3t(tt), s))
        ker = set(s[img == 0].tolist())
        if ker != {0, t, field.neg(t)} or len(np.unique(img)) != target:
            return False, {"t": field.format(t), "kernel": sorted(ker), "image_size": int(len(np.unique(img)))}
    return True, {"q": field.q, "image_size": target}


def expected_class_sizes(q: int) -> Counter:
    """q central classes, q-1 of size q, 3(q-1) of size q * q/3."""
    return Counter({1: q}) + Counter({q: q - 1}) + Counter({q * (q // 3): 3 * (q - 1)})


def suite_classes(group: ReeSylow, jobs: int | None = None, **_) -> SuiteReport:
    rep = SuiteReport("classes", group.field.m, group.q)
    q = group.q
    ok, detail = check_sigma(group.field)
    rep.add("kernel and image of sigma_t", ok, **detail)
    closed = cl.all_classes(group)
    sizes = Counter(c.size for c in closed)
    rep.add("closed-form class count is 5q-4", len(closed) == cl.class_count_formula(q), classes=len(closed))
    rep.add(
        "class sizes",
        sizes == expected_class_sizes(q),
        sizes={str(k): n for k, n in sorted(sizes.items())},
    )
    if q <= cl.BRUTE_FORCE_CAP:
        brute = cl.all_classes_bruteforce(group, jobs=jobs)
        same = [(c.representative, c.members) for c in brute] == [(c.representative, c.members) for c in closed]
        rep.add("brute-force classes equal the closed form", same, classes=len(brute))
    part = cl.superclass_partition(group)
    psizes = Counter(p.size for p in part.parts)
    rep.add(
        "superclass partition",
        len(part) == 3 * (q - 1) + 1,
        superclasses=len(part),
        sizes={str(k): n for k, n in sorted(psizes.items())},
    )
    return rep


# --- axioms suite ----------------------------------------------------------------------


def suite_axioms(group: ReeSylow, **_) -> SuiteReport:
    rep = SuiteReport("axioms", group.field.m, group.q)
    ax = sc.verify_supercharacter_theory(group)
    rep.add("(a) as many characters as superclasses", ax.axiom_a, characters=ax.n_characters, superclasses=ax.n_superclasses)
    rep.add("(b) constant on superclasses", ax.axiom_b)
    rep.add("(c) pairwise orthogonal", ax.axiom_c)
    rep.add("(d) identity is a superclass", ax.axiom_d)
    part = cl.superclass_partition(group)
    table = sc.build_supertable(group, part)
    diff = sc.compare_with_closed_forms(group, table, part)
    rep.add("supercharacter values match the closed forms", not diff, cells=len(table.rows) * len(part), mismatches=diff[:5])
    return rep


# --- chartable suite ---------------------------------------------------------------


def suite_chartable(group: ReeSylow, **_) -> SuiteReport:
    from . import irrchar

    rep = SuiteReport("chartable", group.field.m, group.q)
    if group.q != 3:
        rep.add("character table (q = 3 only)", True, skipped=True)
        return rep
    try:
        table = irrchar.build_char_table(group)
    except irrchar.CharTableError as exc:
        rep.add("character table", False, error=str(exc))
        return rep
    degrees = Counter(r.degree for r in table.rows)
    rep.add(
        "character table",
        len(table.rows) == 11 and degrees == Counter({1: 9, 3: 2}),
        characters=len(table.rows),
        classes=len(table.classes),
        degree_squares=sum(r.degree**2 for r in table.rows),
    )
    rel = irrchar.verify_decompositions(table, group)
    for name, ok in rel.checks.items():
        rep.add(name, ok)
    diff = irrchar.compare_with_character_formulas(table, group)
    rep.diagnostics = [
        {
            "kind": "character-formula-summary",
            "rows": len(table.rows),
            "cells_compared": len(table.rows) * len(table.classes),
            "mismatches": len(diff),
            "rows_with_mismatches": sorted({d["formula_row"] for d in diff}),
        }
    ]
    rep.diagnostics += [dict(kind="character-formula", **d) for d in diff]
    rep.diagnostics += [{"kind": "decomposition", "note": s} for s in rel.diagnostics]
    return rep


_SUITES: dict[str, Callable[..., SuiteReport]] = {
    "cocycle": suite_cocycle,
    "matrix": suite_matrix,
    "classes": suite_classes,
    "axioms": suite_axioms,
    "chartable": suite_chartable,
}


def run_suite(name: str, m: int = 0, samples: int = DEFAULT_SAMPLES, seed: int = 0, jobs: int | None = None) -> SuiteReport:
    group = ReeSylow.from_m(m)
    return _SUITES[name](group, samples=samples, seed=seed, jobs=jobs)


def run_suites(names, m: int = 0, samples: int = DEFAULT_SAMPLES, seed: int = 0, jobs: int | None = None) -> list[SuiteReport]:
    if names in ("all", ["all"]):
        names = SUITES
    return [run_suite(n, m, samples, seed, jobs) for n in names]
