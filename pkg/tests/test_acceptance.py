"""End-to-end acceptance checks, one test group per criterion.

Each criterion's outcome is printed as a PASS/FAIL line in the pytest
terminal summary (see conftest.py).
"""

from __future__ import annotations

import itertools
import time
from collections import Counter

import numpy as np
import pytest

from ree_sylow import chevalley as ch
from ree_sylow import classes as cl
from ree_sylow import irrchar as ic
from ree_sylow import orbits as ob
from ree_sylow import superchar as sc
from ree_sylow import verify as vf
from ree_sylow.field import make_field
from ree_sylow.group import ReeSylow


def criterion(n: int, text: str):
    return pytest.mark.criterion(n, text)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


@pytest.fixture(scope="module")
def U0():
    return ReeSylow.from_m(0)


@pytest.fixture(scope="module")
def U1():
    return ReeSylow.from_m(1)


# 1 -------------------------------------------------------------------------------


@criterion(1, "27 of the 729 tuples are fixed by the twisted map and they are exactly the Y(t1,t3,t4)")
def test_fixed_points(U0):
    F = U0.field
    with Timer() as t:
        cols = np.array(list(itertools.product(range(3), repeat=6)), dtype=np.int64).T
        img = np.stack(ch.twisted_F(F, tuple(cols), ops=F.vec))
        fixed = {tuple(map(int, cols[:, k])) for k in np.nonzero((img == cols).all(axis=0))[0]}
        params = {tuple(ch.fixed_tuple(F, *x)) for x in U0.elements()}
    assert len(fixed) == 27
    assert fixed == params
    ok, detail = vf.check_fixed_points(U0)
    assert ok and detail["fixed"] == 27
    assert t.elapsed < 1.0


# 2 -------------------------------------------------------------------------------


@criterion(2, "mul/inv/commutator/conjugate agree with 8x8 matrix arithmetic (all pairs at q=3, 1e5 seeded at q=27)")
def test_group_laws_q3(U0):
    with Timer() as t:
        res = vf.check_group_laws(U0, samples=1, seed=0)
    assert set(res) == {"mul", "inv", "commutator", "conjugate"}
    for name, (ok, detail) in res.items():
        assert ok, (name, detail)
        assert detail["exhaustive"] and detail["pairs"] == 27 * 27
    assert t.elapsed < 1.0


@criterion(2, "mul/inv/commutator/conjugate agree with 8x8 matrix arithmetic (all pairs at q=3, 1e5 seeded at q=27)")
def test_group_laws_q27(U1):
    with Timer() as t:
        res = vf.check_group_laws(U1, samples=100_000, seed=0)
    for name, (ok, detail) in res.items():
        assert ok, (name, detail)
        assert detail["pairs"] >= 100_000
    assert t.elapsed < 60.0


# 3 -------------------------------------------------------------------------------


@criterion(3, "the five commutator relations hold in the matrix model (exhaustive at q=3, 1e4 pairs at q=27)")
@pytest.mark.parametrize("m,samples", [(0, 1), (1, 10_000)])
def test_commutator_relations(m, samples):
    G = ReeSylow.from_m(m)
    with Timer() as t:
        res = vf.check_commutator_relations(G, samples=samples, seed=0)
    assert len(res) == 5
    for name, (ok, detail) in res.items():
        assert ok, (name, detail)
        assert detail["pairs"] >= (9 if m == 0 else 10_000)
    assert t.elapsed < 60.0


# 4 -------------------------------------------------------------------------------


@criterion(4, "brute-force class counts are 11 at q=3 and 131 at q=27 (5q-4) with sizes 1, q, q*3^(2m)")
@pytest.mark.parametrize("m", [0, 1])
def test_class_counts(m):
    G = ReeSylow.from_m(m)
    q = G.q
    with Timer() as t:
        classes = cl.all_classes_bruteforce(G)
    assert len(classes) == 5 * q - 4 == {0: 11, 1: 131}[m]
    assert Counter(c.size for c in classes) == vf.expected_class_sizes(q)
    assert sum(c.size for c in classes) == q**3
    assert t.elapsed < 600.0


# 5 -------------------------------------------------------------------------------


@criterion(5, "ker sigma_t = {0, t, -t} and |im sigma_t| = 3^(2m) for all t != 0, m in {0, 1, 2}")
@pytest.mark.parametrize("m", [0, 1, 2])
def test_sigma(m):
    F = make_field(m)
    with Timer() as t:
        ok, detail = vf.check_sigma(F)
    assert ok, detail
    assert detail["image_size"] == 3 ** (2 * m)
    # an independent scalar recount at a few t
    for tt in sorted({1, 2, F.q - 1}):
        ker = [s for s in F.elements() if cl.sigma_t(F, tt, s) == 0]
        assert set(ker) == {0, tt, F.neg(tt)}
    assert t.elapsed < 60.0


# 6 and 7 ---------------------------------------------------------------------------


@criterion(6, "supercharacter-theory axioms (a)-(d) hold at m=0 and m=1 with exact Z[w] inner products")
@pytest.mark.parametrize("m", [0, 1])
def test_axioms(m):
    G = ReeSylow.from_m(m)
    q = G.q
    with Timer() as t:
        rep = sc.verify_supercharacter_theory(G)
    assert rep.passed, rep.failures
    assert rep.n_characters == rep.n_superclasses == 3 * (q - 1) + 1
    assert t.elapsed < 900.0


@criterion(7, "computed supercharacter values equal the closed-form cells at m=0 and m=1")
@pytest.mark.parametrize("m", [0, 1])
def test_closed_form_table(m):
    G = ReeSylow.from_m(m)
    part = cl.superclass_partition(G)
    table = sc.build_supertable(G, part)
    assert len(table.rows) == len(part) == 3 * (G.q - 1) + 1
    assert sc.compare_with_closed_forms(G, table, part) == []


# 8 -------------------------------------------------------------------------------


@criterion(8, "q=3 character table: 9 linear + 2 induced, both orthogonalities, sum deg^2 = 27, decompositions")
def test_character_table(U0):
    with Timer() as t:
        table = ic.build_char_table(U0)
        rel = ic.verify_decompositions(table, U0)
    lin = table.rows[:9]
    assert len(table.rows) == 11 == len(table.classes)
    assert all(r.degree == 1 and ic.is_homomorphism(U0, r) for r in lin)
    assert [r.degree for r in table.rows[9:]] == [3, 3]
    assert sum(r.degree**2 for r in table.rows) == 27
    for i, j in itertools.product(range(11), repeat=2):
        assert ic.class_inner(U0, table.rows[i].values, table.rows[j].values) == int(i == j)
    assert rel.passed, rel.checks
    for a14 in (1, 2):
        assert rel.decompositions[f"Psi_M(A14*e14;A14*={a14})"] == {f"chi2(A14*={a14})": 3}
    for a13 in (1, 2):
        mult = rel.decompositions[f"Psi_M(A13*e13;A13*={a13})"]
        assert len(mult) == 3 and set(mult.values()) == {1}
        assert all(k.startswith("lin(") for k in mult)
    assert t.elapsed < 1.0


# 9 -------------------------------------------------------------------------------


@criterion(9, "orbit sizes/stabilisers are 1/q^3, q/q^2, q^2/q and each orbit has exactly one verge (m=0, 1)")
@pytest.mark.parametrize("m", [0, 1])
def test_orbits(m):
    G = ReeSylow.from_m(m)
    q = G.q
    expected = {"zero": (1, q**3), "F1": (1, q**3), "F3": (q, q**2), "F4": (q**2, q)}
    for A in ob.verge_patterns(G):
        rec = ob.orbit_of(G, A)
        assert (rec.size, rec.stabilizer_order) == expected[ob.family_of(A)]
    records = ob.classify_all(G)
    covered = set()
    for rec in records:
        assert sum(ob.is_verge(C) for C in rec.members) == 1
        assert not covered & rec.members
        covered |= rec.members
    assert len(covered) == q**3


# 10 ------------------------------------------------------------------------------


@criterion(10, "matrix-display and character-formula diff reports are generated, non-empty and deterministic")
def test_diagnostics(U0, U1):
    for G in (U0, U1):
        first = vf.display_diagnostics(G, seed=0)
        assert first and first[0]["kind"] == "matrix-display-summary"
        assert first == vf.display_diagnostics(G, seed=0)
    rep = vf.suite_chartable(U0)
    again = vf.suite_chartable(U0)
    assert rep.diagnostics and rep.diagnostics == again.diagnostics
    summary = rep.diagnostics[0]
    assert summary["kind"] == "character-formula-summary"
    assert summary["mismatches"] == len(rep.diagnostics) - 1 - sum(
        d["kind"] == "decomposition" for d in rep.diagnostics
    )
    # diagnostics never decide pass/fail
    assert rep.passed
