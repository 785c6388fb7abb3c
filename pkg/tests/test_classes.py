from __future__ import annotations

import itertools
from collections import Counter

import pytest

from ree_sylow import classes as cl
from ree_sylow.field import Field
from ree_sylow.group import ReeSylow, Y


@pytest.mark.parametrize("m", [0, 1, 2])
def test_sigma_kernel_and_image(m):
    F = Field(m)
    q = F.q
    ts = range(1, q) if q <= 27 else [1, 2, 3, 100, 242]
    for t in ts:
        assert set(cl.sigma_kernel(F, t)) == {0, t, F.neg(t)}
        assert len(cl.sigma_image(F, t)) == q // 3
        assert len(cl.transversal_T(F, t)) == 3


def test_sigma_zero_raises(F0):
    with pytest.raises(ValueError):
        cl.sigma_t(F0, 0, 1)


def test_sigma_is_additive(F1):
    for t, s, r in itertools.product([1, 5, 26], range(27), [0, 4, 19]):
        assert cl.sigma_t(F1, t, F1.add(s, r)) == F1.add(cl.sigma_t(F1, t, s), cl.sigma_t(F1, t, r))


def test_transversal_covers_field(F1):
    for t in range(1, 27):
        T = cl.transversal_T(F1, t)
        img = cl.sigma_image(F1, t)
        cosets = [frozenset(F1.add(x, y) for y in img) for x in T]
        assert frozenset().union(*cosets) == frozenset(F1.elements())
        assert sum(map(len, cosets)) == 27
        assert T == sorted(T) and T[0] == 0


def test_class_of_examples(G0):
    assert cl.class_of(G0, Y(0, 0, 2)).members == {Y(0, 0, 2)}
    assert cl.class_of(G0, Y(0, 1, 2)).members == {Y(0, 1, s) for s in range(3)}
    # at q = 3 sigma_t is zero, so the t3 coordinate is fixed
    assert cl.class_of(G0, Y(2, 1, 0)).members == {Y(2, 1, s) for s in range(3)}


def test_class_of_q27(G1):
    rec = cl.class_of(G1, Y(1, 0, 0))
    assert rec.size == 27 * 9
    assert {x.t3 for x in rec.members} == cl.sigma_image(G1.field, 1)


@pytest.mark.parametrize("jobs", [1, 2])
def test_bruteforce_matches_closed_form_q3(G0, jobs):
    brute = cl.all_classes_bruteforce(G0, jobs=jobs)
    closed = cl.all_classes(G0)
    assert [c.members for c in brute] == [c.members for c in closed]
    assert len(brute) == cl.class_count_formula(3) == 11
    assert Counter(c.size for c in brute) == Counter({1: 3, 3: 8})


def test_closed_form_counts_q27(G1):
    classes = cl.all_classes(G1)
    assert len(classes) == cl.class_count_formula(27) == 131
    assert Counter(c.size for c in classes) == Counter({1: 27, 27: 26}) + Counter({27 * 9: 78})
    for c in classes:
        assert c.members == cl.class_of(G1, c.representative).members


def test_bruteforce_cap():
    with pytest.raises(ValueError):
        cl.all_classes_bruteforce(ReeSylow.from_m(2))


def test_superclass_partition(G0, G1):
    for G in (G0, G1):
        q = G.q
        part = cl.superclass_partition(G)
        assert len(part) == 3 * (q - 1) + 1
        sizes = Counter((p.kind, p.size) for p in part.parts)
        assert sizes == Counter({("C0", 1): 1, ("C1", q * q): q - 1, ("C3", q): q - 1, ("C4", 1): q - 1})
        for p in part.parts:
            assert all(cl.superclass_key(x) == (p.kind, p.param) for x in p.members)
        # every superclass is a union of classes
        for c in cl.all_classes(G):
            owners = {k for k, p in enumerate(part.parts) if c.members & p.members}
            assert len(owners) == 1
    assert cl.superclass_partition(G0).labels()[:3] == ["C0", "C1(1)", "C1(2)"]


def test_index_array(G0):
    part = cl.superclass_partition(G0)
    idx = cl.superclass_index_array(G0, part)
    for i, x in enumerate(G0.elements()):
        assert x in part.parts[idx[i]].members


def test_default_jobs(monkeypatch):
    monkeypatch.delenv("REE_SYL_JOBS", raising=False)
    assert cl.default_jobs() == 1
    monkeypatch.setenv("REE_SYL_JOBS", "3")
    assert cl.default_jobs() == 3
