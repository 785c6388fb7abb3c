from __future__ import annotations

import itertools

import numpy as np
import pytest

from ree_sylow import chevalley as ch


def all_tuples(q: int) -> tuple[np.ndarray, ...]:
    cols = np.array(list(itertools.product(range(q), repeat=6)), dtype=np.int64).T
    return tuple(cols)


def test_root_matrices_nilpotent():
    for i, e in ch.ROOT_MATRICES.items():
        e3 = e @ e @ e % 3
        assert not e3.any(), ch.ROOT_NAMES[i]
        assert (not (e @ e % 3).any()) == (i in ch.LONG_ROOTS)


def test_e_beta_entries():
    e = ch.ROOT_MATRICES[2] % 3
    expect = np.zeros((8, 8), dtype=np.int64)
    expect[1, 2] = 1
    expect[5, 6] = 2
    assert np.array_equal(e, expect)


def test_root_element_basics(F0, F1):
    for F in (F0, F1):
        for i in range(1, 7):
            assert np.array_equal(ch.root_element(F, i, 0), ch.identity())
            M = ch.root_element(F, i, np.arange(F.q))
            assert ch.is_unitriangular(M).all()
    t = 2
    y2 = ch.root_element(F0, 2, t)
    expect = ch.identity()
    expect[1, 2] = t
    expect[5, 6] = (-t) % 3
    assert np.array_equal(y2, expect)


@pytest.mark.parametrize("m", [0, 1])
def test_one_parameter_subgroups(m, F0, F1):
    F = (F0, F1)[m]
    if F.q == 3:
        t, s = (a.ravel() for a in np.meshgrid(np.arange(3), np.arange(3)))
    else:
        rng = np.random.default_rng(5)
        t, s = rng.integers(0, F.q, 2000), rng.integers(0, F.q, 2000)
    for i in range(1, 7):
        lhs = ch.matmul(F, ch.root_element(F, i, t), ch.root_element(F, i, s))
        assert np.array_equal(lhs, ch.root_element(F, i, F.vec.add(t, s)))
        # mul_root is the sparse form of the same product
        assert np.array_equal(ch.mul_root(F, ch.root_element(F, i, t), i, s), lhs)


def test_tuple_matrices_are_distinct_and_round_trip(F0):
    y = all_tuples(3)
    M = ch.g2_tuple_to_matrix(F0, y)
    assert M.shape == (729, 8, 8)
    assert ch.is_unitriangular(M).all()
    assert len({m.tobytes() for m in M}) == 729
    back = ch.matrix_to_g2_tuple(F0, M)
    assert all(np.array_equal(a, b) for a, b in zip(back, y))
    assert ch.matrix_to_g2_tuple(F0, ch.identity()) == (0,) * 6


def test_non_member_is_rejected(F0):
    M = ch.g2_tuple_to_matrix(F0, (1, 2, 0, 1, 0, 0))
    M[3, 4] = (M[3, 4] + 1) % 3
    with pytest.raises(ch.NotInGroupError):
        ch.matrix_to_g2_tuple(F0, M)


def test_inverse_unitriangular(F1):
    rng = np.random.default_rng(2)
    M = ch.identity((50,))
    iu = np.triu_indices(8, 1)
    M[:, iu[0], iu[1]] = rng.integers(0, F1.q, (50, len(iu[0])))
    Minv = ch.inverse_unitriangular(F1, M)
    assert np.array_equal(ch.matmul(F1, M, Minv), ch.identity((50,)))
    with pytest.raises(ValueError):
        ch.inverse_unitriangular(F1, np.zeros((8, 8), dtype=np.int64))


def test_twisted_map_fixed_points_q3(F0):
    y = all_tuples(3)
    img = ch.twisted_F(F0, y, ops=F0.vec)
    assert ch.twisted_F(F0, (0,) * 6) == (0,) * 6
    assert len(set(zip(*(a.tolist() for a in img)))) == 729  # injective
    fixed = np.all(np.stack(img) == np.stack(y), axis=0)
    assert fixed.sum() == 27
    t1, t2, t3, t4, t5, t6 = (a[fixed] for a in y)
    v = F0.vec
    assert np.array_equal(t2, v.f3t(t1))
    assert np.array_equal(t5, v.add(v.f3t(t3), v.pow(t1, 3 * F0.theta + 3)))
    assert np.array_equal(t6, v.add(v.f3t(t4), v.pow(t1, 6 * F0.theta + 3)))


def _F_matrix(F, M):  # noqa: N802
    return ch.g2_tuple_to_matrix(F, ch.twisted_F(F, ch.matrix_to_g2_tuple(F, M), ops=F.vec))


def test_twisted_map_is_a_homomorphism_q3(F0):
    """F(xy) = F(x)F(y) on all 729^2 pairs, through a multiplication table of indices."""
    y = all_tuples(3)
    M = ch.g2_tuple_to_matrix(F0, y)
    weights = 3 ** np.arange(5, -1, -1)

    def index(t):
        return np.tensordot(weights, np.stack(t), axes=1)

    assert np.array_equal(index(y), np.arange(729))
    perm = index(ch.twisted_F(F0, y, ops=F0.vec))
    # over the prime field plain integer products reduced mod 3 are exact
    prod = (M[:, None] @ M[None]) % 3
    iu = np.triu_indices(8, 1)
    w28 = 3 ** np.arange(len(iu[0]), dtype=np.int64)
    key = (M[:, iu[0], iu[1]] * w28).sum(-1)
    order = np.argsort(key)
    pkey = (prod[..., iu[0], iu[1]] * w28).sum(-1)
    pos = np.searchsorted(key[order], pkey)
    assert np.array_equal(key[order][pos], pkey)  # closed under products
    table = order[pos]
    assert np.array_equal(perm[table], table[np.ix_(perm, perm)])


def test_twisted_map_q27(F1):
    rng = np.random.default_rng(11)
    v = F1.vec
    n = 100_000
    y = tuple(rng.integers(0, F1.q, n) for _ in range(6))
    img = ch.twisted_F(F1, y, ops=v)
    fixed = np.all(np.stack(img) == np.stack(y), axis=0)
    conforming = np.all(np.stack(ch.fixed_tuple(F1, y[0], y[2], y[3], ops=v)) == np.stack(y), axis=0)
    assert np.array_equal(fixed, conforming)
    assert (~conforming).sum() >= n - 10
    # every tuple built from (t1, t3, t4) is fixed
    idx = np.arange(F1.q**3)
    t1, t3, t4 = idx // 729, idx // 27 % 27, idx % 27
    ft = ch.fixed_tuple(F1, t1, t3, t4, ops=v)
    assert all(np.array_equal(a, b) for a, b in zip(ch.twisted_F(F1, ft, ops=v), ft))
    # homomorphism on sampled pairs
    a = tuple(rng.integers(0, F1.q, 2000) for _ in range(6))
    b = tuple(rng.integers(0, F1.q, 2000) for _ in range(6))
    Ma, Mb = ch.g2_tuple_to_matrix(F1, a), ch.g2_tuple_to_matrix(F1, b)
    assert np.array_equal(
        _F_matrix(F1, ch.matmul(F1, Ma, Mb)), ch.matmul(F1, _F_matrix(F1, Ma), _F_matrix(F1, Mb))
    )


def test_ree_matrix_entries(G0, G1):
    for G in (G0, G1):
        F = G.field
        v = F.vec
        t1, t3, t4 = G.element_arrays()
        M = G.matrix((t1, t3, t4))
        assert np.array_equal(M[:, 0, 1], t1)
        assert np.array_equal(M[:, 0, 2], v.neg(t3))
        assert np.array_equal(M[:, 1, 2], v.f3t(t1))
        assert np.array_equal(M[:, 0, 3], v.sub(v.mul(t1, t3), t4))
    assert np.array_equal(ch.ree_matrix(G0.field, 0, 0, 0), ch.identity())


def test_display_fixture_q3(G0):
    F = G0.field
    assert all(ch.check_display(F, *x) == [] for x in G0.elements())
    for t4 in range(3):
        assert ch.display_matrix(F, 0, 0, t4)[0, 6] == F.neg(F.f3t(t4))


def test_display_fixture_q27_sample(G1):
    rng = np.random.default_rng(0)
    for i in rng.integers(0, G1.order, 40).tolist():
        assert ch.check_display(G1.field, *G1.element(i)) == []


def test_commutator_relations_q3(F0):
    t, s = (a.ravel() for a in np.meshgrid(np.arange(3), np.arange(3)))
    rel = ch.commutator_relations(F0, t, s)
    assert sorted(rel) == ["[y1,y2]", "[y1,y3]", "[y1,y4]", "[y2,y5]", "[y3,y4]"]
    for name, (lhs, rhs) in rel.items():
        assert np.array_equal(lhs, rhs), name


def test_commutator_y1_y3_is_y4(F0):
    for t, s in itertools.product(range(3), repeat=2):
        lhs = ch.commutator_matrix(F0, ch.root_element(F0, 1, t), ch.root_element(F0, 3, s))
        assert np.array_equal(lhs, ch.root_element(F0, 4, t * s % 3))


def test_format_matrix(F0, F1):
    text = ch.format_matrix(F0, ch.identity())
    assert text.splitlines()[0] == "1,0,0,0,0,0,0,0"
    assert len(ch.format_matrix(F1, ch.identity()).splitlines()) == 8
    assert ch.format_matrix(F1, ch.identity()).startswith("(1,0,0),(0,0,0)")


def test_sparse_products_match_dense(F1):
    rng = np.random.default_rng(9)
    M = rng.integers(0, F1.q, (20, 8, 8))
    t = rng.integers(0, F1.q, 20)
    for i in range(1, 7):
        y = ch.root_element(F1, i, t)
        assert np.array_equal(ch.root_mul(F1, i, t, M), ch.matmul(F1, y, M))
        assert np.array_equal(ch.mul_root(F1, M, i, t), ch.matmul(F1, M, y))
