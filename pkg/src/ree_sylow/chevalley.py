"""The 8x8 matrix realisation of the Sylow 3-subgroup of G2(q).

Matrices are numpy integer arrays of shape ``(..., 8, 8)`` whose entries are
field elements (ints in the encoding of :mod:`ree_sylow.field`).  Every
function broadcasts over leading batch axes, so a batch of 10^5 matrices is
handled in one call.  This is the slow, obviously-correct path: the closed
forms in :mod:`ree_sylow.group` are checked against it.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .field import Field

N = 8

# Chevalley basis root matrices, as signed lists of 1-based positions.
_ROOT_ENTRIES: dict[int, list[tuple[int, int, int]]] = {
    # alpha
    1: [(1, 2, 1), (7, 8, -1), (3, 4, 1), (5, 6, -1), (3, 5, 1), (4, 6, -1)],
    # beta
    2: [(2, 3, 1), (6, 7, -1)],
    # alpha + beta
    3: [(1, 3, -1), (6, 8, 1), (2, 4, 1), (5, 7, -1), (2, 5, 1), (4, 7, -1)],
    # 2 alpha + beta
    4: [(1, 4, -1), (5, 8, 1), (2, 6, -1), (3, 7, 1), (1, 5, -1), (4, 8, 1)],
    # 3 alpha + beta
    5: [(1, 6, -1), (3, 8, 1)],
    # 3 alpha + 2 beta
    6: [(1, 7, -1), (2, 8, 1)],
}

ROOT_NAMES = {
    1: "alpha",
    2: "beta",
    3: "alpha+beta",
    4: "2alpha+beta",
    5: "3alpha+beta",
    6: "3alpha+2beta",
}
LONG_ROOTS = (2, 5, 6)


def root_matrix_int(i: int) -> np.ndarray:
    """e_r as an integer matrix (entries -1, 0, 1)."""
    e = np.zeros((N, N), dtype=np.int64)
    for r, c, s in _ROOT_ENTRIES[i]:
        e[r - 1, c - 1] = s
    return e


ROOT_MATRICES = {i: root_matrix_int(i) for i in _ROOT_ENTRIES}
ROOT_SQUARES = {i: e @ e for i, e in ROOT_MATRICES.items()}

# Entry that carries the parameter of y_i(t) once the factors to its left
# have been peeled off: (position, sign of e_i there).
_PEEL_POS = {
    2: ((1, 2), 1),
    1: ((0, 1), 1),
    3: ((0, 2), -1),
    4: ((0, 3), -1),
    5: ((0, 5), -1),
    6: ((0, 6), -1),
}
_TUPLE_ORDER = (2, 1, 3, 4, 5, 6)


class G2Tuple(NamedTuple):
    t1: int
    t2: int
    t3: int
    t4: int
    t5: int
    t6: int


class NotInGroupError(ValueError):
    pass


# --- matrix arithmetic over GF(q) --------------------------------------------


def identity(batch: tuple[int, ...] = ()) -> np.ndarray:
    return np.broadcast_to(np.eye(N, dtype=np.int64), batch + (N, N)).copy()


def matmul(field: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    v = field.vec
    A = np.asarray(A)
    B = np.asarray(B)
    shape = np.broadcast_shapes(A.shape, B.shape)
    C = np.zeros(shape, dtype=np.int64)
    for k in range(N):
        C = v.add(C, v.mul(A[..., :, k, None], B[..., None, k, :]))
    return C


def matsub(field: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return field.vec.sub(np.asarray(A), np.asarray(B))


def inverse_unitriangular(field: Field, M: np.ndarray) -> np.ndarray:
    """(I + X)^-1 = I - X + X^2 - ... ; X is strictly upper triangular."""
    v = field.vec
    M = np.asarray(M)
    if not is_unitriangular(M).all():
        raise ValueError("matrix is not upper unitriangular")
    eye = identity(M.shape[:-2])
    X = v.sub(M, eye)
    negX = v.neg(X)
    out = eye
    term = eye
    for _ in range(N - 1):
        term = matmul(field, term, negX)
        out = v.add(out, term)
    return out


def transpose(M: np.ndarray) -> np.ndarray:
    return np.swapaxes(M, -1, -2)


def is_unitriangular(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M)
    diag = np.all(np.diagonal(M, axis1=-2, axis2=-1) == 1, axis=-1)
    low = np.all(np.tril(np.ones((N, N), dtype=bool), -1) <= (M == 0), axis=(-2, -1))
    return diag & low


# --- root elements -------------------------------------------------------------


def root_element(field: Field, i: int, t) -> np.ndarray:
    """y_i(t) = I + t e_i + (1/2) t^2 e_i^2, with 1/2 = 2 in characteristic 3."""
    v = field.vec
    t = np.asarray(t, dtype=np.int64)[..., None, None]
    e = ROOT_MATRICES[i] % 3
    e2 = ROOT_SQUARES[i] % 3
    half_t2 = v.mul(2, v.mul(t, t))
    out = v.add(identity(), v.mul(t, e))
    return v.add(out, v.mul(half_t2, e2))


def _times_root(field: Field, M: np.ndarray, i: int) -> np.ndarray:
    """M @ e_i using the sparsity of e_i."""
    v = field.vec
    out = np.zeros_like(M)
    for r, c, s in _ROOT_ENTRIES[i]:
        col = M[..., :, r - 1]
        out[..., :, c - 1] = (v.add if s > 0 else v.sub)(out[..., :, c - 1], col)
    return out


def mul_root(field: Field, M: np.ndarray, i: int, t) -> np.ndarray:
    """M @ y_i(t) without a dense matrix product."""
    v = field.vec
    t = np.asarray(t, dtype=np.int64)[..., None, None]
    ME = _times_root(field, M, i)
    ME2 = _times_root(field, ME, i)
    out = v.add(M, v.mul(t, ME))
    return v.add(out, v.mul(v.mul(2, v.mul(t, t)), ME2))


def _root_times(field: Field, M: np.ndarray, i: int) -> np.ndarray:
    """e_i @ M using the sparsity of e_i."""
    v = field.vec
    out = np.zeros_like(M)
    for r, c, s in _ROOT_ENTRIES[i]:
        row = M[..., c - 1, :]
        out[..., r - 1, :] = (v.add if s > 0 else v.sub)(out[..., r - 1, :], row)
    return out


def root_mul(field: Field, i: int, t, M: np.ndarray) -> np.ndarray:
    """y_i(t) @ M without a dense matrix product."""
    v = field.vec
    t = np.asarray(t, dtype=np.int64)[..., None, None]
    EM = _root_times(field, M, i)
    E2M = _root_times(field, EM, i)
    out = v.add(M, v.mul(t, EM))
    return v.add(out, v.mul(v.mul(2, v.mul(t, t)), E2M))


def g2_tuple_to_matrix(field: Field, y) -> np.ndarray:
    """y2(t2) y1(t1) y3(t3) y4(t4) y5(t5) y6(t6); components may be arrays."""
    y = G2Tuple(*y)
    shape = np.broadcast_shapes(*(np.shape(t) for t in y))
    M = identity(shape)
    for i in _TUPLE_ORDER:
        M = mul_root(field, M, i, y[i - 1])
    return M


def matrix_to_g2_tuple(field: Field, M: np.ndarray) -> G2Tuple:
    """Invert g2_tuple_to_matrix by reading one entry per factor and peeling it."""
    v = field.vec
    M = np.asarray(M)
    params: dict[int, np.ndarray] = {}
    for i in _TUPLE_ORDER:
        (r, c), sign = _PEEL_POS[i]
        t = M[..., r, c]
        if sign < 0:
            t = v.neg(t)
        params[i] = t
        M = root_mul(field, i, v.neg(t), M)
    if not np.all(M == identity(M.shape[:-2])):
        raise NotInGroupError("matrix is not in G2^syl(q)")
    vals = [params[i] for i in range(1, 7)]
    if M.ndim == 2:
        vals = [int(x) for x in vals]
    return G2Tuple(*vals)


def twisted_F(field: Field, y, ops=None) -> G2Tuple:
    """The Frobenius-twisted graph map on canonical 6-tuples."""
    o = ops if ops is not None else field
    t1, t2, t3, t4, t5, t6 = y
    a = o.f3t(t1)  # t1^(3 theta)
    b = o.ft(t2)  # t2^theta
    b2 = o.mul(b, b)
    return G2Tuple(
        b,
        a,
        o.sub(o.ft(t5), o.mul(a, b)),
        o.sub(o.ft(t6), o.mul(a, b2)),
        o.add(o.f3t(t3), o.mul(a, o.f3t(t2))),
        o.add(o.f3t(t4), o.mul(o.mul(a, a), o.f3t(t2))),
    )


def fixed_tuple(field: Field, t1, t3, t4, ops=None) -> G2Tuple:
    """The F-fixed 6-tuple with free coordinates t1, t3, t4."""
    o = ops if ops is not None else field
    a = o.f3t(t1)
    a3 = o.mul(a, o.mul(t1, o.mul(t1, t1)))  # t1^(3theta+3)
    a6 = o.mul(o.mul(a, a), o.mul(t1, o.mul(t1, t1)))  # t1^(6theta+3)
    return G2Tuple(t1, a, t3, t4, o.add(o.f3t(t3), a3), o.add(o.f3t(t4), a6))


def ree_matrix(field: Field, t1, t3, t4) -> np.ndarray:
    """Matrix of Y(t1, t3, t4), built as a product of root elements."""
    return g2_tuple_to_matrix(field, fixed_tuple(field, t1, t3, t4, ops=field.vec))


# --- the displayed matrix, kept as a fixture ---------------------------------


def display_matrix(field: Field, t1: int, t3: int, t4: int) -> np.ndarray:
    """Entry-by-entry closed-form display of the 8x8 matrix of Y(t1,t3,t4)."""
    F = field

    def s(*terms):
        out = 0
        for coef, val in terms:
            out = F.add(out, F.mul(F.from_int(coef), val))
        return out

    def m(*xs):
        out = 1
        for x in xs:
            out = F.mul(out, x)
        return out

    def pe(x, c1, c0):
        return F.power_expr(x, c1, c0)

    t1_3t = pe(t1, 3, 0)
    M = np.eye(N, dtype=np.int64)
    E = {}
    E[1, 2] = t1
    E[1, 3] = s((-1, t3))
    E[1, 4] = s((1, m(t1, t3)), (-1, t4))
    E[1, 5] = s((1, m(t1, t3)), (-1, t4))
    E[1, 6] = s((-1, m(t1, t4)), (-1, pe(t1, 3, 3)), (-1, pe(t3, 3, 0)))
    E[1, 7] = s((-1, m(t1, t3, t3)), (-1, m(t3, t4)), (-1, pe(t1, 6, 3)), (-1, pe(t4, 3, 0)))
    E[1, 8] = s(
        (2, m(t1, t3, t4)),
        (1, pe(t1, 6, 4)),
        (1, m(t1, pe(t4, 3, 0))),
        (-1, m(t3, pe(t1, 3, 3))),
        (-1, pe(t3, 3, 1)),
        (-1, m(t4, t4)),
    )
    E[2, 3] = t1_3t
    E[2, 4] = s((1, pe(t1, 3, 1)), (1, t3))
    E[2, 5] = s((1, pe(t1, 3, 1)), (1, t3))
    E[2, 6] = s((-1, pe(t1, 3, 2)), (-1, t4))
    E[2, 7] = s((-2, m(pe(t1, 3, 1), t3)), (1, m(t1_3t, t4)), (-1, m(t3, t3)))
    E[2, 8] = s(
        (-1, m(pe(t1, 3, 2), t3)),
        (2, m(pe(t1, 3, 1), t4)),
        (1, m(t1_3t, pe(t3, 3, 0))),
        (2, m(t3, t4)),
        (1, pe(t4, 3, 0)),
        (2, pe(t1, 6, 3)),
    )
    E[3, 4] = t1
    E[3, 5] = t1
    E[3, 6] = s((-1, m(t1, t1)))
    E[3, 7] = s((-2, m(t1, t3)), (1, t4))
    E[3, 8] = s((-1, m(t1, t1, t3)), (2, m(t1, t4)), (1, pe(t3, 3, 0)), (1, pe(t1, 3, 3)))
    E[4, 5] = 0
    E[4, 6] = s((-1, t1))
    E[4, 7] = s((-1, t3))
    E[4, 8] = s((-1, m(t1, t3)), (1, t4))
    E[5, 6] = s((-1, t1))
    E[5, 7] = s((-1, t3))
    E[5, 8] = s((-1, m(t1, t3)), (1, t4))
    E[6, 7] = s((-1, t1_3t))
    E[6, 8] = s((1, pe(t1, 3, 1)), (1, t3))
    E[7, 8] = s((-1, t1))
    for (r, c), val in E.items():
        M[r - 1, c - 1] = val
    return M


class DisplayMismatch(NamedTuple):
    row: int
    col: int
    computed: int
    displayed: int


def check_display(field: Field, t1: int, t3: int, t4: int) -> list[DisplayMismatch]:
    """Positions (1-based) where the displayed matrix differs from the product."""
    truth = ree_matrix(field, t1, t3, t4)
    shown = display_matrix(field, t1, t3, t4)
    rows, cols = np.nonzero(truth != shown)
    return [
        DisplayMismatch(int(r) + 1, int(c) + 1, int(truth[r, c]), int(shown[r, c]))
        for r, c in zip(rows, cols)
    ]


# --- commutator relations in characteristic 3 -------------------------------


def commutator_matrix(field: Field, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """X^-1 Y^-1 X Y."""
    Xi = inverse_unitriangular(field, X)
    Yi = inverse_unitriangular(field, Y)
    return matmul(field, matmul(field, Xi, Yi), matmul(field, X, Y))


def commutator_relations(field: Field, t, s) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Each nontrivial characteristic-3 commutator as (matrix commutator, claimed product).

    ``t`` and ``s`` may be arrays of equal shape.
    """
    v = field.vec
    y = lambda i, x: root_element(field, i, x)  # noqa: E731
    mm = lambda *Ms: _chain(field, Ms)  # noqa: E731
    t = np.asarray(t)
    s = np.asarray(s)
    t2 = v.mul(t, t)
    t3 = v.mul(t2, t)
    return {
        "[y1,y2]": (
            commutator_matrix(field, y(1, t), y(2, s)),
            mm(
                y(3, v.neg(v.mul(s, t))),
                y(4, v.neg(v.mul(s, t2))),
                y(5, v.mul(s, t3)),
                y(6, v.mul(v.mul(s, s), t3)),
            ),
        ),
        "[y1,y3]": (commutator_matrix(field, y(1, t), y(3, s)), y(4, v.mul(t, s))),
        "[y1,y4]": (commutator_matrix(field, y(1, t), y(4, s)), identity(t.shape)),
        "[y3,y4]": (commutator_matrix(field, y(3, t), y(4, s)), identity(t.shape)),
        "[y2,y5]": (commutator_matrix(field, y(2, t), y(5, s)), y(6, v.mul(t, s))),
    }


def _chain(field: Field, Ms) -> np.ndarray:
    out = Ms[0]
    for M in Ms[1:]:
        out = matmul(field, out, M)
    return out


def format_matrix(field: Field, M: np.ndarray) -> str:
    """Eight lines of comma-separated entries; multi-digit entries are parenthesised."""
    if field.degree == 1:
        fmt = field.format
    else:
        fmt = lambda x: f"({field.format(x)})"  # noqa: E731
    return "\n".join(",".join(fmt(int(x)) for x in row) for row in M)
