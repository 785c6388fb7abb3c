"""Conjugacy classes, the additive maps sigma_t, and the superclass partition."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import Field
from .group import ReeSylow, Y

#: Pairwise brute-force conjugation is limited to q <= 27.
BRUTE_FORCE_CAP = 27


@dataclass(frozen=True)
class ClassRecord:
    representative: Y
    members: frozenset = dc_field(repr=False)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Superclass:
    label: str
    kind: str  # C0, C1, C3 or C4
    param: int  # the t* in the label; 0 for C0
    members: frozenset = dc_field(repr=False)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class SuperclassPartition:
    parts: list[Superclass]

    def __len__(self) -> int:
        return len(self.parts)

    def labels(self) -> list[str]:
        return [p.label for p in self.parts]


# --- sigma_t ----------------------------------------------------------------


def sigma_t(field: Field, t: int, s: int) -> int:
    """s -> t s^(3 theta) - t^(3 theta) s."""
    if t == 0:
        raise ValueError("sigma_t needs t != 0")
    return field.sub(field.mul(t, field.f3t(s)), field.mul(field.f3t(t), s))


def sigma_kernel(field: Field, t: int) -> list[int]:
    return [s for s in field.elements() if sigma_t(field, t, s) == 0]


def sigma_image(field: Field, t: int) -> frozenset[int]:
    return frozenset(sigma_t(field, t, s) for s in field.elements())


def transversal_T(field: Field, t: int) -> list[int]:
    """Least element of each coset of im(sigma_t) in F_q, sorted."""
    image = sigma_image(field, t)
    reps: list[int] = []
    covered: set[int] = set()
    for x in field.elements():
        if x in covered:
            continue
        reps.append(x)
        covered |= {field.add(x, y) for y in image}
    return reps


# --- classes, closed form ----------------------------------------------------------


def class_of(group: ReeSylow, x: Y) -> ClassRecord:
    """The conjugacy class of x read off the closed-form description."""
    F = group.field
    t1, t3, t4 = x
    if t1 == 0 and t3 == 0:
        members = {Y(0, 0, t4)}
    elif t1 == 0:
        members = {Y(0, t3, s4) for s4 in F.elements()}
    else:
        coset = {F.add(t3, y) for y in sigma_image(F, t1)}
        members = {Y(t1, s3, s4) for s3 in coset for s4 in F.elements()}
    return ClassRecord(min(members), frozenset(members))


def all_classes(group: ReeSylow) -> list[ClassRecord]:
    """All classes from the closed form, sorted by representative."""
    out: list[ClassRecord] = []
    seen: set[Y] = set()
    for x in group.elements():
        if x in seen:
            continue
        rec = class_of(group, x)
        seen |= rec.members
        out.append(rec)
    return sorted(out, key=lambda r: r.representative)


def class_count_formula(q: int) -> int:
    return 5 * q - 4


# --- classes, brute force --------------------------------------------------------


def _min_conjugate_index(group: ReeSylow, lo: int, hi: int) -> np.ndarray:
    """For every x, the least index of g x g^-1 over g with index in [lo, hi)."""
    q = group.q
    x = group.element_arrays()
    best = np.full(group.order, group.order, dtype=np.int64)
    for gi in range(lo, hi):
        g = tuple(np.int64(c) for c in group.element(gi))
        c1, c3, c4 = group.conjugate_arrays(x, g)
        np.minimum(best, (c1 * q + c3) * q + c4, out=best)
    return best


def _shard(args):
    m, lo, hi = args
    return _min_conjugate_index(ReeSylow.from_m(m), lo, hi)


def default_jobs() -> int:
    env = os.environ.get("REE_SYL_JOBS")
    return max(1, int(env)) if env else 1


def all_classes_bruteforce(group: ReeSylow, jobs: int | None = None) -> list[ClassRecord]:
    """Classes by conjugating every element by every g in U.

    The least conjugate of x over all of U is the least member of its class,
    so grouping by that minimum gives the partition.  The scan over g is
    sharded across ``jobs`` worker processes; merging is an element-wise min.
    """
    if group.q > BRUTE_FORCE_CAP:
        raise ValueError(f"brute-force classes are capped at q <= {BRUTE_FORCE_CAP}")
    jobs = jobs or default_jobs()
    n = group.order
    if jobs == 1:
        best = _min_conjugate_index(group, 0, n)
    else:
        bounds = np.linspace(0, n, jobs + 1).astype(int)
        tasks = [(group.field.m, int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:])]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            best = np.minimum.reduce(list(pool.map(_shard, tasks)))
    classes: dict[int, set[Y]] = {}
    for i, rep in enumerate(best.tolist()):
        classes.setdefault(rep, set()).add(group.element(i))
    return [ClassRecord(group.element(r), frozenset(classes[r])) for r in sorted(classes)]


# --- superclasses -------------------------------------------------------------------


def superclass_key(x: Y) -> tuple[str, int]:
    t1, t3, t4 = x
    if t1:
        return "C1", t1
    if t3:
        return "C3", t3
    if t4:
        return "C4", t4
    return "C0", 0


def superclass_label(group: ReeSylow, kind: str, param: int) -> str:
    if kind == "C0":
        return "C0"
    return f"{kind}({group.field.format(param)})"


_KIND_ORDER = {"C0": 0, "C1": 1, "C3": 2, "C4": 3}


def superclass_partition(group: ReeSylow) -> SuperclassPartition:
    """C0, C1(t), C3(t), C4(t) built from conjugacy classes; asserts a partition."""
    F = group.field
    parts = [Superclass("C0", "C0", 0, frozenset({group.identity()}))]
    for t in range(1, group.q):
        members: set[Y] = set()
        for t3 in transversal_T(F, t):
            cls = class_of(group, Y(t, t3, 0)).members
            if members & cls:
                raise AssertionError(f"transversal classes overlap for C1({t})")
            members |= cls
        parts.append(Superclass(superclass_label(group, "C1", t), "C1", t, frozenset(members)))
    for t in range(1, group.q):
        cls = class_of(group, group.b(t)).members
        parts.append(Superclass(superclass_label(group, "C3", t), "C3", t, cls))
    for t in range(1, group.q):
        cls = class_of(group, group.c(t)).members
        parts.append(Superclass(superclass_label(group, "C4", t), "C4", t, cls))
    parts.sort(key=lambda p: (_KIND_ORDER[p.kind], p.param))
    total = sum(p.size for p in parts)
    union = frozenset().union(*(p.members for p in parts))
    if total != group.order or len(union) != group.order:
        raise AssertionError("superclasses do not partition U")
    return SuperclassPartition(parts)


def superclass_index_array(group: ReeSylow, partition: SuperclassPartition) -> np.ndarray:
    """Position in ``partition.parts`` of every element, in enumeration order."""
    out = np.empty(group.order, dtype=np.int64)
    for k, part in enumerate(partition.parts):
        out[[group.index(x) for x in part.members]] = k
    return out
