"""Small-instance builders and the instance families used by the sweeps."""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

import numpy as np

from ..grading import DegreeGroup, Grading, certify_grading, validate_grading
from ..ring import Ring, validate_ring

FAMILIES = ("matrix-pattern", "group-algebra", "free-small")

Position = tuple[int, int]


def is_closed_pattern(positions: Sequence[Position]) -> bool:
    s = set(positions)
    return all((i, l) in s for (i, j) in s for (k, l) in s if j == k)


def matrix_pattern_ring(n: int, positions: Sequence[Position], p: int, label: str = "") -> Ring:
    """Span of the matrix units ``E_ij`` at ``positions`` (1-based), sorted."""
    pos = sorted(set(positions))
    if not is_closed_pattern(pos):
        raise ValueError(f"pattern {pos} is not closed under multiplication")
    index = {ij: t for t, ij in enumerate(pos)}
    d = len(pos)
    c = np.zeros((d, d, d), dtype=np.int64)
    for (i, j), a in index.items():
        for (k, l), b in index.items():
            if j == k:
                c[a, b, index[(i, l)]] = 1
    names = [f"E{i}{j}" for i, j in pos]
    return Ring(p, names, c, label=label or f"M{n}[{','.join(names)}](Z{p})")


def matrix_element_coords(positions: Sequence[Position], matrix) -> list[int]:
    """Coordinates of a matrix (list of rows) in a pattern ring's basis."""
    pos = sorted(set(positions))
    mat = [list(r) for r in matrix]
    for i, row in enumerate(mat, start=1):
        for j, v in enumerate(row, start=1):
            if v and (i, j) not in pos:
                raise ValueError(f"entry ({i},{j}) outside the pattern")
    return [mat[i - 1][j - 1] for i, j in pos]


def elementary_degrees(positions: Sequence[Position], shift, group: DegreeGroup) -> tuple:
    """``deg E_ij = shift(j) - shift(i)``; always a valid grading."""
    pos = sorted(set(positions))
    return tuple(group.normalize((shift(j) - shift(i),)) for i, j in pos)


def truncated_poly_ring(p: int, k: int, degree_step=(1,),
                        group: DegreeGroup | None = None) -> tuple[Ring, Grading]:
    """``Z_p[X]/(X^k)`` with ``deg X^a = a * degree_step``."""
    if k < 1:
        raise ValueError("truncation k must be >= 1")
    group = group or DegreeGroup(len(degree_step))
    c = np.zeros((k, k, k), dtype=np.int64)
    for a in range(k):
        for b in range(k - a):
            c[a, b, a + b] = 1
    names = ["1", "X"] + [f"X^{a}" for a in range(2, k)]
    ring = Ring(p, names[:k], c, label=f"Z{p}[X]/(X^{k})")
    if k == 1:
        return ring, certify_grading(ring, Grading.trivial(ring))
    degrees = tuple(group.normalize(tuple(a * s for s in degree_step)) for a in range(k))
    grading = Grading(group, degrees, label="X-degree")
    return ring, certify_grading(ring, grading)


def formal_derivative(ring_dim_offset: int, k: int, dim: int, scale: int = 1) -> np.ndarray:
    """Matrix of ``P -> scale * dP/dX`` on a truncated-polynomial block."""
    mat = np.zeros((dim, dim), dtype=np.int64)
    for a in range(1, k):
        mat[ring_dim_offset + a - 1, ring_dim_offset + a] = scale * a
    return mat


def group_elements(orders: Sequence[int]) -> list[tuple[int, ...]]:
    return list(itertools.product(*[range(o) for o in orders]))


def group_algebra(p: int, orders: Sequence[int]) -> tuple[Ring, Grading]:
    """``Z_p[A]`` for ``A = Z_{o1} x ...``, graded by ``A``."""
    orders = tuple(orders)
    elems = group_elements(orders)
    index = {g: t for t, g in enumerate(elems)}
    d = len(elems)
    c = np.zeros((d, d, d), dtype=np.int64)
    for g in elems:
        for h in elems:
            s = tuple((a + b) % o for a, b, o in zip(g, h, orders))
            c[index[g], index[h], index[s]] = 1
    names = ["g(" + ",".join(map(str, g)) + ")" for g in elems]
    gname = "x".join(f"Z{o}" for o in orders) or "1"
    ring = Ring(p, names, c, label=f"Z{p}[{gname}]")
    group = DegreeGroup(0, orders)
    grading = Grading(group, tuple(elems), label=f"{gname}-grading")
    return ring, certify_grading(ring, grading)


ABELIAN_GROUPS = {1: [()], 2: [(2,)], 3: [(3,)], 4: [(4,), (2, 2)]}


def closed_patterns(n: int) -> list[tuple[Position, ...]]:
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    out = []
    for size in range(1, len(cells) + 1):
        for combo in itertools.combinations(cells, size):
            if is_closed_pattern(combo):
                out.append(combo)
    return out


def _pattern_gradings(n: int, pos, ring: Ring) -> list[Grading]:
    z = DegreeGroup(1)
    z2 = DegreeGroup(0, (2,))
    return [
        Grading.trivial(ring),
        Grading(z, elementary_degrees(pos, lambda i: i, z), label="Z-elementary"),
        Grading(z2, elementary_degrees(pos, lambda i: i, z2), label="Z2-checkerboard"),
    ]


def _free_small(dim: int, p: int) -> Iterator[Ring]:
    cells = dim ** 3
    for bits in itertools.product(range(p), repeat=cells):
        c = np.array(bits, dtype=np.int64).reshape(dim, dim, dim)
        ring = Ring(p, [f"e{i}" for i in range(dim)], c,
                    label=f"free{dim}(Z{p})#{int(''.join(map(str, bits)), p)}")
        if validate_ring(ring):
            yield ring


def _free_gradings(ring: Ring) -> list[Grading]:
    z2 = DegreeGroup(0, (2,))
    out = [Grading.trivial(ring)]
    for degs in itertools.product((0, 1), repeat=ring.dim):
        if any(degs):
            out.append(Grading(z2, tuple((d,) for d in degs), label="Z2:" + "".join(map(str, degs))))
    return out


def enumerate_instances(family: str, params: dict | None = None) -> Iterator[tuple[Ring, Grading]]:
    """Deterministic stream of validated ``(ring, certified grading)`` pairs.

    ``params`` keys: ``primes`` (list), ``max_n`` (matrix size, <= 3),
    ``max_order`` (group order, <= 4), ``max_dim`` (free-small, <= 2; also an
    upper bound on ring dimension for every family when given).
    """
    params = dict(params or {})
    primes = list(params.get("primes", [2, 3]))
    max_dim = params.get("max_dim")
    seen = set()

    def emit(ring: Ring, grading: Grading):
        if max_dim is not None and ring.dim > max_dim:
            return None
        if not validate_ring(ring) or not validate_grading(ring, grading):
            return None
        key = (ring.modulus, ring.c.tobytes(), ring.basis_names, grading.group, grading.degrees)
        if key in seen:
            return None
        seen.add(key)
        return ring, certify_grading(ring, grading)

    if family == "matrix-pattern":
        max_n = int(params.get("max_n", 2))
        if max_n > 3:
            raise ValueError("matrix patterns are limited to n <= 3")
        for p in primes:
            for n in range(1, max_n + 1):
                for pos in closed_patterns(n):
                    ring = matrix_pattern_ring(n, pos, p)
                    for gr in _pattern_gradings(n, pos, ring):
                        out = emit(ring, gr)
                        if out:
                            yield out
    elif family == "group-algebra":
        max_order = int(params.get("max_order", 4))
        if max_order > 4:
            raise ValueError("group algebras are limited to |A| <= 4")
        for p in primes:
            for order in range(1, max_order + 1):
                for orders in ABELIAN_GROUPS[order]:
                    out = emit(*group_algebra(p, orders))
                    if out:
                        yield out
    elif family == "free-small":
        top = int(params.get("max_dim", 2))
        if top > 2:
            raise ValueError("free-small tables are limited to dim <= 2")
        for p in params.get("primes", [2]):
            if p != 2:
                continue
            for dim in range(1, top + 1):
                for ring in _free_small(dim, p):
                    for gr in _free_gradings(ring):
                        out = emit(ring, gr)
                        if out:
                            yield out
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def instance_id(ring: Ring, grading: Grading) -> str:
    return f"{ring.label}/{grading.label or 'grading'}"
