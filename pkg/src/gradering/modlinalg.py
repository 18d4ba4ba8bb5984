"""Exact linear algebra over Z/pZ.

Every routine works on ``numpy`` int64 arrays whose entries are reduced into
``[0, p)``. Moduli here are small, so products of two residues never overflow.
"""

from __future__ import annotations

import numpy as np

from .errors import UnsupportedModulusError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int, what: str = "this operation") -> None:
    if not is_prime(p):
        raise UnsupportedModulusError(
            f"{what} needs a prime modulus (got {p}); composite moduli are "
            "supported on evaluation paths only")


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` mod ``p``.

    Returns the nonzero rows and the list of pivot columns.
    """
    a = np.array(a, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(a, p: int) -> int:
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : a @ x = 0 (mod p)}``."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    r, pivots = rref(a, p) if a.shape[0] else (np.zeros((0, n), np.int64), [])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = (-r[i, f]) % p
    return basis


def solve(a, b, p: int) -> tuple[np.ndarray | None, np.ndarray]:
    """Solve ``a @ x = b`` mod ``p``.

    Returns ``(particular, kernel_basis)``; ``particular`` is ``None`` when the
    system is inconsistent. Free variables are set to zero in the particular
    solution.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    n = a.shape[1]
    kernel = nullspace(a, p)
    if a.shape[0] == 0:
        return np.zeros(n, dtype=np.int64), kernel
    aug = np.concatenate([a, b[:, None]], axis=1)
    r, pivots = rref(aug, p)
    if pivots and pivots[-1] == n:
        return None, kernel
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n]
    return x, kernel


def row_basis(vectors, p: int, width: int) -> np.ndarray:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    v = np.asarray(vectors, dtype=np.int64).reshape(-1, width)
    if v.shape[0] == 0:
        return np.zeros((0, width), dtype=np.int64)
    return rref(v, p)[0]


def in_span(basis: np.ndarray, v, p: int) -> bool:
    """Membership of ``v`` in the row span of an echelon ``basis``."""
    v = np.asarray(v, dtype=np.int64).reshape(1, -1) % p
    if not v.any():
        return True
    if basis.shape[0] == 0:
        return False
    return rank(np.concatenate([basis, v]), p) == basis.shape[0]


def same_span(a: np.ndarray, b: np.ndarray, p: int, width: int) -> bool:
    ra, rb = row_basis(a, p, width), row_basis(b, p, width)
    return ra.shape == rb.shape and bool(np.array_equal(ra, rb))


def coefficient_grid(p: int, k: int) -> np.ndarray:
    """All vectors of ``(Z/p)^k`` in lexicographic order, shape ``(p**k, k)``."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(p**k, dtype=np.int64)[:, None]
    powers = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (idx // powers) % p


def span_points(basis: np.ndarray, p: int, offset=None) -> np.ndarray:
    """Every point ``offset + sum t_i basis_i``, in lexicographic order of t."""
    basis = np.asarray(basis, dtype=np.int64)
    k, n = basis.shape
    pts = coefficient_grid(p, k) @ basis % p
    if offset is not None:
        pts = (pts + np.asarray(offset, dtype=np.int64)) % p
    return pts.reshape(-1, n)
