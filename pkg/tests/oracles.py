"""Brute-force reference implementations used to cross-check the library.

Everything here works from the raw structure constants with plain loops or
full enumeration, never through the basis-pair reductions under test.
"""

import itertools

import numpy as np


def all_vectors(m, n):
    return np.array(list(itertools.product(range(m), repeat=n)), dtype=np.int64).reshape(-1, n)


def mul_many(c, m, X, Y):
    """Row-wise products of coordinate stacks (broadcasting)."""
    return np.einsum("...i,...j,ijk->...k", X, Y, c) % m


def mul_one(c, m, x, y):
    n = len(x)
    out = [0] * n
    for i in range(n):
        if x[i]:
            for j in range(n):
                if y[j]:
                    for k in range(n):
                        out[k] += x[i] * y[j] * int(c[i][j][k])
    return [v % m for v in out]


def associative_brute(c, m):
    n = c.shape[0]
    E = np.eye(n, dtype=np.int64)
    for i, j, k in itertools.product(range(n), repeat=3):
        if mul_one(c, m, mul_one(c, m, E[i], E[j]), E[k]) != mul_one(c, m, E[i], mul_one(c, m, E[j], E[k])):
            return False
    return True


def commutative_brute(c, m):
    X = all_vectors(m, c.shape[0])
    P = mul_many(c, m, X[:, None, :], X[None, :, :])
    Q = mul_many(c, m, X[None, :, :], X[:, None, :])
    return bool((P == Q).all())


def leibniz_brute(c, m, D):
    """D(xy) = D(x)y + xD(y) for every pair of ring elements."""
    X = all_vectors(m, c.shape[0])
    DX = (X @ D.T) % m
    xy = mul_many(c, m, X[:, None, :], X[None, :, :])
    lhs = (xy @ D.T) % m
    rhs = (mul_many(c, m, DX[:, None, :], X[None, :, :])
           + mul_many(c, m, X[:, None, :], DX[None, :, :])) % m
    return bool((lhs == rhs).all())


def homogeneous_elements(m, degrees):
    """Every homogeneous element, by filtering the whole ring."""
    n = len(degrees)
    out = []
    for v in all_vectors(m, n):
        if len({degrees[i] for i in range(n) if v[i]}) <= 1:
            out.append(v)
    return np.array(out, dtype=np.int64).reshape(-1, n)


def is_homogeneous_vec(v, degrees):
    return len({degrees[i] for i in range(len(v)) if v[i]}) <= 1


def homogeneous_map_brute(m, degrees, D):
    """D(r) homogeneous for every homogeneous r."""
    return all(is_homogeneous_vec((D @ r) % m, degrees) for r in homogeneous_elements(m, degrees))


def annihilates_all(c, m, a, b, X):
    axb = mul_many(c, m, mul_many(c, m, a[None, :], X), b[None, :])
    return not axb.any()


def gr_prime_brute(c, m, degrees):
    """aRb = 0 over the whole middle, for every nonzero homogeneous a, b."""
    X = all_vectors(m, c.shape[0])
    H = [h for h in homogeneous_elements(m, degrees) if h.any()]
    for a in H:
        aX = mul_many(c, m, a[None, :], X)
        for b in H:
            if not mul_many(c, m, aX, b[None, :]).any():
                return False
    return True


def central_brute(c, m, z):
    X = all_vectors(m, c.shape[0])
    return bool((mul_many(c, m, z[None, :], X) == mul_many(c, m, X, z[None, :])).all())
