"""Deciders for gr-primeness and primeness, with annihilating-pair witnesses.

The middle argument of ``a R b`` is reduced to basis vectors (``a x b`` is
linear in ``x``); the outer arguments are always enumerated in full.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import resolve_budget
from .errors import BudgetExceeded
from .grading import Grading, homogeneous_array, require_certified
from .ring import Element, Ring


@dataclass(frozen=True)
class PrimenessReport:
    gr_prime: bool | None = None
    prime: bool | None = None
    gr_witness: tuple[Element, Element] | None = None
    prime_witness: tuple[Element, Element] | None = None

    def __post_init__(self):
        if self.prime and self.gr_prime is False:
            raise AssertionError("internal error: prime ring reported not gr-prime")


def _sandwich_tensor(ring: Ring) -> np.ndarray:
    """``T[i, j, k, l]``: coefficient of e_l in ``e_i e_k e_j``."""
    c = ring.c
    return np.einsum("ikm,mjl->ijkl", c, c) % ring.modulus


def first_annihilating_pair(ring: Ring, left: np.ndarray, right: np.ndarray,
                            budget: int | None = None) -> tuple[int, int] | None:
    """First ``(s, t)`` in lexicographic order with ``left[s] R right[t] = 0``.

    Both arguments are stacks of coordinate rows; zero rows are skipped.
    """
    budget = resolve_budget(budget)
    pairs = left.shape[0] * right.shape[0]
    if pairs > budget:
        raise BudgetExceeded(f"{pairs} element pairs exceed budget {budget}")
    m, n = ring.modulus, ring.dim
    T = _sandwich_tensor(ring).reshape(n, n, n * n)
    right_nz = right.any(axis=1)
    for s, a in enumerate(left):
        if not a.any():
            continue
        # b -> (a e_k b)_{k,l}
        M = np.einsum("i,ijx->jx", a, T) % m
        vals = (right @ M) % m
        hit = np.flatnonzero(~vals.any(axis=1) & right_nz)
        if hit.size:
            return s, int(hit[0])
    return None


def is_gr_prime(ring: Ring, grading: Grading, budget: int | None = None) -> PrimenessReport:
    require_certified(ring, grading)
    budget = resolve_budget(budget)
    H = homogeneous_array(ring, grading, budget)
    hit = first_annihilating_pair(ring, H, H, budget)
    if hit is None:
        return PrimenessReport(gr_prime=True)
    a, b = (Element(ring, H[t]) for t in hit)
    return PrimenessReport(gr_prime=False, gr_witness=(a, b))


def is_prime(ring: Ring, budget: int | None = None) -> PrimenessReport:
    budget = resolve_budget(budget)
    size = ring.modulus ** ring.dim
    if size * size > budget:
        raise BudgetExceeded(f"{size}^2 element pairs exceed budget {budget}")
    A = ring.all_elements()
    hit = first_annihilating_pair(ring, A, A, budget)
    if hit is None:
        return PrimenessReport(prime=True)
    a, b = (Element(ring, A[t]) for t in hit)
    return PrimenessReport(prime=False, prime_witness=(a, b))


def primeness_report(ring: Ring, grading: Grading, budget: int | None = None) -> PrimenessReport:
    gr = is_gr_prime(ring, grading, budget)
    pr = is_prime(ring, budget)
    return PrimenessReport(gr.gr_prime, pr.prime, gr.gr_witness, pr.prime_witness)


def annihilates(a: Element, b: Element) -> bool:
    """``a R b == {0}``, checked on basis middles."""
    ring = a.ring
    return all((a * e * b).is_zero() for e in ring.basis_elements())


def annihilates_brute(a: Element, b: Element) -> bool:
    """Same predicate quantified over every middle element."""
    ring = a.ring
    return all((a * Element(ring, x) * b).is_zero() for x in ring.all_elements())


def one_sided_annihilator_witness(ring: Ring, grading: Grading,
                                  budget: int | None = None) -> tuple[Element, Element] | None:
    """Nonzero ``(a, b)`` with ``aRb = 0`` where only one of them is homogeneous.

    ``a`` ranges over all of ``R`` with ``b`` homogeneous, then symmetrically.
    """
    budget = resolve_budget(budget)
    H = homogeneous_array(ring, grading, budget)
    if ring.modulus ** ring.dim * H.shape[0] > budget:
        raise BudgetExceeded("all-element x homogeneous pairs exceed budget")
    A = ring.all_elements()
    for left, right in ((A, H), (H, A)):
        hit = first_annihilating_pair(ring, left, right, budget)
        if hit is not None:
            return Element(ring, left[hit[0]]), Element(ring, right[hit[1]])
    return None
