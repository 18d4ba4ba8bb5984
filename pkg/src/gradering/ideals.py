"""One- and two-sided ideals as canonical spanning sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import resolve_budget
from .errors import BudgetExceeded, MixedRingError
from .grading import Grading, decompose, require_certified
from .modlinalg import in_span, require_prime, row_basis, span_points
from .ring import Element, Ring, Verdict

SIDES = ("left", "right", "two-sided")


@dataclass(frozen=True, eq=False)
class IdealHandle:
    ring: Ring
    side: str
    basis: np.ndarray  # reduced echelon rows

    @property
    def rank(self) -> int:
        return int(self.basis.shape[0])

    def is_zero(self) -> bool:
        return self.rank == 0

    def spanning_set(self) -> list[Element]:
        return [Element(self.ring, row) for row in self.basis]

    def __eq__(self, other) -> bool:
        return (isinstance(other, IdealHandle) and self.ring == other.ring
                and self.side == other.side
                and np.array_equal(self.basis, other.basis))

    def __hash__(self) -> int:
        return hash((self.ring, self.side, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"<{self.side} ideal of rank {self.rank} in {self.ring!r}>"

    def elements(self, budget: int | None = None) -> np.ndarray:
        """Every element of the ideal as coordinate rows."""
        budget = resolve_budget(budget)
        size = self.ring.modulus ** self.rank
        if size > budget:
            raise BudgetExceeded(f"ideal has {size} elements, budget {budget}")
        return span_points(self.basis, self.ring.modulus)


def _closure_step(ring: Ring, basis: np.ndarray, side: str) -> np.ndarray:
    m, n = ring.modulus, ring.dim
    parts = [basis]
    if basis.shape[0]:
        if side in ("left", "two-sided"):
            # e_j * x for all j
            parts.append(np.einsum("xi,jik->xjk", basis, ring.c).reshape(-1, n) % m)
        if side in ("right", "two-sided"):
            parts.append(np.einsum("xi,ijk->xjk", basis, ring.c).reshape(-1, n) % m)
    return row_basis(np.concatenate(parts), m, n)


def ideal_generate(gens: Sequence[Element], side: str, ring: Ring) -> IdealHandle:
    """Least ideal of the given side containing ``gens`` (closure to fixpoint)."""
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    require_prime(ring.modulus, "ideal generation")
    for g in gens:
        if g.ring != ring:
            raise MixedRingError("generator from another ring")
    rows = np.array([g.coords for g in gens], dtype=np.int64).reshape(-1, ring.dim)
    basis = row_basis(rows, ring.modulus, ring.dim)
    for _ in range(ring.dim + 1):
        nxt = _closure_step(ring, basis, side)
        if nxt.shape == basis.shape:
            return IdealHandle(ring, side, nxt)
        basis = nxt
    raise AssertionError("ideal closure failed to stabilise within dim rounds")


def ideal_from_basis(rows, side: str, ring: Ring) -> IdealHandle:
    """Wrap a span that is already an ideal (checked)."""
    basis = row_basis(rows, ring.modulus, ring.dim)
    ideal = IdealHandle(ring, side, basis)
    if _closure_step(ring, basis, side).shape != basis.shape:
        raise ValueError("span is not closed under the declared multiplications")
    return ideal


def whole_ring(ring: Ring, side: str = "two-sided") -> IdealHandle:
    return IdealHandle(ring, side, np.eye(ring.dim, dtype=np.int64))


def membership(x: Element, ideal: IdealHandle) -> bool:
    require_prime(ideal.ring.modulus, "ideal membership")
    if x.ring != ideal.ring:
        raise MixedRingError("element from another ring")
    return in_span(ideal.basis, x.coords, ideal.ring.modulus)


def is_graded_ideal(ideal: IdealHandle, grading: Grading) -> Verdict:
    """Every homogeneous component of every spanning element lies in the ideal."""
    require_certified(ideal.ring, grading)
    for x in ideal.spanning_set():
        for deg, part in decompose(x, grading).items():
            if not membership(part, ideal):
                return Verdict(False, (x, deg), f"component of degree {deg} of {x} not in ideal")
    return Verdict(True)
