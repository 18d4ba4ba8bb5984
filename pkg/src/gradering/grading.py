"""Basis-aligned gradings by finitely generated abelian groups."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

import numpy as np

from .config import resolve_budget
from .errors import BudgetExceeded, SpecError, UncertifiedGradingError
from .modlinalg import coefficient_grid
from .ring import Element, Ring, Verdict

Degree = tuple[int, ...]


class _ZeroDegree:
    """Tag returned by :func:`is_homogeneous` for the zero element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "zero"


ZERO = _ZeroDegree()


@dataclass(frozen=True)
class DegreeGroup:
    """``Z^free_rank (+) Z/t_1 (+) ... (+) Z/t_s``; degrees are int tuples."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free_rank < 0:
            raise SpecError("free_rank must be >= 0", "grading.free_rank")
        for t, m in enumerate(self.torsion):
            if m < 2:
                raise SpecError("torsion orders must be >= 2", f"grading.torsion[{t}]")

    @property
    def rank(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def identity(self) -> Degree:
        return (0,) * self.rank

    def normalize(self, g: Sequence[int]) -> Degree:
        g = tuple(int(x) for x in g)
        if len(g) != self.rank:
            raise SpecError(f"degree {g} has length {len(g)}, group rank is {self.rank}")
        return g[:self.free_rank] + tuple(
            x % m for x, m in zip(g[self.free_rank:], self.torsion))

    def add(self, g: Degree, h: Degree) -> Degree:
        return self.normalize(tuple(a + b for a, b in zip(g, h)))

    def neg(self, g: Degree) -> Degree:
        return self.normalize(tuple(-a for a in g))

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z{m}" for m in self.torsion]
        return " x ".join(parts) if parts else "1"


TRIVIAL_GROUP = DegreeGroup()


@dataclass(frozen=True)
class Grading:
    """Degree of every basis vector. ``certificate`` is set by certification."""

    group: DegreeGroup
    degrees: tuple[Degree, ...]
    label: str = field(default="", compare=False)
    certificate: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "degrees",
                           tuple(self.group.normalize(d) for d in self.degrees))

    @classmethod
    def trivial(cls, ring: Ring, group: DegreeGroup = TRIVIAL_GROUP) -> "Grading":
        return cls(group, (group.identity,) * ring.dim, label="trivial")

    def components(self) -> dict[Degree, tuple[int, ...]]:
        """Degree -> basis indices, in order of first appearance."""
        out: dict[Degree, list[int]] = {}
        for i, d in enumerate(self.degrees):
            out.setdefault(d, []).append(i)
        return {d: tuple(ix) for d, ix in out.items()}

    def fingerprint(self, ring: Ring) -> str:
        h = hashlib.sha256(ring.fingerprint.encode())
        h.update(repr((self.group, self.degrees)).encode())
        return h.hexdigest()

    def is_certified_for(self, ring: Ring) -> bool:
        return self.certificate is not None and self.certificate == self.fingerprint(ring)


def validate_grading(ring: Ring, grading: Grading) -> Verdict:
    """``R_g R_h ⊆ R_{g+h}`` checked on basis pairs.

    On failure the witness is ``(i, j, offending_degree)``: the basis product
    ``e_i e_j`` has a nonzero coefficient on a basis vector of that degree,
    which differs from ``deg(e_i) + deg(e_j)``.
    """
    if len(grading.degrees) != ring.dim:
        return Verdict(False, None, f"grading has {len(grading.degrees)} degrees for dim {ring.dim}")
    g = grading.group
    for i in range(ring.dim):
        for j in range(ring.dim):
            target = g.add(grading.degrees[i], grading.degrees[j])
            for k in np.flatnonzero(ring.c[i, j]):
                if grading.degrees[k] != target:
                    bad = grading.degrees[k]
                    return Verdict(False, (i, j, bad),
                                   f"{ring.basis_names[i]}*{ring.basis_names[j]} has a "
                                   f"component of degree {bad}, expected {target}")
    return Verdict(True)


def certify_grading(ring: Ring, grading: Grading) -> Grading:
    verdict = validate_grading(ring, grading)
    if not verdict:
        raise UncertifiedGradingError(f"grading rejected: {verdict.reason}")
    return replace(grading, certificate=grading.fingerprint(ring))


def require_certified(ring: Ring, grading: Grading) -> None:
    if not grading.is_certified_for(ring):
        raise UncertifiedGradingError(
            "grading is not certified for this ring; run certify_grading first")


def decompose(x: Element, grading: Grading) -> dict[Degree, Element]:
    """Homogeneous components ``{g: x_g}`` with zero parts omitted."""
    out = {}
    for d, idx in grading.components().items():
        v = np.zeros(x.ring.dim, dtype=np.int64)
        v[list(idx)] = x.coords[list(idx)]
        if v.any():
            out[d] = Element(x.ring, v)
    return out


def is_homogeneous(x: Element, grading: Grading):
    """Degree of ``x``, :data:`ZERO` for ``x == 0``, ``None`` if mixed."""
    support = {grading.degrees[i] for i in np.flatnonzero(x.coords)}
    if not support:
        return ZERO
    if len(support) == 1:
        return support.pop()
    return None


def homogeneous_count(ring: Ring, grading: Grading) -> int:
    comps = grading.components()
    return sum(ring.modulus ** len(ix) for ix in comps.values()) - (len(comps) - 1)


def homogeneous_array(ring: Ring, grading: Grading, budget: int | None = None) -> np.ndarray:
    """Every homogeneous element as a coordinate row; 0 first, no duplicates."""
    budget = resolve_budget(budget)
    total = homogeneous_count(ring, grading)
    if total > budget:
        raise BudgetExceeded(f"{total} homogeneous elements exceed budget {budget}")
    rows = [np.zeros((1, ring.dim), dtype=np.int64)]
    for idx in grading.components().values():
        grid = coefficient_grid(ring.modulus, len(idx))[1:]
        block = np.zeros((grid.shape[0], ring.dim), dtype=np.int64)
        block[:, list(idx)] = grid
        rows.append(block)
    return np.concatenate(rows)


def enumerate_homogeneous(ring: Ring, grading: Grading,
                          budget: int | None = None) -> Iterator[Element]:
    for row in homogeneous_array(ring, grading, budget):
        yield Element(ring, row)


def direct_product(r: Ring, s: Ring) -> Ring:
    n1, n2 = r.dim, s.dim
    names = list(r.basis_names) + list(s.basis_names)
    if len(set(names)) != len(names):
        names = [f"L.{x}" for x in r.basis_names] + [f"R.{x}" for x in s.basis_names]
    if r.modulus != s.modulus:
        raise SpecError("factors must share a modulus")
    c = np.zeros((n1 + n2,) * 3, dtype=np.int64)
    c[:n1, :n1, :n1] = r.c
    c[n1:, n1:, n1:] = s.c
    label = f"{r.label or 'R'} x {s.label or 'S'}"
    return Ring(r.modulus, names, c, label=label)


def product_ring(r: Ring, gr: Grading, s: Ring, gs: Grading) -> tuple[Ring, Grading]:
    """Direct product graded by ``G1 x G2``.

    An ``R``-basis vector of degree ``g`` sits in ``(g, e)`` and an
    ``S``-basis vector of degree ``h`` in ``(e, h)``; free coordinates of both
    groups come first, then torsion.
    """
    for ring, gd, side in ((r, gr, "left"), (s, gs, "right")):
        verdict = validate_grading(ring, gd)
        if not verdict:
            raise UncertifiedGradingError(f"{side} factor grading invalid: {verdict.reason}")
    g1, g2 = gr.group, gs.group
    group = DegreeGroup(g1.free_rank + g2.free_rank, g1.torsion + g2.torsion)

    def embed(d1: Degree, d2: Degree) -> Degree:
        return (d1[:g1.free_rank] + d2[:g2.free_rank]
                + d1[g1.free_rank:] + d2[g2.free_rank:])

    degrees = ([embed(d, g2.identity) for d in gr.degrees]
               + [embed(g1.identity, d) for d in gs.degrees])
    ring = direct_product(r, s)
    grading = Grading(group, tuple(degrees), label=f"{gr.label or 'G1'} x {gs.label or 'G2'}")
    return ring, certify_grading(ring, grading)
