"""Additive maps as matrices and the derivation classes they fall into.

A map is stored as an ``n x n`` matrix whose column ``j`` holds the image of
basis vector ``e_j``. Every additive endomorphism of ``(Z/m)^n`` is of this
form, so nothing is lost by working with matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .config import resolve_budget
from .errors import BudgetExceeded, MixedRingError
from .grading import Grading, require_certified
from .modlinalg import nullspace, require_prime, row_basis, rref, solve, span_points
from .ring import Element, Ring, Verdict


class AdditiveMap:
    __slots__ = ("ring", "matrix")

    def __init__(self, ring: Ring, matrix):
        mat = np.array(matrix, dtype=np.int64).reshape(ring.dim, ring.dim) % ring.modulus
        mat.setflags(write=False)
        self.ring = ring
        self.matrix = mat

    @classmethod
    def from_images(cls, ring: Ring, images) -> "AdditiveMap":
        cols = [im.coords if isinstance(im, Element) else np.asarray(im) for im in images]
        return cls(ring, np.array(cols, dtype=np.int64).T)

    @classmethod
    def from_function(cls, ring: Ring, f: Callable[[Element], Element]) -> "AdditiveMap":
        return cls.from_images(ring, [f(e) for e in ring.basis_elements()])

    @classmethod
    def zero(cls, ring: Ring) -> "AdditiveMap":
        return cls(ring, np.zeros((ring.dim, ring.dim), dtype=np.int64))

    @classmethod
    def identity(cls, ring: Ring) -> "AdditiveMap":
        return cls(ring, np.eye(ring.dim, dtype=np.int64))

    def images(self) -> list[list[int]]:
        return [[int(v) for v in col] for col in self.matrix.T]

    def __call__(self, x: Element) -> Element:
        if x.ring != self.ring:
            raise MixedRingError("map applied to an element of another ring")
        return Element(self.ring, self.matrix @ x.coords)

    def _check(self, other: "AdditiveMap") -> None:
        if other.ring != self.ring:
            raise MixedRingError("maps act on different rings")

    def __add__(self, other: "AdditiveMap") -> "AdditiveMap":
        self._check(other)
        return AdditiveMap(self.ring, self.matrix + other.matrix)

    def __sub__(self, other: "AdditiveMap") -> "AdditiveMap":
        self._check(other)
        return AdditiveMap(self.ring, self.matrix - other.matrix)

    def __neg__(self) -> "AdditiveMap":
        return AdditiveMap(self.ring, -self.matrix)

    def __rmul__(self, k: int) -> "AdditiveMap":
        return AdditiveMap(self.ring, int(k) * self.matrix)

    def compose(self, other: "AdditiveMap") -> "AdditiveMap":
        """``self ∘ other``."""
        self._check(other)
        return AdditiveMap(self.ring, self.matrix @ other.matrix)

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def __eq__(self, other) -> bool:
        return (isinstance(other, AdditiveMap) and self.ring == other.ring
                and bool(np.array_equal(self.matrix, other.matrix)))

    def __hash__(self) -> int:
        return hash((self.ring, self.matrix.tobytes()))

    def __repr__(self) -> str:
        return f"AdditiveMap(images={self.images()})"


# --------------------------------------------------------------------------
# Linear systems on vec(D), where vec(D)[a * n + b] = D[a, b]
# --------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _system_blocks(ring: Ring) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Three (n^3 x n^2) blocks, rows indexed by (i, j, l).

    ``first @ vec(D)``  = D(e_i e_j)
    ``second @ vec(D)`` = -D(e_i) e_j
    ``third @ vec(D)``  = -e_i D(e_j)
    Their sum applied to D is the Leibniz defect on basis pairs.
    """
    n, m, c = ring.dim, ring.modulus, ring.c
    eye = np.eye(n, dtype=np.int64)
    first = np.einsum("ijb,la->ijlab", c, eye)
    second = -np.einsum("ajl,bi->ijlab", c, eye)
    third = -np.einsum("ial,bj->ijlab", c, eye)
    blocks = tuple((t.reshape(n ** 3, n * n) % m) for t in (first, second, third))
    for b in blocks:
        b.setflags(write=False)
    return blocks


def leibniz_defects(D: AdditiveMap) -> np.ndarray:
    """``D(e_i e_j) - D(e_i)e_j - e_i D(e_j)`` as an ``(n, n, n)`` array."""
    ring = D.ring
    a, b, c = _system_blocks(ring)
    v = D.matrix.reshape(-1)
    return ((a + b + c) @ v % ring.modulus).reshape((ring.dim,) * 3)


def relation_defects(F: AdditiveMap, d: AdditiveMap) -> np.ndarray:
    """``F(e_i e_j) - F(e_i)e_j - e_i d(e_j)`` as an ``(n, n, n)`` array."""
    F._check(d)
    ring = F.ring
    a, b, c = _system_blocks(ring)
    v = (a + b) @ F.matrix.reshape(-1) + c @ d.matrix.reshape(-1)
    return (v % ring.modulus).reshape((ring.dim,) * 3)


def is_derivation(D: AdditiveMap, ring: Ring | None = None) -> Verdict:
    """Leibniz rule on basis pairs; the defect is biadditive so this suffices."""
    if ring is not None and ring != D.ring:
        raise MixedRingError("map belongs to another ring")
    bad = np.argwhere(leibniz_defects(D).any(axis=2))
    if bad.size:
        i, j = (int(t) for t in bad[0])
        return Verdict(False, (i, j), f"Leibniz fails on (e{i}, e{j})")
    return Verdict(True)


def is_generalized_pair(F: AdditiveMap, d: AdditiveMap) -> Verdict:
    """``F(xy) = F(x)y + x d(y)`` on basis pairs."""
    bad = np.argwhere(relation_defects(F, d).any(axis=2))
    if bad.size:
        i, j = (int(t) for t in bad[0])
        return Verdict(False, (i, j), f"F(xy) != F(x)y + x d(y) on (e{i}, e{j})")
    return Verdict(True)


# --------------------------------------------------------------------------
# Homogeneity
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _DegreeLayout:
    comp_of: np.ndarray      # basis index -> component id
    n_comp: int
    sel: np.ndarray          # (n_comp, n) indicator, rows = components


def _layout(grading: Grading) -> _DegreeLayout:
    comps = list(grading.components())
    ids = {d: t for t, d in enumerate(comps)}
    comp_of = np.array([ids[d] for d in grading.degrees], dtype=np.int64)
    sel = np.zeros((len(comps), len(comp_of)), dtype=np.int64)
    sel[comp_of, np.arange(len(comp_of))] = 1
    return _DegreeLayout(comp_of, len(comps), sel)


def _active_targets(matrices: np.ndarray, layout: _DegreeLayout) -> np.ndarray:
    """``out[..., h, g]`` is True when some column of component g hits degree h."""
    nz = (matrices != 0).astype(np.int64)
    return (layout.sel @ nz @ layout.sel.T) > 0


def homogeneous_mask(matrices: np.ndarray, grading: Grading) -> np.ndarray:
    """Which of a stack of ``(.., n, n)`` matrices are homogeneous maps."""
    act = _active_targets(np.asarray(matrices), _layout(grading))
    return (act.sum(axis=-2) <= 1).all(axis=-1)


def is_homogeneous_map(D: AdditiveMap, grading: Grading) -> Verdict:
    """Each component must land in a single component (zero images allowed).

    On failure the witness is ``(r, D(r))`` with ``r`` homogeneous and ``D(r)``
    not homogeneous.
    """
    require_certified(D.ring, grading)
    ring = D.ring
    layout = _layout(grading)
    act = _active_targets(D.matrix, layout)
    for g in range(layout.n_comp):
        if act[:, g].sum() <= 1:
            continue
        cols = np.flatnonzero(layout.comp_of == g)
        seen: dict[int, int] = {}
        for j in cols:
            hit = set(layout.comp_of[np.flatnonzero(D.matrix[:, j])].tolist())
            if len(hit) > 1:
                r = ring.basis(int(j))
                return Verdict(False, (r, D(r)), f"D(e{j}) is not homogeneous")
            for h in hit:
                if seen and h not in seen:
                    j0 = next(iter(seen.values()))
                    r = ring.basis(int(j0)) + ring.basis(int(j))
                    return Verdict(False, (r, D(r)),
                                   f"D(e{j0}) and D(e{j}) have different degrees")
                seen.setdefault(h, int(j))
    return Verdict(True)


def is_homogeneous_derivation(D: AdditiveMap, ring: Ring, grading: Grading) -> Verdict:
    leib = is_derivation(D, ring)
    if not leib:
        return Verdict(False, leib.witness, "Leibniz: " + leib.reason)
    hom = is_homogeneous_map(D, grading)
    if not hom:
        return Verdict(False, hom.witness, "homogeneity: " + hom.reason)
    return Verdict(True)


# --------------------------------------------------------------------------
# Associated derivations
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AffineMapSpace:
    """``{particular + sum t_i basis_i}`` inside the space of ``n x n`` matrices."""

    ring: Ring
    particular: np.ndarray            # (n, n)
    basis: np.ndarray                 # (k, n, n)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def size(self) -> int:
        return self.ring.modulus ** self.dim

    def representative(self) -> AdditiveMap:
        return AdditiveMap(self.ring, self.particular)

    def points(self, budget: int | None = None) -> np.ndarray:
        budget = resolve_budget(budget)
        if self.size > budget:
            raise BudgetExceeded(f"affine space has {self.size} points, budget {budget}")
        n = self.ring.dim
        pts = span_points(self.basis.reshape(self.dim, n * n), self.ring.modulus,
                          self.particular.reshape(-1))
        return pts.reshape(-1, n, n)

    def contains(self, D: AdditiveMap) -> bool:
        m = self.ring.modulus
        diff = (D.matrix - self.particular).reshape(1, -1) % m
        if not diff.any():
            return True
        if self.dim == 0:
            return False
        b = self.basis.reshape(self.dim, self.ring.dim ** 2)
        return len(rref(np.concatenate([b, diff]), m)[1]) == self.dim


def associated_derivation_space(F: AdditiveMap) -> AffineMapSpace | None:
    """All derivations ``d`` with ``F(xy) = F(x)y + x d(y)``, or ``None``."""
    ring = F.ring
    require_prime(ring.modulus, "associated-derivation solving")
    n, m = ring.dim, ring.modulus
    a, b, c = _system_blocks(ring)
    rhs = -((a + b) @ F.matrix.reshape(-1)) % m
    system = np.concatenate([c, (a + b + c) % m])
    target = np.concatenate([rhs, np.zeros(n ** 3, dtype=np.int64)])
    particular, kernel = solve(system, target, m)
    if particular is None:
        return None
    # prefer F itself as the representative when F is its own witness
    if is_generalized_pair(F, F) and is_derivation(F):
        particular = F.matrix.reshape(-1)
    return AffineMapSpace(ring, particular.reshape(n, n), kernel.reshape(-1, n, n))


def find_associated_derivation(F: AdditiveMap, ring: Ring | None = None) -> AdditiveMap | None:
    if ring is not None and ring != F.ring:
        raise MixedRingError("map belongs to another ring")
    space = associated_derivation_space(F)
    return None if space is None else space.representative()


def _search_homogeneous(space: AffineMapSpace, grading: Grading,
                        node_budget: int) -> tuple[str, np.ndarray | None]:
    """Degree-shift case split over an affine space of matrices.

    Returns ``("found", matrix)``, ``("none", None)`` or ``("undecided", None)``.
    Each branch fixes the target component of one source component, which is a
    linear constraint, so every branch stays an affine space.
    """
    ring = space.ring
    n, m = ring.dim, ring.modulus
    layout = _layout(grading)
    nodes = 0

    def rec(x0: np.ndarray, basis: np.ndarray) -> tuple[str, np.ndarray | None]:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            return "undecided", None
        stack = np.concatenate([x0.reshape(1, n, n), basis.reshape(-1, n, n)])
        act = _active_targets(stack, layout).any(axis=0)
        open_comps = np.flatnonzero(act.sum(axis=0) > 1)
        if open_comps.size == 0:
            return "found", x0.reshape(n, n)
        g = int(open_comps[0])
        cols = np.flatnonzero(layout.comp_of == g)
        undecided = False
        for h in np.flatnonzero(act[:, g]):
            rows = np.flatnonzero(layout.comp_of != h)
            idx = (rows[:, None] * n + cols[None, :]).reshape(-1)
            if basis.shape[0]:
                t0, kern = solve(basis[:, idx].T, -x0[idx], m)
            else:
                t0 = None if x0[idx].any() else np.zeros(0, dtype=np.int64)
                kern = np.zeros((0, 0), dtype=np.int64)
            if t0 is None:
                continue
            nx0 = (x0 + t0 @ basis) % m if basis.shape[0] else x0
            nbasis = (kern @ basis) % m if kern.shape[0] else np.zeros((0, n * n), np.int64)
            status, found = rec(nx0, nbasis)
            if status == "found":
                return status, found
            undecided = undecided or status == "undecided"
        return ("undecided" if undecided else "none"), None

    return rec(space.particular.reshape(-1) % m, space.basis.reshape(space.dim, n * n) % m)


def find_homogeneous_point(space: AffineMapSpace, grading: Grading,
                           budget: int | None = None,
                           method: str = "auto") -> tuple[str, AdditiveMap | None]:
    """Find a homogeneous map in ``space``.

    ``method`` is ``"enumerate"`` (exhaustive over all points),
    ``"split"`` (degree-shift case split) or ``"auto"`` (enumerate when the space
    fits the budget). Returns ``(status, map)`` with status ``found``, ``none``
    or ``undecided``.
    """
    budget = resolve_budget(budget)
    if method == "auto":
        method = "enumerate" if space.size <= budget else "split"
    if method == "enumerate":
        pts = space.points(budget)
        mask = homogeneous_mask(pts, grading)
        hit = np.flatnonzero(mask)
        if hit.size:
            return "found", AdditiveMap(space.ring, pts[hit[0]])
        return "none", None
    status, mat = _search_homogeneous(space, grading, budget)
    return status, None if mat is None else AdditiveMap(space.ring, mat)


@dataclass(frozen=True)
class Classification:
    """Where a map sits in the four-class inclusion diagram.

    ``generalized_homogeneous_derivation`` is ``None`` when the witness search
    ran out of budget.
    """

    derivation: bool
    homogeneous_map: bool
    homogeneous_derivation: bool
    generalized_derivation: bool
    generalized_homogeneous_derivation: bool | None
    generalized_witness: AdditiveMap | None = field(default=None, compare=False)
    homogeneous_witness: AdditiveMap | None = field(default=None, compare=False)
    solution_space_dim: int | None = None

    def flags(self) -> dict[str, bool | None]:
        return {
            "derivation": self.derivation,
            "homogeneous_map": self.homogeneous_map,
            "homogeneous_derivation": self.homogeneous_derivation,
            "generalized_derivation": self.generalized_derivation,
            "generalized_homogeneous_derivation": self.generalized_homogeneous_derivation,
        }

    def check_lattice(self) -> None:
        f = self
        if f.homogeneous_derivation:
            assert f.derivation and f.homogeneous_map
            assert f.generalized_homogeneous_derivation
        if f.generalized_homogeneous_derivation:
            assert f.generalized_derivation and f.homogeneous_map
        if f.derivation:
            assert f.generalized_derivation


def classify_map(F: AdditiveMap, ring: Ring, grading: Grading,
                 budget: int | None = None) -> Classification:
    if ring != F.ring:
        raise MixedRingError("map belongs to another ring")
    require_certified(ring, grading)
    der = bool(is_derivation(F))
    hom = bool(is_homogeneous_map(F, grading))
    space = associated_derivation_space(F)
    gen = space is not None
    gen_witness = None if space is None else space.representative()
    gh: bool | None = False
    gh_witness = None
    if der and hom:
        gh, gh_witness = True, F
    elif gen and hom:
        status, gh_witness = find_homogeneous_point(space, grading, budget)
        gh = {"found": True, "none": False, "undecided": None}[status]
    result = Classification(der, hom, der and hom, gen, gh, gen_witness, gh_witness,
                            None if space is None else space.dim)
    result.check_lattice()
    return result


# --------------------------------------------------------------------------
# Constructors
# --------------------------------------------------------------------------

def inner_derivation(r: Element) -> AdditiveMap:
    """``y -> [r, y]``."""
    ring = r.ring
    # column j = r e_j - e_j r
    L = ring.left_mult_matrix(r.coords)   # x @ L = r x
    R = ring.right_mult_matrix(r.coords)  # x @ R = x r
    return AdditiveMap(ring, (L - R).T)


def lie_bracket(D1: AdditiveMap, D2: AdditiveMap) -> AdditiveMap:
    return D1.compose(D2) - D2.compose(D1)


def sum_map(D1: AdditiveMap, D2: AdditiveMap) -> AdditiveMap:
    return D1 + D2


def scalar_multiple(r: Element, F: AdditiveMap) -> AdditiveMap:
    """``x -> r F(x)``."""
    if r.ring != F.ring:
        raise MixedRingError("scalar from another ring")
    L = F.ring.left_mult_matrix(r.coords)
    return AdditiveMap(F.ring, L.T @ F.matrix)


def pair_map(D1: AdditiveMap, D2: AdditiveMap, product: Ring) -> AdditiveMap:
    """Block-diagonal ``(D1, D2)`` on a product ring built by ``product_ring``."""
    n1, n2 = D1.ring.dim, D2.ring.dim
    if product.dim != n1 + n2:
        raise MixedRingError("product ring dimension does not match the factors")
    mat = np.zeros((n1 + n2, n1 + n2), dtype=np.int64)
    mat[:n1, :n1] = D1.matrix
    mat[n1:, n1:] = D2.matrix
    return AdditiveMap(product, mat)


def split_map(D: AdditiveMap, left: Ring, right: Ring) -> tuple[AdditiveMap, AdditiveMap] | None:
    n1 = left.dim
    if D.ring.dim != n1 + right.dim:
        raise MixedRingError("map does not act on left x right")
    mat = D.matrix
    if mat[:n1, n1:].any() or mat[n1:, :n1].any():
        return None
    return AdditiveMap(left, mat[:n1, :n1]), AdditiveMap(right, mat[n1:, n1:])


# --------------------------------------------------------------------------
# Enumeration of qualifying (F, d) pairs
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PairFamily:
    """Stacked ``(F, d)`` pairs with ``F`` homogeneous, ``d`` a homogeneous
    derivation and ``F(xy) = F(x)y + x d(y)``.

    ``policy`` is ``"complete"`` when every such pair was enumerated and
    ``"restricted"`` when only inner homogeneous derivations (with ``d = F``)
    were used.
    """

    ring: Ring
    F: np.ndarray   # (N, n, n)
    d: np.ndarray   # (N, n, n)
    policy: str

    def __len__(self) -> int:
        return int(self.F.shape[0])

    def pair(self, t: int) -> tuple[AdditiveMap, AdditiveMap]:
        return AdditiveMap(self.ring, self.F[t]), AdditiveMap(self.ring, self.d[t])


def joint_pair_space(ring: Ring) -> tuple[int, np.ndarray]:
    """Kernel of the joint (F, d) system: rows are vec(F) || vec(d)."""
    require_prime(ring.modulus, "pair enumeration")
    n, m = ring.dim, ring.modulus
    a, b, c = _system_blocks(ring)
    zero = np.zeros_like(a)
    system = np.concatenate([
        np.concatenate([(a + b) % m, c], axis=1),
        np.concatenate([zero, (a + b + c) % m], axis=1),
    ])
    return n, nullspace(system, m)


def qualifying_pairs(ring: Ring, grading: Grading, budget: int | None = None) -> PairFamily:
    require_certified(ring, grading)
    budget = resolve_budget(budget)
    n, kernel = joint_pair_space(ring)
    m = ring.modulus
    if m ** kernel.shape[0] <= budget:
        pts = span_points(kernel, m)
        F = pts[:, :n * n].reshape(-1, n, n)
        d = pts[:, n * n:].reshape(-1, n, n)
        keep = homogeneous_mask(F, grading) & homogeneous_mask(d, grading)
        return PairFamily(ring, F[keep], d[keep], "complete")
    inner = np.stack([inner_derivation(e).matrix for e in ring.basis_elements()])
    span = row_basis(inner.reshape(n, -1), m, n * n)
    if m ** span.shape[0] > budget:
        raise BudgetExceeded(f"inner-derivation span has {m ** span.shape[0]} points")
    F = span_points(span, m).reshape(-1, n, n)
    F = F[homogeneous_mask(F, grading)]
    return PairFamily(ring, F, F.copy(), "restricted")


def homogeneous_derivations(ring: Ring, grading: Grading, budget: int | None = None) -> np.ndarray:
    """Every homogeneous derivation as a stacked ``(N, n, n)`` array."""
    require_certified(ring, grading)
    require_prime(ring.modulus, "derivation enumeration")
    budget = resolve_budget(budget)
    a, b, c = _system_blocks(ring)
    kernel = nullspace((a + b + c) % ring.modulus, ring.modulus)
    if ring.modulus ** kernel.shape[0] > budget:
        raise BudgetExceeded(f"derivation space has {ring.modulus ** kernel.shape[0]} points")
    pts = span_points(kernel, ring.modulus).reshape(-1, ring.dim, ring.dim)
    return pts[homogeneous_mask(pts, grading)]


def find_nonhomogeneous_sum(ring: Ring, grading: Grading) -> tuple[AdditiveMap, AdditiveMap] | None:
    """Two inner homogeneous derivations whose sum is not a homogeneous map."""
    inner = [inner_derivation(e) for e in ring.basis_elements()]
    inner = [d for d in inner if not d.is_zero()]
    for s, d1 in enumerate(inner):
        for d2 in inner[s + 1:]:
            if not is_homogeneous_map(d1 + d2, grading):
                return d1, d2
    return None
