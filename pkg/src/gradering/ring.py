"""Finite-rank rings over Z/mZ presented by structure constants."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import MixedRingError, SpecError
from .modlinalg import nullspace, require_prime, row_basis


@dataclass(frozen=True)
class Verdict:
    """Outcome of a yes/no check, with a witness when it fails."""

    passed: bool
    witness: object = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class RingSpec:
    """Raw input to :func:`make_ring`.

    ``constants`` is a list of ``(i, j, k, c)`` meaning ``e_i e_j`` has
    coefficient ``c`` on ``e_k``.
    """

    modulus: int
    basis_names: Sequence[str]
    constants: Sequence[tuple[int, int, int, int]]
    label: str = ""


class Ring:
    """Associative (after validation) algebra of rank ``dim`` over Z/mZ.

    ``c[i, j, k]`` is the coefficient of ``e_k`` in ``e_i * e_j``. Instances
    are immutable; equality ignores ``label``.
    """

    def __init__(self, modulus: int, basis_names: Sequence[str], constants: np.ndarray,
                 label: str = ""):
        c = np.array(constants, dtype=np.int64)
        c.setflags(write=False)
        self.modulus = int(modulus)
        self.basis_names = tuple(basis_names)
        self.c = c
        self.label = label
        self._key = (self.modulus, self.basis_names, c.tobytes())
        # [z, e_l] coordinates as a linear map of z: comm[i, l, k]
        comm = (c - c.transpose(1, 0, 2)) % self.modulus
        self._comm_flat = comm.reshape(self.dim, -1)
        self._comm_flat.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        name = self.label or "Ring"
        return f"<{name}: dim={self.dim}, modulus={self.modulus}>"

    @property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.modulus, self.basis_names)).encode())
        h.update(self.c.tobytes())
        return h.hexdigest()

    # -- element construction -------------------------------------------
    def element(self, coords: Iterable[int]) -> "Element":
        return Element(self, coords)

    def zero(self) -> "Element":
        return Element(self, [0] * self.dim)

    def basis(self, i: int | str) -> "Element":
        if isinstance(i, str):
            i = self.basis_names.index(i)
        v = [0] * self.dim
        v[i] = 1
        return Element(self, v)

    def basis_elements(self) -> list["Element"]:
        return [self.basis(i) for i in range(self.dim)]

    def from_dict(self, terms: dict[str, int]) -> "Element":
        v = [0] * self.dim
        for name, coeff in terms.items():
            v[self.basis_names.index(name)] += coeff
        return Element(self, v)

    # -- vectorised arithmetic on raw coordinate arrays --------------------
    def mul_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Products of coordinate arrays; leading axes broadcast."""
        return np.einsum("...i,...j,ijk->...k", x, y, self.c) % self.modulus

    def left_mult_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix ``L`` with ``x @ L == a * x``."""
        return np.einsum("i,ijk->jk", a, self.c) % self.modulus

    def right_mult_matrix(self, b: np.ndarray) -> np.ndarray:
        """Matrix ``M`` with ``x @ M == x * b``."""
        return np.einsum("j,ijk->ik", b, self.c) % self.modulus

    def central_mask(self, z: np.ndarray) -> np.ndarray:
        """Boolean mask over leading axes: which coordinate rows are central."""
        z = np.asarray(z, dtype=np.int64)
        prod = (z.reshape(-1, self.dim) @ self._comm_flat) % self.modulus
        return ~prod.any(axis=1).reshape(z.shape[:-1])

    def all_elements(self) -> np.ndarray:
        from .modlinalg import coefficient_grid
        return coefficient_grid(self.modulus, self.dim)


class Element:
    """Coordinate vector over an ambient :class:`Ring`."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: Ring, coords: Iterable[int]):
        v = np.array(list(coords) if not isinstance(coords, np.ndarray) else coords,
                     dtype=np.int64).reshape(-1)
        if v.shape[0] != ring.dim:
            raise SpecError(f"element has {v.shape[0]} coordinates, ring has dim {ring.dim}")
        v = v % ring.modulus
        v.setflags(write=False)
        self.ring = ring
        self.coords = v

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.ring is not self.ring and other.ring != self.ring:
            raise MixedRingError("operands belong to different rings")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.ring, self.coords + other.coords)

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.ring, self.coords - other.coords)

    def __neg__(self) -> "Element":
        return Element(self.ring, -self.coords)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return Element(self.ring, self.coords * int(other))
        self._check(other)
        return Element(self.ring, self.ring.mul_vec(self.coords, other.coords))

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return Element(self.ring, self.coords * int(other))
        return NotImplemented

    def __eq__(self, other) -> bool:
        return (isinstance(other, Element) and self.ring == other.ring
                and bool(np.array_equal(self.coords, other.coords)))

    def __hash__(self) -> int:
        return hash((self.ring, self.coords.tobytes()))

    def is_zero(self) -> bool:
        return not self.coords.any()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        terms = [f"{int(c)}*{n}" for c, n in zip(self.coords, self.ring.basis_names) if c]
        return " + ".join(terms) if terms else "0"

    def to_list(self) -> list[int]:
        return [int(c) for c in self.coords]


def make_ring(spec: RingSpec) -> Ring:
    """Build a :class:`Ring` from a spec. Associativity is *not* checked."""
    m = spec.modulus
    if not isinstance(m, int) or m < 2:
        raise SpecError(f"modulus must be an integer >= 2, got {m!r}", "modulus")
    names = list(spec.basis_names)
    if not names:
        raise SpecError("ring needs at least one basis element", "basis_names")
    if len(set(names)) != len(names):
        raise SpecError("duplicate basis names", "basis_names")
    n = len(names)
    c = np.zeros((n, n, n), dtype=np.int64)
    seen = set()
    for t, entry in enumerate(spec.constants):
        path = f"structure_constants[{t}]"
        if len(entry) != 4:
            raise SpecError("expected (i, j, k, c)", path)
        i, j, k, coeff = entry
        for idx in (i, j, k):
            if not isinstance(idx, (int, np.integer)) or not 0 <= idx < n:
                raise SpecError(f"basis index {idx!r} out of range 0..{n - 1}", path)
        if not 0 <= coeff < m:
            raise SpecError(f"coefficient {coeff} not in [0, {m})", path)
        if (i, j, k) in seen:
            raise SpecError(f"duplicate triple {(i, j, k)}", path)
        seen.add((i, j, k))
        c[i, j, k] = coeff
    return Ring(m, names, c, label=spec.label)


def ring_spec(ring: Ring) -> RingSpec:
    idx = np.argwhere(ring.c)
    triples = [(int(i), int(j), int(k), int(ring.c[i, j, k])) for i, j, k in idx]
    return RingSpec(ring.modulus, ring.basis_names, triples, ring.label)


def validate_ring(ring: Ring) -> Verdict:
    """Associativity on all basis triples; witness is the first failing triple."""
    c, m = ring.c, ring.modulus
    # (e_i e_j) e_k  vs  e_i (e_j e_k)
    left = np.einsum("ijl,lkr->ijkr", c, c) % m
    right = np.einsum("jkl,ilr->ijkr", c, c) % m
    bad = np.argwhere((left != right).any(axis=3))
    if bad.size:
        i, j, k = (int(t) for t in bad[0])
        return Verdict(False, (i, j, k), f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})")
    return Verdict(True)


def add(x: Element, y: Element) -> Element:
    return x + y


def mul(x: Element, y: Element) -> Element:
    return x * y


def commutator(x: Element, y: Element) -> Element:
    return x * y - y * x


def jordan(x: Element, y: Element) -> Element:
    return x * y + y * x


def is_central(x: Element) -> bool:
    return bool(x.ring.central_mask(x.coords))


def is_commutative(ring: Ring) -> Verdict:
    """Basis-pair commutativity (enough by bilinearity)."""
    bad = np.argwhere((ring.c != ring.c.transpose(1, 0, 2)).any(axis=2))
    if bad.size:
        i, j = (int(t) for t in bad[0])
        return Verdict(False, (ring.basis(i), ring.basis(j)),
                       f"{ring.basis_names[i]} and {ring.basis_names[j]} do not commute")
    return Verdict(True)


def centralizer(subset: Sequence[Element], ring: Ring) -> list[Element]:
    """Spanning set (echelon basis) of ``{z : [z, s] = 0 for all s}``."""
    require_prime(ring.modulus, "centralizer")
    m, n = ring.modulus, ring.dim
    if not subset:
        return ring.basis_elements()
    cols = []
    for s in subset:
        if s.ring != ring:
            raise MixedRingError("subset element from another ring")
        # z -> [z, s] as a matrix acting on row vectors
        cols.append((ring.right_mult_matrix(s.coords) - ring.left_mult_matrix(s.coords)) % m)
    system = np.concatenate(cols, axis=1)  # z @ system == 0
    kernel = nullspace(system.T, m)
    return [Element(ring, v) for v in row_basis(kernel, m, n)]


def center(ring: Ring) -> list[Element]:
    return centralizer(ring.basis_elements(), ring)
