"""Hypothesis/conclusion checks for the commutativity theorems, the supporting
proposition and lemma, and evidence searches for the open problems.

Theorem checks never assert a theorem's conclusion on its own. They evaluate
every hypothesis and the conclusion separately and report the implication.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .config import resolve_budget
from .errors import BudgetExceeded, PreconditionError
from .grading import Grading, homogeneous_array, require_certified
from .ideals import IdealHandle, ideal_generate, is_graded_ideal, whole_ring
from .maps import (AdditiveMap, PairFamily, homogeneous_derivations, is_generalized_pair,
                   is_homogeneous_derivation, is_homogeneous_map, qualifying_pairs)
from .modlinalg import same_span
from .primeness import is_gr_prime, one_sided_annihilator_witness
from .ring import Element, Ring, Verdict, center, centralizer, is_commutative

# tag -> (form, number of maps, fixed sign or None when the sign is a parameter)
CONDITION_TAGS: dict[str, tuple[str, int, int | None]] = {
    "F_xy_minus_xy_central": ("F_xy", 1, -1),
    "F_xy_plus_xy_central": ("F_xy", 1, 1),
    "F1x_F2y_minus_xy_central": ("prod", 2, -1),
    "F1x_F2y_plus_xy_central": ("prod", 2, 1),
    "bracket_F1x_x_central": ("bracket_x", 1, 0),
    "bracket_F1x_F2y_pm_xy_central": ("bracket", 2, None),
    "F1x_F2y_pm_bracket_xy_central": ("prod_bracket", 2, None),
    "F1x_F2y_pm_jordan_central": ("prod_jordan", 2, None),
}

_SIGNS = {"plus": 1, "minus": -1, "+": 1, "-": -1, 1: 1, -1: -1}


@dataclass(frozen=True)
class ConditionKind:
    tag: str
    sign: int = 0

    def __post_init__(self):
        if self.tag not in CONDITION_TAGS:
            raise ValueError(f"unknown condition tag {self.tag!r}")
        fixed = CONDITION_TAGS[self.tag][2]
        if fixed is not None and self.sign not in (0, fixed):
            raise ValueError(f"{self.tag} has fixed sign {fixed}")
        if fixed is None and self.sign not in (1, -1):
            raise ValueError(f"{self.tag} needs a sign (plus or minus)")
        if fixed is not None:
            object.__setattr__(self, "sign", fixed)

    @classmethod
    def of(cls, tag: str, sign=None) -> "ConditionKind":
        return cls(tag, 0 if sign is None else _SIGNS[sign])

    @property
    def form(self) -> str:
        return CONDITION_TAGS[self.tag][0]

    @property
    def arity(self) -> int:
        return CONDITION_TAGS[self.tag][1]

    @property
    def sign_name(self) -> str | None:
        return {1: "plus", -1: "minus"}.get(self.sign) if self.form != "bracket_x" else None

    def flipped(self) -> "ConditionKind":
        """Same condition with the opposite sign."""
        if self.form == "bracket_x":
            return self
        if CONDITION_TAGS[self.tag][2] is None:
            return ConditionKind(self.tag, -self.sign)
        other = self.tag.replace("_minus_", "_tmp_").replace("_plus_", "_minus_").replace("_tmp_", "_plus_")
        return ConditionKind(other, -self.sign)

    def __str__(self) -> str:
        if CONDITION_TAGS[self.tag][2] is None:
            return f"{self.tag}[{self.sign_name}]"
        return self.tag


def condition_for(theorem: str, sign) -> ConditionKind:
    s = _SIGNS[sign]
    if theorem == "4.1":
        return ConditionKind("F_xy_plus_xy_central" if s > 0 else "F_xy_minus_xy_central")
    if theorem == "4.2":
        return ConditionKind("F1x_F2y_plus_xy_central" if s > 0 else "F1x_F2y_minus_xy_central")
    raise ValueError(f"no displayed condition for {theorem!r}")


# --------------------------------------------------------------------------
# Condition evaluation
# --------------------------------------------------------------------------

class _Basis:
    """Precomputed products for a spanning set ``B`` of an ideal."""

    def __init__(self, ring: Ring, rows: np.ndarray):
        self.ring = ring
        self.B = np.asarray(rows, dtype=np.int64)
        r = self.B.shape[0]
        m = ring.modulus
        self.r = r
        self.P = ring.mul_vec(self.B[:, None, :], self.B[None, :, :])  # P[a, b] = B_a B_b
        # u @ W[b] == [u, B_b]
        self.W = np.stack([(ring.right_mult_matrix(b) - ring.left_mult_matrix(b)) % m
                           for b in self.B]) if r else np.zeros((0, ring.dim, ring.dim), np.int64)

    def pairs(self, symmetric: bool) -> list[tuple[int, int]]:
        if symmetric:
            return [(a, b) for a in range(self.r) for b in range(a, self.r)]
        return [(a, b) for a in range(self.r) for b in range(self.r)]


def _progressive(ring: Ring, n_maps: int, pairs, values: Callable) -> np.ndarray:
    """Index of the first failing pair per map (-1 when every pair passes).

    ``values(alive, a, b)`` returns the condition's element for the maps in
    ``alive``; maps drop out at their first non-central value.
    """
    fail_at = np.full(n_maps, -1, dtype=np.int64)
    alive = np.arange(n_maps)
    for t, (a, b) in enumerate(pairs):
        if not alive.size:
            break
        ok = ring.central_mask(values(alive, a, b) % ring.modulus)
        fail_at[alive[~ok]] = t
        alive = alive[ok]
    return fail_at


def _one_map_fail(kind: ConditionKind, Fs: np.ndarray, basis: _Basis) -> tuple[np.ndarray, list]:
    ring, s = basis.ring, kind.sign
    if kind.form == "F_xy":
        def values(alive, a, b):
            p = basis.P[a, b]
            return Fs[alive] @ p + s * p
        pairs = basis.pairs(False)
    elif kind.form == "bracket_x":
        U = np.einsum("Nij,aj->Nai", Fs, basis.B) if basis.r else None

        def values(alive, a, b):
            if a == b:
                return U[alive, a] @ basis.W[a]
            return U[alive, a] @ basis.W[b] + U[alive, b] @ basis.W[a]
        pairs = basis.pairs(True)
    else:
        raise ValueError(f"{kind.tag} takes two maps")
    return _progressive(ring, Fs.shape[0], pairs, values), pairs


def _two_map_fail(kind: ConditionKind, F1: np.ndarray, F2s: np.ndarray,
                  basis: _Basis) -> tuple[np.ndarray, list]:
    ring, s, m = basis.ring, kind.sign, basis.ring.modulus
    U = basis.B @ F1.T                               # F1(B_a)
    V = np.einsum("Nij,bj->Nbi", F2s, basis.B)       # F2(B_b)
    if kind.form == "bracket":
        A = [(ring.left_mult_matrix(u) - ring.right_mult_matrix(u)) % m for u in U]
    else:
        A = [ring.left_mult_matrix(u) for u in U]
    P, form = basis.P, kind.form

    def const(a, b):
        if form == "prod_bracket":
            return s * (P[a, b] - P[b, a])
        if form == "prod_jordan":
            return s * (P[a, b] + P[b, a])
        return s * P[a, b]

    def values(alive, a, b):
        return V[alive, b] @ A[a] + const(a, b)

    pairs = basis.pairs(False)
    return _progressive(ring, F2s.shape[0], pairs, values), pairs


def check_condition(kind: ConditionKind, maps: Sequence[AdditiveMap], ideal: IdealHandle,
                    ring: Ring, grading: Grading) -> Verdict:
    """Does the tagged element lie in Z(R) for every ``(x, y)`` in ``I x I``?

    Bilinear conditions are checked on pairs of spanning vectors of ``I``; the
    quadratic ``[F(x), x]`` is checked on spanning vectors and their pairwise
    sums (polarization). The witness is a failing ``(x, y)`` from ``I``.
    """
    require_certified(ring, grading)
    if len(maps) != kind.arity:
        raise ValueError(f"{kind.tag} takes {kind.arity} map(s), got {len(maps)}")
    if ideal.ring != ring:
        raise ValueError("ideal belongs to another ring")
    basis = _Basis(ring, ideal.basis)
    if kind.arity == 1:
        fail, pairs = _one_map_fail(kind, maps[0].matrix[None], basis)
    else:
        fail, pairs = _two_map_fail(kind, maps[0].matrix, maps[1].matrix[None], basis)
    if fail[0] < 0:
        return Verdict(True)
    a, b = pairs[int(fail[0])]
    x, y = Element(ring, basis.B[a]), Element(ring, basis.B[b])
    if kind.form == "bracket_x":
        x = x if a == b else x + y
        y = x
    return Verdict(False, (x, y), f"{kind} fails at a pair of ideal elements")


def condition_value(kind: ConditionKind, maps: Sequence[AdditiveMap], x: Element, y: Element) -> Element:
    """The element that must be central, computed with plain ring arithmetic."""
    s = kind.sign
    F1 = maps[0]
    form = kind.form
    if form == "F_xy":
        return F1(x * y) + s * (x * y)
    if form == "bracket_x":
        return F1(x) * x - x * F1(x)
    u, v = F1(x), maps[1](y)
    if form == "prod":
        return u * v + s * (x * y)
    if form == "bracket":
        return u * v - v * u + s * (x * y)
    if form == "prod_bracket":
        return u * v + s * (x * y - y * x)
    return u * v + s * (x * y + y * x)


def check_condition_brute(kind: ConditionKind, maps: Sequence[AdditiveMap], ideal: IdealHandle,
                          ring: Ring, budget: int | None = None) -> Verdict:
    """Oracle: quantify over every element pair of ``I`` directly."""
    budget = resolve_budget(budget)
    X = ideal.elements(budget)
    if X.shape[0] ** 2 > budget:
        raise BudgetExceeded(f"{X.shape[0]}^2 ideal pairs exceed budget {budget}")
    elems = [Element(ring, row) for row in X]
    for x in elems:
        for y in ([x] if kind.form == "bracket_x" else elems):
            if not ring.central_mask(condition_value(kind, maps, x, y).coords):
                return Verdict(False, (x, y), f"{kind} fails")
    return Verdict(True)


# --------------------------------------------------------------------------
# Verdicts
# --------------------------------------------------------------------------

_HYP_PHRASES = {
    "gr_prime": "not gr-prime",
    "ideal_nonzero": "ideal is zero",
    "ideal_two_sided": "ideal is one-sided",
    "ideal_graded": "ideal not graded",
    "generalized_homogeneous_pair": "(F, d) not a generalized homogeneous pair",
    "generalized_homogeneous_pair_1": "(F1, d1) not a generalized homogeneous pair",
    "generalized_homogeneous_pair_2": "(F2, d2) not a generalized homogeneous pair",
    "d_nonzero": "d = 0",
    "d1_nonzero": "d1 = 0",
    "d2_nonzero": "d2 = 0",
    "condition": "condition fails on I x I",
}


@dataclass
class TheoremVerdict:
    theorem: str
    hypotheses: dict[str, bool]
    conclusion_holds: bool
    details: dict = field(default_factory=dict)

    @property
    def hypotheses_satisfied(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def consistent_with_paper(self) -> bool:
        return (not self.hypotheses_satisfied) or self.conclusion_holds

    def summary(self) -> str:
        failed = [_HYP_PHRASES.get(k, k) for k, v in self.hypotheses.items() if not v]
        hyp = f"hypotheses unsatisfied ({', '.join(failed)})" if failed else "hypotheses satisfied"
        concl = "conclusion holds" if self.conclusion_holds else "conclusion fails"
        cons = "consistent" if self.consistent_with_paper else "INCONSISTENT"
        return f"{hyp}; {concl}; {cons}"

    def payload(self) -> dict:
        return {"theorem": self.theorem, "hypotheses": dict(self.hypotheses),
                "hypotheses_satisfied": self.hypotheses_satisfied,
                "conclusion_holds": self.conclusion_holds,
                "consistent_with_paper": self.consistent_with_paper,
                "summary": self.summary(), **self.details}


def _pair_ok(F: AdditiveMap, d: AdditiveMap, ring: Ring, grading: Grading) -> bool:
    return bool(is_generalized_pair(F, d) and is_homogeneous_map(F, grading)
                and is_homogeneous_derivation(d, ring, grading))


def _ideal_hypotheses(ideal: IdealHandle, grading: Grading) -> dict[str, bool]:
    return {"ideal_nonzero": not ideal.is_zero(),
            "ideal_two_sided": ideal.side == "two-sided",
            "ideal_graded": bool(is_graded_ideal(ideal, grading))}


def verify_theorem_4_1(ring: Ring, grading: Grading, ideal: IdealHandle, F: AdditiveMap,
                       d: AdditiveMap, sign, budget: int | None = None) -> TheoremVerdict:
    require_certified(ring, grading)
    kind = condition_for("4.1", sign)
    hyp = {"gr_prime": bool(is_gr_prime(ring, grading, budget).gr_prime)}
    hyp.update(_ideal_hypotheses(ideal, grading))
    hyp["generalized_homogeneous_pair"] = _pair_ok(F, d, ring, grading)
    hyp["d_nonzero"] = not d.is_zero()
    hyp["condition"] = bool(check_condition(kind, [F], ideal, ring, grading))
    return TheoremVerdict("4.1", hyp, bool(is_commutative(ring)), {"condition": str(kind)})


def verify_theorem_4_2(ring: Ring, grading: Grading, ideal: IdealHandle, F1: AdditiveMap,
                       d1: AdditiveMap, F2: AdditiveMap, d2: AdditiveMap, sign,
                       budget: int | None = None) -> TheoremVerdict:
    require_certified(ring, grading)
    kind = condition_for("4.2", sign)
    hyp = {"gr_prime": bool(is_gr_prime(ring, grading, budget).gr_prime)}
    hyp.update(_ideal_hypotheses(ideal, grading))
    hyp["generalized_homogeneous_pair_1"] = _pair_ok(F1, d1, ring, grading)
    hyp["generalized_homogeneous_pair_2"] = _pair_ok(F2, d2, ring, grading)
    hyp["d1_nonzero"] = not d1.is_zero()
    hyp["d2_nonzero"] = not d2.is_zero()
    hyp["condition"] = bool(check_condition(kind, [F1, F2], ideal, ring, grading))
    return TheoremVerdict("4.2", hyp, bool(is_commutative(ring)), {"condition": str(kind)})


def check_prop_F_nonzero(ring: Ring, grading: Grading, F: AdditiveMap, d: AdditiveMap,
                         budget: int | None = None) -> Verdict:
    """``d != 0`` forces ``F != 0`` on gr-prime rings.

    Outside the hypotheses the verdict passes and its reason says so.
    """
    require_certified(ring, grading)
    if not _pair_ok(F, d, ring, grading):
        raise PreconditionError("(F, d) is not a generalized homogeneous pair")
    violation = (not d.is_zero()) and F.is_zero()
    if not is_gr_prime(ring, grading, budget).gr_prime:
        reason = "outside hypotheses (not gr-prime)"
        if violation:
            reason += ": F = 0 with d != 0"
        return Verdict(True, (F, d) if violation else None, reason)
    if violation:
        return Verdict(False, (F, d), "F = 0 although d != 0 on a gr-prime ring")
    return Verdict(True)


def check_prop_restriction(ring: Ring, grading: Grading, ideal: IdealHandle, d: AdditiveMap,
                           budget: int | None = None) -> Verdict:
    """A nonzero homogeneous derivation does not vanish on a nonzero graded ideal."""
    require_certified(ring, grading)
    if ideal.is_zero():
        raise PreconditionError("the ideal must be nonzero")
    if not is_graded_ideal(ideal, grading):
        raise PreconditionError("the ideal must be graded")
    if d.is_zero() or not is_homogeneous_derivation(d, ring, grading):
        raise PreconditionError("d must be a nonzero homogeneous derivation")
    if not is_gr_prime(ring, grading, budget).gr_prime:
        raise PreconditionError("the ring must be gr-prime")
    images = (ideal.basis @ d.matrix.T) % ring.modulus
    if images.any():
        return Verdict(True)
    return Verdict(False, (ideal, d), "d vanishes on the ideal")


def ideal_family(ring: Ring, grading: Grading, sides: Sequence[str] = ("two-sided",),
                 budget: int | None = None) -> list[IdealHandle]:
    """Ideals generated by one homogeneous element, plus the whole ring.

    Generators are normalized (leading coefficient 1), so scalar multiples are
    not repeated; the list is deduplicated and deterministic.
    """
    H = homogeneous_array(ring, grading, budget)
    nz = H[H.any(axis=1)]
    lead = nz[np.arange(nz.shape[0]), (nz != 0).argmax(axis=1)]
    gens = nz[lead == 1]
    out, seen = [], set()
    for side in sides:
        for I in [ideal_generate([Element(ring, g)], side, ring) for g in gens] + [whole_ring(ring, side)]:
            key = (side, I.basis.tobytes(), I.basis.shape)
            if key not in seen:
                seen.add(key)
                out.append(I)
    return out


def check_lemma_2_1(ring: Ring, grading: Grading, budget: int | None = None) -> Verdict:
    """Part 1 with one side homogeneous; part 2 over the one-sided ideal family."""
    require_certified(ring, grading)
    if not is_gr_prime(ring, grading, budget).gr_prime:
        raise PreconditionError("lemma 2.1 needs a gr-prime ring")
    hit = one_sided_annihilator_witness(ring, grading, budget)
    if hit is not None:
        return Verdict(False, hit, "part (1): aRb = 0 with a, b nonzero and one homogeneous")
    z = np.array([e.coords for e in center(ring)], dtype=np.int64).reshape(-1, ring.dim)
    for I in ideal_family(ring, grading, ("left", "right"), budget):
        if I.is_zero() or not is_graded_ideal(I, grading):
            continue
        cz = np.array([e.coords for e in centralizer(I.spanning_set(), ring)],
                      dtype=np.int64).reshape(-1, ring.dim)
        if not same_span(cz, z, ring.modulus, ring.dim):
            return Verdict(False, I, "part (2): centralizer of a graded one-sided ideal differs from the center")
    return Verdict(True)


# --------------------------------------------------------------------------
# Sweeps
# --------------------------------------------------------------------------

THEOREMS = ("4.1", "4.2", "prop-F-nonzero", "prop-restriction", "lemma-2.1")
SIGNS = ("minus", "plus")


def _mat(a) -> list[list[int]]:
    return [[int(v) for v in row] for row in np.asarray(a)]


def _instance_doc(ring: Ring, grading: Grading) -> dict:
    from .corpus.io import document_data, document_from
    return document_data(document_from(ring, grading))


def _nonzero_d(pairs: PairFamily) -> PairFamily:
    keep = _rows(pairs.d).any(axis=1)
    return PairFamily(pairs.ring, pairs.F[keep], pairs.d[keep], pairs.policy)


def _theorem_hits(theorem: str, ring: Ring, grading: Grading, pairs: PairFamily,
                  ideals: list[IdealHandle], limit: int = 3) -> tuple[int, list[dict]]:
    """Count (ideal, sign, pairs) satisfying the theorem's condition."""
    count, hits = 0, []
    for ideal in ideals:
        basis = _Basis(ring, ideal.basis)
        for sign in SIGNS:
            kind = condition_for(theorem, sign)
            if theorem == "4.1":
                fail, _ = _one_map_fail(kind, pairs.F, basis)
                for t in np.flatnonzero(fail < 0):
                    count += 1
                    if len(hits) < limit:
                        hits.append({"sign": sign, "ideal": _mat(ideal.basis),
                                     "F": _mat(pairs.F[t]), "d": _mat(pairs.d[t])})
                continue
            for t1 in range(len(pairs)):
                fail, _ = _two_map_fail(kind, pairs.F[t1], pairs.F, basis)
                for t2 in np.flatnonzero(fail < 0):
                    count += 1
                    if len(hits) < limit:
                        hits.append({"sign": sign, "ideal": _mat(ideal.basis),
                                     "F1": _mat(pairs.F[t1]), "d1": _mat(pairs.d[t1]),
                                     "F2": _mat(pairs.F[t2]), "d2": _mat(pairs.d[t2])})
    return count, hits


def _check_theorem(theorem: str, ring: Ring, grading: Grading, budget: int) -> dict:
    comm = bool(is_commutative(ring))
    gr = bool(is_gr_prime(ring, grading, budget).gr_prime)
    rec = {"commutative": comm, "gr_prime": gr}
    if comm:
        return {**rec, "status": "conclusion-holds", "consistent": True}
    if not gr:
        return {**rec, "status": "hypotheses-fail", "consistent": True}
    pairs = _nonzero_d(qualifying_pairs(ring, grading, budget))
    ideals = [I for I in ideal_family(ring, grading, ("two-sided",), budget)
              if not I.is_zero() and is_graded_ideal(I, grading)]
    count, hits = _theorem_hits(theorem, ring, grading, pairs, ideals)
    rec.update({"status": "checked", "policy": pairs.policy, "pairs": len(pairs),
                "ideals": len(ideals), "hypotheses_satisfied": count,
                "consistent": count == 0})
    if count:
        rec["refutation"] = {"instance": _instance_doc(ring, grading), "examples": hits}
    return rec


def _rows(a: np.ndarray) -> np.ndarray:
    return a.reshape(a.shape[0], int(np.prod(a.shape[1:])))


def _check_prop_F_nonzero(ring: Ring, grading: Grading, budget: int) -> dict:
    gr = bool(is_gr_prime(ring, grading, budget).gr_prime)
    if not gr:
        return {"gr_prime": False, "status": "outside-hypotheses", "consistent": True}
    pairs = qualifying_pairs(ring, grading, budget)
    n = len(pairs)
    bad = _rows(pairs.d).any(axis=1) & ~_rows(pairs.F).any(axis=1)
    rec = {"gr_prime": True, "status": "checked", "policy": pairs.policy, "pairs": n,
           "violations": int(bad.sum()), "consistent": not bad.any()}
    if bad.any():
        t = int(np.flatnonzero(bad)[0])
        rec["refutation"] = {"instance": _instance_doc(ring, grading),
                             "F": _mat(pairs.F[t]), "d": _mat(pairs.d[t])}
    return rec


def _check_prop_restriction(ring: Ring, grading: Grading, budget: int) -> dict:
    gr = bool(is_gr_prime(ring, grading, budget).gr_prime)
    if not gr:
        return {"gr_prime": False, "status": "outside-hypotheses", "consistent": True}
    ders = homogeneous_derivations(ring, grading, budget)
    ders = ders[_rows(ders).any(axis=1)]
    ideals = [I for I in ideal_family(ring, grading, ("left", "right", "two-sided"), budget)
              if not I.is_zero() and is_graded_ideal(I, grading)]
    violations, first = 0, None
    for I in ideals:
        images = np.einsum("Nij,aj->Nai", ders, I.basis) % ring.modulus
        vanish = ~_rows(images).any(axis=1)
        violations += int(vanish.sum())
        if vanish.any() and first is None:
            first = {"instance": _instance_doc(ring, grading), "ideal": _mat(I.basis),
                     "side": I.side, "d": _mat(ders[int(np.flatnonzero(vanish)[0])])}
    rec = {"gr_prime": True, "status": "checked", "derivations": int(ders.shape[0]),
           "ideals": len(ideals), "violations": violations, "consistent": violations == 0}
    if first:
        rec["refutation"] = first
    return rec


def _check_lemma(ring: Ring, grading: Grading, budget: int) -> dict:
    gr = bool(is_gr_prime(ring, grading, budget).gr_prime)
    if not gr:
        return {"gr_prime": False, "status": "outside-hypotheses", "consistent": True}
    v = check_lemma_2_1(ring, grading, budget)
    rec = {"gr_prime": True, "status": "checked", "consistent": bool(v)}
    if not v:
        rec["refutation"] = {"instance": _instance_doc(ring, grading), "reason": v.reason}
    return rec


_CHECKS = {
    "4.1": lambda r, g, b: _check_theorem("4.1", r, g, b),
    "4.2": lambda r, g, b: _check_theorem("4.2", r, g, b),
    "prop-F-nonzero": _check_prop_F_nonzero,
    "prop-restriction": _check_prop_restriction,
    "lemma-2.1": _check_lemma,
}


def _run_instance(task) -> dict:
    index, family, ring, grading, theorem, budget = task
    from .corpus.families import instance_id
    head = {"index": index, "family": family, "id": instance_id(ring, grading),
            "modulus": ring.modulus, "dim": ring.dim}
    try:
        return {**head, **_CHECKS[theorem](ring, grading, budget)}
    except BudgetExceeded as exc:
        return {**head, "status": "undecided", "consistent": None, "reason": str(exc)}


def _map_tasks(fn, tasks, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=1))


def _families(families) -> list[str]:
    return [families] if isinstance(families, str) else list(families)


def sweep(families, params: dict | None, theorem: str, jobs: int = 1,
          budget: int | None = None) -> dict:
    """Run one check over every instance of the given families.

    Returns an evidence payload whose bytes do not depend on ``jobs``.
    """
    from .corpus.families import enumerate_instances
    if theorem not in THEOREMS:
        raise ValueError(f"theorem must be one of {THEOREMS}")
    budget = resolve_budget(budget)
    params = dict(params or {})
    tasks = []
    for fam in _families(families):
        for ring, grading in enumerate_instances(fam, params):
            tasks.append((len(tasks), fam, ring, grading, theorem, budget))
    records = _map_tasks(_run_instance, tasks, jobs)
    refutations = [r.pop("refutation") | {"id": r["id"]} for r in records if "refutation" in r]
    by_status: dict[str, int] = {}
    for r in records:
        by_status[r["status"]] = by_status.get(r["status"], 0) + 1
    totals = {
        "instances": len(records),
        "by_status": by_status,
        "inconsistent": sum(1 for r in records if r["consistent"] is False),
        "undecided": sum(1 for r in records if r["consistent"] is None),
        "hypotheses_satisfied": sum(r.get("hypotheses_satisfied", 0) for r in records),
        "violations": sum(r.get("violations", 0) for r in records),
    }
    return {"kind": "evidence", "theorem": theorem, "families": _families(families),
            "params": _jsonable(params), "budget": budget, "instances": records,
            "totals": totals, "refutations": refutations}


def _jsonable(params: dict) -> dict:
    return {k: (list(v) if isinstance(v, (list, tuple)) else v) for k, v in sorted(params.items())}


# --------------------------------------------------------------------------
# Open-problem searches
# --------------------------------------------------------------------------

PROBLEMS = {
    "pr1.i": ("bracket_F1x_x_central", (None,)),
    "pr1.ii": ("bracket_F1x_F2y_pm_xy_central", ("minus", "plus")),
    "pr1.iii": ("F1x_F2y_pm_bracket_xy_central", ("minus", "plus")),
    "pr2": ("F1x_F2y_pm_jordan_central", ("minus", "plus")),
}
DEFAULT_BOUNDS = {"families": ["matrix-pattern", "group-algebra"], "primes": [2, 3],
                  "max_n": 2, "max_order": 4}
CANDIDATE_NOTE = "candidate counterexamples pending manual verification"


def _search_instance(task) -> dict:
    index, family, ring, grading, problem, budget = task
    from .corpus.families import instance_id
    tag, signs = PROBLEMS[problem]
    rec = {"index": index, "family": family, "id": instance_id(ring, grading),
           "modulus": ring.modulus, "dim": ring.dim}
    if problem == "pr2" and ring.modulus == 2:
        return {**rec, "status": "excluded", "reason": "characteristic 2"}
    try:
        if not is_gr_prime(ring, grading, budget).gr_prime:
            return {**rec, "status": "excluded", "reason": "not gr-prime"}
        comm = bool(is_commutative(ring))
        pairs = qualifying_pairs(ring, grading, budget)
        ideals = [I for I in ideal_family(ring, grading, ("two-sided",), budget)
                  if not I.is_zero() and is_graded_ideal(I, grading)]
    except BudgetExceeded as exc:
        return {**rec, "status": "undecided", "reason": str(exc)}
    dnz = _rows(pairs.d).any(axis=1)
    satisfying = satisfying_nonzero = 0
    survivors = []
    for ideal in ideals:
        basis = _Basis(ring, ideal.basis)
        for sign in signs:
            kind = ConditionKind.of(tag, sign)
            if kind.arity == 1:
                fail, _ = _one_map_fail(kind, pairs.F, basis)
                ok = fail < 0
                satisfying += int(ok.sum())
                satisfying_nonzero += int((ok & dnz).sum())
                found = [(t,) for t in np.flatnonzero(ok & dnz)]
            else:
                found = []
                for t1 in range(len(pairs)):
                    fail, _ = _two_map_fail(kind, pairs.F[t1], pairs.F, basis)
                    ok = fail < 0
                    satisfying += int(ok.sum())
                    both = ok & dnz & dnz[t1]
                    satisfying_nonzero += int(both.sum())
                    found.extend((t1, int(t2)) for t2 in np.flatnonzero(both))
            if not comm:
                for combo in found[:max(0, 3 - len(survivors))]:
                    entry = {"sign": sign, "ideal": _mat(ideal.basis)}
                    for name, t in zip(("1", "2"), combo):
                        entry[f"F{name}"] = _mat(pairs.F[t])
                        entry[f"d{name}"] = _mat(pairs.d[t])
                    survivors.append(entry)
    rec.update({"status": "searched", "commutative": comm, "policy": pairs.policy,
                "pairs": len(pairs), "ideals": len(ideals), "satisfying": satisfying,
                "satisfying_nonzero_d": satisfying_nonzero})
    if survivors:
        rec["candidates"] = {"instance": _instance_doc(ring, grading), "examples": survivors}
    return rec


def search_problem(problem: str, bounds: dict | None = None, jobs: int = 1,
                   budget: int | None = None) -> dict:
    """Collect desk-scale evidence for one of the open problems.

    Non-commutative survivors with all associated derivations nonzero are
    reported as candidates, never as refutations.
    """
    from .corpus.families import enumerate_instances
    if problem not in PROBLEMS:
        raise ValueError(f"problem must be one of {tuple(PROBLEMS)}")
    budget = resolve_budget(budget)
    b = dict(DEFAULT_BOUNDS)
    b.update(bounds or {})
    fams = _families(b.pop("families"))
    tasks = []
    for fam in fams:
        for ring, grading in enumerate_instances(fam, b):
            tasks.append((len(tasks), fam, ring, grading, problem, budget))
    records = _map_tasks(_search_instance, tasks, jobs)
    candidates = [r.pop("candidates") | {"id": r["id"]} for r in records if "candidates" in r]
    searched = [r for r in records if r["status"] == "searched"]
    totals = {
        "instances": len(records),
        "searched": len(searched),
        "excluded": sum(1 for r in records if r["status"] == "excluded"),
        "undecided": sum(1 for r in records if r["status"] == "undecided"),
        "satisfying": sum(r["satisfying"] for r in searched),
        "satisfying_nonzero_d": sum(r["satisfying_nonzero_d"] for r in searched),
        "noncommutative_with_nonzero_d": sum(1 for r in searched if not r["commutative"]
                                             and r["satisfying_nonzero_d"]),
    }
    tag, signs = PROBLEMS[problem]
    return {"kind": "evidence", "problem": problem, "condition": tag,
            "bounds": _jsonable({"families": fams, **b}), "budget": budget,
            "instances": records, "totals": totals, "candidates": candidates,
            "note": CANDIDATE_NOTE}
