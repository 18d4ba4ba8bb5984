"""Recompute the verdicts a corpus document declares and compare."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..grading import Grading, certify_grading, is_homogeneous, validate_grading
from ..ideals import is_graded_ideal
from ..maps import (classify_map, is_derivation, is_generalized_pair,
                    is_homogeneous_derivation)
from ..primeness import is_gr_prime, is_prime
from ..ring import Element, Ring, is_commutative, validate_ring
from ..theorems import ConditionKind, check_condition
from .io import RingDocument


@dataclass(frozen=True)
class Check:
    name: str
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def payload(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual,
                "passed": self.passed}


def load_instance(doc: RingDocument) -> tuple[Ring, Grading, bool]:
    """Ring and grading; the grading is certified when it validates."""
    ring = doc.ring()
    grading = doc.raw_grading()
    ok = bool(validate_ring(ring)) and bool(validate_grading(ring, grading))
    if ok:
        grading = certify_grading(ring, grading)
    return ring, grading, ok


def run_expectations(doc: RingDocument, budget: int | None = None) -> list[Check]:
    exp = doc.expectations
    ring = doc.ring()
    raw = doc.raw_grading()
    checks: list[Check] = []
    rv = validate_ring(ring)
    if "ring_valid" in exp:
        checks.append(Check("ring_valid", exp["ring_valid"], bool(rv)))
    gv = validate_grading(ring, raw)
    if "grading_valid" in exp:
        checks.append(Check("grading_valid", exp["grading_valid"], bool(gv)))
    if "grading_witness" in exp:
        w = None if gv else [gv.witness[0], gv.witness[1], list(gv.witness[2])]
        checks.append(Check("grading_witness", exp["grading_witness"], w))
    if "commutative" in exp:
        checks.append(Check("commutative", exp["commutative"], bool(is_commutative(ring))))
    if "prime" in exp:
        checks.append(Check("prime", exp["prime"], is_prime(ring, budget).prime))

    graded_keys = ("gr_prime", "classifications", "graded_ideals", "conditions")
    if not (rv and gv):
        for key in graded_keys:
            if key in exp:
                checks.append(Check(key, "evaluated", "grading invalid"))
        return checks + _evaluations(doc, ring, None)
    grading = certify_grading(ring, raw)

    if "gr_prime" in exp:
        checks.append(Check("gr_prime", exp["gr_prime"], is_gr_prime(ring, grading, budget).gr_prime))
    for name, flags in exp.get("classifications", {}).items():
        F = doc.map(name, ring)
        actual = classify_map(F, ring, grading, budget).flags()
        for flag, value in flags.items():
            if flag == "witness":
                continue
            checks.append(Check(f"classify[{name}].{flag}", value, actual[flag]))
        if "witness" in flags:
            d = doc.map(flags["witness"], ring)
            checks.append(Check(f"classify[{name}].witness[{flags['witness']}].relation",
                                True, bool(is_generalized_pair(F, d))))
            if flags.get("generalized_homogeneous_derivation"):
                ok = bool(is_homogeneous_derivation(d, ring, grading))
            else:
                ok = bool(is_derivation(d))
            checks.append(Check(f"classify[{name}].witness[{flags['witness']}].derivation",
                                True, ok))
    for name, value in exp.get("graded_ideals", {}).items():
        checks.append(Check(f"graded_ideal[{name}]", value,
                            bool(is_graded_ideal(doc.ideal(name, ring), grading))))
    for name, value in exp.get("ideal_ranks", {}).items():
        checks.append(Check(f"ideal_rank[{name}]", value, doc.ideal(name, ring).rank))
    for cond in exp.get("conditions", []):
        kind = ConditionKind.of(cond["tag"], cond.get("sign"))
        maps = [doc.map(nm, ring) for nm in cond["maps"]]
        verdict = check_condition(kind, maps, doc.ideal(cond["ideal"], ring), ring, grading)
        checks.append(Check(f"condition[{kind}; {','.join(cond['maps'])}; {cond['ideal']}]",
                            cond["holds"], bool(verdict)))
    return checks + _evaluations(doc, ring, grading)


def _evaluations(doc: RingDocument, ring: Ring, grading: Grading | None) -> list[Check]:
    out = []
    for t, ev in enumerate(doc.expectations.get("evaluations", [])):
        F = doc.map(ev["map"], ring)
        y = F(Element(ring, ev["input"]))
        out.append(Check(f"evaluation[{t}].{ev['map']}", ev["output"], y.to_list()))
        if "homogeneous" in ev and grading is not None:
            out.append(Check(f"evaluation[{t}].homogeneous", ev["homogeneous"],
                             is_homogeneous(y, grading) is not None))
    return out
