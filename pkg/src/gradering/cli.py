"""Command-line front end.

Exit codes: 0 pass or consistent, 1 check failed or witness found, 2 usage or
input error, 3 budget exceeded or undecided.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import resolve_budget
from .corpus import (EXAMPLE_IDS, EXTRA_IDS, Report, RingDocument, build_paper_example,
                     emit_report, load_document, run_expectations, shipped_path)
from .corpus.expectations import load_instance
from .errors import BudgetExceeded, GraderingError
from .grading import validate_grading
from .ideals import whole_ring
from .maps import classify_map
from .primeness import is_gr_prime, is_prime
from .ring import Element, center, is_commutative, validate_ring
from .theorems import (PROBLEMS, THEOREMS, check_lemma_2_1, check_prop_F_nonzero,
                       check_prop_restriction, search_problem, sweep, verify_theorem_4_1,
                       verify_theorem_4_2)

OK, FAIL, USAGE, UNDECIDED = 0, 1, 2, 3


@dataclass
class Outcome:
    exit_code: int
    payload: dict
    lines: list[str] = field(default_factory=list)


class UsageError(GraderingError):
    pass


def _mat(a) -> list[list[int]]:
    return [[int(v) for v in row] for row in np.asarray(a)]


def _elem(x: Element) -> list[int]:
    return x.to_list()


def _pretty(x: Element) -> str:
    terms = [f"{'' if c == 1 else c}{name}"
             for c, name in zip(x.to_list(), x.ring.basis_names) if c]
    return " + ".join(terms) or "0"


def _resolve(path_or_id: str) -> Path:
    path = Path(path_or_id)
    if path.is_file():
        return path
    shipped = shipped_path(path_or_id)
    if shipped is None:
        raise UsageError(f"no such file or shipped fixture: {path_or_id}")
    return shipped


def _load(args) -> RingDocument:
    return load_document(_resolve(args.file))


def _certified(doc: RingDocument):
    ring, grading, ok = load_instance(doc)
    if not ok:
        raise UsageError("the declared grading does not validate; run `validate` for the witness")
    return ring, grading


def _pick_maps(doc: RingDocument, given: list[str] | None, defaults) -> list[str]:
    if given:
        return given
    for names in defaults:
        if all(n in doc.maps for n in names):
            return list(names)
    raise UsageError(f"pass --map; the document has maps {sorted(doc.maps)}")


def _ideal(doc: RingDocument, ring, name: str | None):
    if name is not None:
        return doc.ideal(name, ring), name
    if "I" in doc.ideals:
        return doc.ideal("I", ring), "I"
    return whole_ring(ring), "R"


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_validate(args) -> Outcome:
    doc = _load(args)
    ring = doc.ring()
    rv = validate_ring(ring)
    payload = {"ring_valid": rv.passed, "grading_valid": None}
    lines = [f"ring: {'valid' if rv else 'INVALID'}" + (f" ({rv.reason})" if rv.reason else "")]
    if rv:
        gv = validate_grading(ring, doc.raw_grading())
        payload["grading_valid"] = gv.passed
        if gv:
            lines.append("grading: valid")
        else:
            i, j, deg = gv.witness
            payload["grading_witness"] = [int(i), int(j), [int(v) for v in deg]]
            payload["reason"] = gv.reason
            names = ring.basis_names
            lines.append(f"grading: INVALID at basis pair ({names[i]}, {names[j]}): {gv.reason}")
    else:
        payload["reason"] = rv.reason
        if rv.witness is not None:
            payload["ring_witness"] = [int(v) for v in rv.witness]
    ok = rv.passed and payload["grading_valid"]
    return Outcome(OK if ok else FAIL, payload, lines)


def cmd_classify(args) -> Outcome:
    doc = _load(args)
    ring, grading = _certified(doc)
    F = doc.map(args.map, ring)
    c = classify_map(F, ring, grading, args.budget)
    payload = {"map": args.map, **c.flags(), "solution_space_dim": c.solution_space_dim}
    if c.generalized_witness is not None:
        payload["associated_derivation"] = _mat(c.generalized_witness.matrix)
    if c.homogeneous_witness is not None:
        payload["homogeneous_witness"] = _mat(c.homogeneous_witness.matrix)
    lines = [f"{args.map}:"] + [f"  {k}: {v}" for k, v in c.flags().items()]
    code = UNDECIDED if c.generalized_homogeneous_derivation is None else OK
    return Outcome(code, payload, lines)


def _primeness(args, graded: bool) -> Outcome:
    doc = _load(args)
    if graded:
        ring, grading = _certified(doc)
        rep = is_gr_prime(ring, grading, args.budget)
        flag, witness, word = rep.gr_prime, rep.gr_witness, "gr-prime"
    else:
        ring = doc.ring()
        rep = is_prime(ring, args.budget)
        flag, witness, word = rep.prime, rep.prime_witness, "prime"
    key = "gr_prime" if graded else "prime"
    payload = {key: flag}
    lines = [f"{word}: {flag}"]
    if witness is not None:
        a, b = witness
        payload["witness"] = [_elem(a), _elem(b)]
        lines.append(f"  aRb = 0 for a = {_pretty(a)}, b = {_pretty(b)}")
    if flag is None:
        return Outcome(UNDECIDED, payload, lines)
    return Outcome(OK if flag else FAIL, payload, lines)


def cmd_grprime(args) -> Outcome:
    return _primeness(args, graded=True)


def cmd_prime(args) -> Outcome:
    return _primeness(args, graded=False)


def cmd_center(args) -> Outcome:
    doc = _load(args)
    ring = doc.ring()
    z = center(ring)
    payload = {"commutative": bool(is_commutative(ring)), "dim": len(z),
               "spanning_set": [_elem(e) for e in z]}
    lines = [f"center has dimension {len(z)}"] + [f"  {_pretty(e)}" for e in z]
    return Outcome(OK, payload, lines)


def cmd_verify(args) -> Outcome:
    doc = _load(args)
    ring, grading = _certified(doc)
    th = args.theorem
    if th == "lemma-2.1":
        v = check_lemma_2_1(ring, grading, args.budget)
        payload = {"theorem": th, "holds": v.passed, "reason": v.reason}
        return Outcome(OK if v else FAIL, payload, [f"lemma 2.1: {'holds' if v else 'FAILS'}"
                                                    + (f" ({v.reason})" if v.reason else "")])
    if th == "prop-restriction":
        (dname,) = _pick_maps(doc, args.map, [("d1",), ("d",)])
        ideal, iname = _ideal(doc, ring, args.ideal)
        v = check_prop_restriction(ring, grading, ideal, doc.map(dname, ring), args.budget)
        payload = {"theorem": th, "map": dname, "ideal": iname, "holds": v.passed,
                   "reason": v.reason}
        return Outcome(OK if v else FAIL, payload, [f"{th}: {'holds' if v else 'FAILS'}"])
    if th == "prop-F-nonzero":
        names = _pick_maps(doc, args.map, [("F1", "d1"), ("F", "d")])
        F, d = (doc.map(n, ring) for n in names)
        v = check_prop_F_nonzero(ring, grading, F, d, args.budget)
        payload = {"theorem": th, "maps": names, "holds": v.passed, "reason": v.reason}
        text = f"{th}: {'holds' if v else 'FAILS'}" + (f" ({v.reason})" if v.reason else "")
        return Outcome(OK if v else FAIL, payload, [text])

    ideal, iname = _ideal(doc, ring, args.ideal)
    if th == "4.1":
        names = _pick_maps(doc, args.map, [("F1", "d1"), ("F", "d")])
        if len(names) != 2:
            raise UsageError("theorem 4.1 takes --map F --map d")
        verdict = verify_theorem_4_1(ring, grading, ideal, *(doc.map(n, ring) for n in names),
                                     sign=args.sign, budget=args.budget)
    else:
        names = _pick_maps(doc, args.map, [("F1", "d1", "F2", "d2")])
        if len(names) != 4:
            raise UsageError("theorem 4.2 takes --map F1 --map d1 --map F2 --map d2")
        verdict = verify_theorem_4_2(ring, grading, ideal, *(doc.map(n, ring) for n in names),
                                     sign=args.sign, budget=args.budget)
    payload = {**verdict.payload(), "maps": names, "ideal": iname, "sign": args.sign}
    lines = [f"theorem {th} ({args.sign}) on ideal {iname}: {verdict.summary()}"]
    return Outcome(OK if verdict.consistent_with_paper else FAIL, payload, lines)


def _parse_value(raw: str):
    parts = [p for p in raw.split(",") if p != ""]
    vals = [int(p) if p.lstrip("-").isdigit() else p for p in parts]
    if "," in raw:
        return vals
    return vals[0] if vals else ""


def _parse_kv(items: list[str] | None, list_keys=("primes", "families")) -> dict:
    out = {}
    for item in items or []:
        for token in item.split():
            key, sep, raw = token.partition("=")
            if not sep or not key:
                raise UsageError(f"expected key=value, got {token!r}")
            val = _parse_value(raw)
            if key in list_keys and not isinstance(val, list):
                val = [val]
            out[key] = val
    return out


def _evidence_code(totals: dict, failures: int) -> int:
    if failures:
        return FAIL
    if totals.get("undecided"):
        return UNDECIDED
    return OK


def cmd_sweep(args) -> Outcome:
    families = [f for f in args.family.split(",") if f]
    params = _parse_kv(args.params)
    try:
        rep = sweep(families, params, args.theorem, jobs=args.jobs, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    t = rep["totals"]
    lines = [f"sweep {args.theorem} over {', '.join(families)}: {t['instances']} instances",
             "  " + ", ".join(f"{k}={v}" for k, v in sorted(t["by_status"].items())),
             f"  inconsistent={t['inconsistent']} undecided={t['undecided']}"]
    return Outcome(_evidence_code(t, t["inconsistent"]), rep, lines)


def cmd_search(args) -> Outcome:
    bounds = _parse_kv(args.bounds)
    try:
        rep = search_problem(args.problem, bounds, jobs=args.jobs, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    t = rep["totals"]
    lines = [f"search {args.problem}: {t['searched']} searched, {t['excluded']} excluded, "
             f"{t['undecided']} undecided",
             f"  satisfying combinations: {t['satisfying']} "
             f"({t['satisfying_nonzero_d']} with nonzero derivations)",
             f"  candidate instances: {len(rep['candidates'])} ({rep['note']})"]
    return Outcome(_evidence_code(t, 0), rep, lines)


def cmd_demo(args) -> Outcome:
    ex = build_paper_example(args.example, args.modulus, args.truncation)
    doc = ex.document()
    checks = run_expectations(doc, args.budget)
    failed = [c for c in checks if not c.passed]
    payload = {"example": ex.id, "modulus": doc.modulus, "checks": [c.payload() for c in checks],
               "passed": len(checks) - len(failed), "failed": len(failed)}
    lines = [f"{ex.id} over Z{doc.modulus}: {len(checks) - len(failed)}/{len(checks)} expectations pass"]
    lines += [f"  FAIL {c.name}: expected {c.expected!r}, got {c.actual!r}" for c in failed]
    if args.write:
        from .corpus import emit_spec
        Path(args.write).write_text(emit_spec(doc), encoding="utf-8")
        lines.append(f"  wrote {args.write}")
    return Outcome(FAIL if failed else OK, payload, lines)


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print a machine-readable report")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="enumeration budget (default: $GRADERING_BUDGET or 10^6)")

    parser = argparse.ArgumentParser(prog="gradering", parents=[common],
                                     description="Graded-ring workbench.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    for name, fn, h in [("validate", cmd_validate, "check ring axioms and the grading"),
                        ("grprime", cmd_grprime, "decide gr-primeness"),
                        ("prime", cmd_prime, "decide primeness"),
                        ("center", cmd_center, "span of the center")]:
        add(name, fn, h).add_argument("file")

    p = add("classify", cmd_classify, "place a map in the inclusion diagram")
    p.add_argument("file")
    p.add_argument("--map", required=True)

    p = add("verify", cmd_verify, "check a theorem's hypotheses and conclusion")
    p.add_argument("file")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--map", action="append", help="map names in order (repeatable)")
    p.add_argument("--ideal")
    p.add_argument("--sign", choices=("plus", "minus"), default="minus")

    p = add("sweep", cmd_sweep, "run a check over instance families")
    p.add_argument("--family", required=True, help="comma-separated family names")
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--jobs", type=int, default=1)

    p = add("search", cmd_search, "collect evidence for an open problem")
    p.add_argument("--problem", required=True, choices=tuple(PROBLEMS))
    p.add_argument("--bounds", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--jobs", type=int, default=1)

    p = add("demo", cmd_demo, "build a worked example and run its expectations")
    p.add_argument("--example", required=True, choices=EXAMPLE_IDS + EXTRA_IDS)
    p.add_argument("--modulus", type=int)
    p.add_argument("--truncation", type=int)
    p.add_argument("--write", metavar="PATH", help="also save the fixture document")
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Execute a command; returns ``(exit_code, stdout_text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (USAGE if exc.code else OK), ""
    as_json = getattr(args, "json", False)
    args.budget = resolve_budget(getattr(args, "budget", None))
    if getattr(args, "jobs", 1) < 1:
        args.jobs = 1
    try:
        out = args.func(args)
    except BudgetExceeded as exc:
        out = Outcome(UNDECIDED, {"error": str(exc)}, [f"undecided: {exc}"])
    except (GraderingError, KeyError, ValueError, OSError) as exc:
        out = Outcome(USAGE, {"error": str(exc)}, [f"error: {exc}"])
    if as_json:
        return out.exit_code, emit_report(Report(args.command, out.exit_code, out.payload))
    return out.exit_code, "\n".join(out.lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
