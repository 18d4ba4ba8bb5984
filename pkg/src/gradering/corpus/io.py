"""``.ring.json`` documents and machine-readable reports.

Both use a restricted JSON profile: UTF-8, integers/strings/booleans/null,
no floats, no duplicate keys. Emission is canonical so equal documents give
identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..errors import SpecError
from ..grading import DegreeGroup, Grading
from ..ideals import SIDES, IdealHandle, ideal_generate
from ..maps import AdditiveMap
from ..ring import Element, Ring, RingSpec, make_ring

FORMAT_VERSION = 1
SUFFIX = ".ring.json"

TOP_FIELDS = ("format_version", "modulus", "basis_names", "structure_constants", "grading",
              "maps", "ideals", "expectations", "provenance")
REQUIRED = ("format_version", "modulus", "basis_names", "structure_constants", "grading")
REPORT_FIELDS = ("format_version", "kind", "command", "exit_code", "payload")

CLASS_FLAGS = ("derivation", "homogeneous_map", "homogeneous_derivation",
               "generalized_derivation", "generalized_homogeneous_derivation")
EXPECTATION_KEYS = ("ring_valid", "grading_valid", "grading_witness", "commutative",
                    "gr_prime", "prime", "classifications", "graded_ideals", "ideal_ranks",
                    "conditions", "evaluations")


# -- low-level JSON profile ---------------------------------------------------

def _no_float(text):
    raise SpecError(f"floating-point literal {text!r} is not allowed")


def _no_dup(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise SpecError(f"duplicate key {k!r}")
        out[k] = v
    return out


def load_profile(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_no_float, parse_constant=_no_float,
                          object_pairs_hook=_no_dup)
    except json.JSONDecodeError as exc:
        raise SpecError(f"syntax error: {exc.msg}", line=exc.lineno, column=exc.colno) from None


def _check_profile(value, path="$"):
    if value is None or isinstance(value, (bool, int, str)):
        return
    if isinstance(value, float):
        raise SpecError("floats are not allowed", path)
    if isinstance(value, list):
        for t, v in enumerate(value):
            _check_profile(v, f"{path}[{t}]")
        return
    if isinstance(value, dict):
        for k, v in value.items():
            if not isinstance(k, str):
                raise SpecError("object keys must be strings", path)
            _check_profile(v, f"{path}.{k}")
        return
    raise SpecError(f"unsupported value of type {type(value).__name__}", path)


def _scalar_json(v) -> str:
    return json.dumps(v, ensure_ascii=False)


def dump_profile(value, indent: int = 0, width: int = 88) -> str:
    """Deterministic pretty printer: short lists inline, dicts one key per line."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{inner}{_scalar_json(k)}: {dump_profile(v, indent + 1, width)}'
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        compact = json.dumps(value, ensure_ascii=False, separators=(", ", ": "))
        has_dict = any(isinstance(v, dict) for v in value)
        if not has_dict and len(compact) + len(pad) <= width:
            return compact
        items = [inner + dump_profile(v, indent + 1, width) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _scalar_json(value)


def _sorted_deep(value):
    if isinstance(value, dict):
        return {k: _sorted_deep(value[k]) for k in sorted(value)}
    if isinstance(value, list):
        return [_sorted_deep(v) for v in value]
    return value


# -- ring documents -----------------------------------------------------------

@dataclass
class RingDocument:
    modulus: int
    basis_names: list[str]
    structure_constants: list[list[int]]
    grading: dict
    maps: dict[str, list[list[int]]] = field(default_factory=dict)
    ideals: dict[str, dict] = field(default_factory=dict)
    expectations: dict = field(default_factory=dict)
    provenance: str | None = None
    format_version: int = FORMAT_VERSION

    # conversions ------------------------------------------------------------
    def ring(self, label: str = "") -> Ring:
        triples = [tuple(t) for t in self.structure_constants]
        return make_ring(RingSpec(self.modulus, self.basis_names, triples, label))

    def degree_group(self) -> DegreeGroup:
        g = self.grading
        return DegreeGroup(g["free_rank"], tuple(g["torsion"]))

    def raw_grading(self, label: str = "") -> Grading:
        """The declared grading, not yet certified."""
        return Grading(self.degree_group(), tuple(tuple(d) for d in self.grading["degrees"]),
                       label=label)

    def map(self, name: str, ring: Ring) -> AdditiveMap:
        if name not in self.maps:
            raise SpecError(f"no map named {name!r}", "maps")
        return AdditiveMap.from_images(ring, self.maps[name])

    def ideal(self, name: str, ring: Ring) -> IdealHandle:
        if name not in self.ideals:
            raise SpecError(f"no ideal named {name!r}", "ideals")
        spec = self.ideals[name]
        gens = [Element(ring, g) for g in spec["generators"]]
        return ideal_generate(gens, spec["side"], ring)


def document_from(ring: Ring, grading: Grading, maps: dict[str, AdditiveMap] | None = None,
                  ideals: dict[str, tuple[str, list[Element]]] | None = None,
                  expectations: dict | None = None, provenance: str | None = None) -> RingDocument:
    idx = np.argwhere(ring.c)
    triples = [[int(i), int(j), int(k), int(ring.c[i, j, k])] for i, j, k in idx]
    gr = {"free_rank": grading.group.free_rank, "torsion": list(grading.group.torsion),
          "degrees": [list(d) for d in grading.degrees]}
    doc_maps = {k: v.images() for k, v in (maps or {}).items()}
    doc_ideals = {k: {"side": side, "generators": [g.to_list() for g in gens]}
                  for k, (side, gens) in (ideals or {}).items()}
    return RingDocument(ring.modulus, list(ring.basis_names), triples, gr, doc_maps,
                        doc_ideals, dict(expectations or {}), provenance)


def _need_int(v, path, lo=None, hi=None):
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecError("expected an integer", path)
    if (lo is not None and v < lo) or (hi is not None and v >= hi):
        raise SpecError(f"integer {v} out of range", path)
    return v


def _need_bool(v, path):
    if not isinstance(v, bool):
        raise SpecError("expected a boolean", path)
    return v


def _need_list(v, path):
    if not isinstance(v, list):
        raise SpecError("expected a list", path)
    return v


def _need_dict(v, path, allowed=None, required=()):
    if not isinstance(v, dict):
        raise SpecError("expected an object", path)
    if allowed is not None:
        for k in v:
            if k not in allowed:
                raise SpecError(f"unknown field {k!r}", k if path == "$" else f"{path}.{k}")
    for k in required:
        if k not in v:
            raise SpecError(f"missing field {k!r}", k if path == "$" else f"{path}.{k}")
    return v


def _coords(v, n, m, path):
    _need_list(v, path)
    if len(v) != n:
        raise SpecError(f"expected {n} coordinates, got {len(v)}", path)
    return [_need_int(x, f"{path}[{t}]", 0, m) for t, x in enumerate(v)]


def _validate_expectations(exp, doc: RingDocument, path="expectations"):
    _need_dict(exp, path, EXPECTATION_KEYS)
    n, m = len(doc.basis_names), doc.modulus
    for key in ("ring_valid", "grading_valid", "commutative", "gr_prime", "prime"):
        if key in exp:
            _need_bool(exp[key], f"{path}.{key}")
    if "grading_witness" in exp and exp["grading_witness"] is not None:
        w = _need_list(exp["grading_witness"], f"{path}.grading_witness")
        if len(w) != 3:
            raise SpecError("expected [i, j, degree]", f"{path}.grading_witness")
        _need_int(w[0], f"{path}.grading_witness[0]", 0, n)
        _need_int(w[1], f"{path}.grading_witness[1]", 0, n)
        for x in _need_list(w[2], f"{path}.grading_witness[2]"):
            _need_int(x, f"{path}.grading_witness[2]")
    for name, flags in _need_dict(exp.get("classifications", {}), f"{path}.classifications").items():
        p = f"{path}.classifications.{name}"
        if name not in doc.maps:
            raise SpecError("classification of an undeclared map", p)
        _need_dict(flags, p, CLASS_FLAGS + ("witness",))
        for k, v in flags.items():
            if k == "witness":
                if v not in doc.maps:
                    raise SpecError(f"witness {v!r} is not a declared map", p)
            else:
                _need_bool(v, f"{p}.{k}")
    for key in ("graded_ideals", "ideal_ranks"):
        for name, v in _need_dict(exp.get(key, {}), f"{path}.{key}").items():
            if name not in doc.ideals:
                raise SpecError("undeclared ideal", f"{path}.{key}.{name}")
            if key == "graded_ideals":
                _need_bool(v, f"{path}.{key}.{name}")
            else:
                _need_int(v, f"{path}.{key}.{name}", 0, n + 1)
    for t, cond in enumerate(_need_list(exp.get("conditions", []), f"{path}.conditions")):
        p = f"{path}.conditions[{t}]"
        _need_dict(cond, p, ("tag", "sign", "maps", "ideal", "holds"),
                   ("tag", "maps", "ideal", "holds"))
        if not isinstance(cond["tag"], str):
            raise SpecError("tag must be a string", p)
        if cond.get("sign") not in (None, "plus", "minus"):
            raise SpecError("sign must be plus, minus or null", p)
        for mname in _need_list(cond["maps"], f"{p}.maps"):
            if mname not in doc.maps:
                raise SpecError(f"undeclared map {mname!r}", p)
        if cond["ideal"] not in doc.ideals:
            raise SpecError(f"undeclared ideal {cond['ideal']!r}", p)
        _need_bool(cond["holds"], f"{p}.holds")
    for t, ev in enumerate(_need_list(exp.get("evaluations", []), f"{path}.evaluations")):
        p = f"{path}.evaluations[{t}]"
        _need_dict(ev, p, ("map", "input", "output", "homogeneous"), ("map", "input", "output"))
        if ev["map"] not in doc.maps:
            raise SpecError(f"undeclared map {ev['map']!r}", p)
        _coords(ev["input"], n, m, f"{p}.input")
        _coords(ev["output"], n, m, f"{p}.output")
        if "homogeneous" in ev:
            _need_bool(ev["homogeneous"], f"{p}.homogeneous")


def document_from_data(data) -> RingDocument:
    _need_dict(data, "$", TOP_FIELDS, REQUIRED)
    version = _need_int(data["format_version"], "format_version")
    if version != FORMAT_VERSION:
        raise SpecError(f"unsupported format_version {version}", "format_version")
    m = _need_int(data["modulus"], "modulus", 2)
    names = _need_list(data["basis_names"], "basis_names")
    if not names or not all(isinstance(x, str) and x for x in names):
        raise SpecError("basis names must be nonempty strings", "basis_names")
    if len(set(names)) != len(names):
        raise SpecError("duplicate basis names", "basis_names")
    n = len(names)
    triples = []
    for t, entry in enumerate(_need_list(data["structure_constants"], "structure_constants")):
        p = f"structure_constants[{t}]"
        _need_list(entry, p)
        if len(entry) != 4:
            raise SpecError("expected [i, j, k, c]", p)
        i, j, k = (_need_int(x, p, 0, n) for x in entry[:3])
        c = _need_int(entry[3], p, 0, m)
        triples.append([i, j, k, c])
    keys = [tuple(t[:3]) for t in triples]
    for t in range(1, len(keys)):
        if keys[t] == keys[t - 1]:
            raise SpecError(f"duplicate triple {keys[t]}", f"structure_constants[{t}]")
        if keys[t] < keys[t - 1]:
            raise SpecError("triples must be sorted lexicographically", f"structure_constants[{t}]")
    gr = _need_dict(data["grading"], "grading", ("free_rank", "torsion", "degrees"),
                    ("free_rank", "torsion", "degrees"))
    free = _need_int(gr["free_rank"], "grading.free_rank", 0)
    torsion = [_need_int(x, f"grading.torsion[{t}]", 2)
               for t, x in enumerate(_need_list(gr["torsion"], "grading.torsion"))]
    degs = _need_list(gr["degrees"], "grading.degrees")
    if len(degs) != n:
        raise SpecError(f"expected {n} degrees", "grading.degrees")
    for t, d in enumerate(degs):
        _need_list(d, f"grading.degrees[{t}]")
        if len(d) != free + len(torsion):
            raise SpecError("degree length does not match the group rank", f"grading.degrees[{t}]")
        for x in d:
            _need_int(x, f"grading.degrees[{t}]")
    maps = {}
    for name, images in _need_dict(data.get("maps", {}), "maps").items():
        _need_list(images, f"maps.{name}")
        if len(images) != n:
            raise SpecError(f"expected {n} images", f"maps.{name}")
        maps[name] = [_coords(im, n, m, f"maps.{name}[{t}]") for t, im in enumerate(images)]
    ideals = {}
    for name, spec in _need_dict(data.get("ideals", {}), "ideals").items():
        p = f"ideals.{name}"
        _need_dict(spec, p, ("side", "generators"), ("side", "generators"))
        if spec["side"] not in SIDES:
            raise SpecError(f"side must be one of {SIDES}", f"{p}.side")
        gens = [_coords(g, n, m, f"{p}.generators[{t}]")
                for t, g in enumerate(_need_list(spec["generators"], f"{p}.generators"))]
        ideals[name] = {"side": spec["side"], "generators": gens}
    prov = data.get("provenance")
    if prov is not None and not isinstance(prov, str):
        raise SpecError("provenance must be a string", "provenance")
    doc = RingDocument(m, list(names), triples,
                       {"free_rank": free, "torsion": torsion, "degrees": degs},
                       maps, ideals, {}, prov, version)
    exp = data.get("expectations", {})
    _check_profile(exp, "expectations")
    _validate_expectations(exp, doc)
    doc.expectations = exp
    return doc


def parse_spec(text: str) -> RingDocument:
    data = load_profile(text)
    return document_from_data(data)


def document_data(doc: RingDocument) -> dict:
    out: dict[str, Any] = {
        "format_version": doc.format_version,
        "modulus": doc.modulus,
        "basis_names": list(doc.basis_names),
        "structure_constants": sorted([list(t) for t in doc.structure_constants]),
        "grading": _sorted_deep(doc.grading),
    }
    if doc.maps:
        out["maps"] = _sorted_deep(doc.maps)
    if doc.ideals:
        out["ideals"] = _sorted_deep(doc.ideals)
    if doc.expectations:
        out["expectations"] = _sorted_deep(doc.expectations)
    if doc.provenance is not None:
        out["provenance"] = doc.provenance
    return out


def emit_spec(doc: RingDocument) -> str:
    return dump_profile(document_data(doc)) + "\n"


def load_document(path) -> RingDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


# -- reports --------------------------------------------------------------------

@dataclass
class Report:
    command: str
    exit_code: int
    payload: dict
    kind: str = "report"
    format_version: int = FORMAT_VERSION


def emit_report(report: Report) -> str:
    _check_profile(report.payload, "payload")
    data = {"format_version": report.format_version, "kind": report.kind,
            "command": report.command, "exit_code": report.exit_code,
            "payload": _sorted_deep(report.payload)}
    return dump_profile(data) + "\n"


def parse_report(text: str) -> Report:
    data = load_profile(text)
    _need_dict(data, "$", REPORT_FIELDS, REPORT_FIELDS)
    if _need_int(data["format_version"], "format_version") != FORMAT_VERSION:
        raise SpecError("unsupported format_version", "format_version")
    if data["kind"] != "report":
        raise SpecError("kind must be 'report'", "kind")
    if not isinstance(data["command"], str):
        raise SpecError("command must be a string", "command")
    code = _need_int(data["exit_code"], "exit_code", 0, 4)
    _need_dict(data["payload"], "payload")
    _check_profile(data["payload"], "payload")
    return Report(data["command"], code, data["payload"])
