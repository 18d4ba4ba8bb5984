import json

import pytest
from hypothesis import given, strategies as st

from gradering import (AdditiveMap, Element, Grading, IncompatibleModulusError, PreconditionError,
                       SpecError, is_derivation, validate_grading, validate_ring)
from gradering.corpus import (DATA_DIR, EXAMPLE_IDS, SHIPPED, Report, build_paper_example,
                              document_from, emit_report, emit_spec, enumerate_instances,
                              load_document, parse_report, parse_spec, regenerate_document,
                              run_expectations, shipped_documents, shipped_path,
                              truncated_poly_ring)
from gradering.corpus.examples import imaginary_unit
from gradering.corpus.families import (formal_derivative, group_algebra, instance_id,
                                       matrix_pattern_ring)

MINIMAL = """{
  "format_version": 1,
  "modulus": 5,
  "basis_names": ["1"],
  "structure_constants": [[0, 0, 0, 1]],
  "grading": {"degrees": [[]], "free_rank": 0, "torsion": []}
}
"""


def test_minimal_document_round_trips():
    doc = parse_spec(MINIMAL)
    text = emit_spec(doc)
    assert parse_spec(text) == doc
    assert emit_spec(parse_spec(text)) == text
    ring = doc.ring()
    assert ring.dim == 1 and validate_ring(ring)


def _mutate(**changes):
    data = json.loads(MINIMAL)
    data.update(changes)
    return json.dumps(data)


@pytest.mark.parametrize("text, path", [
    (_mutate(structure_constants=[[0, 0, 0, 1], [0, 0, 0, 1]]), "structure_constants"),
    (_mutate(extra=1), "extra"),
    (_mutate(format_version=2), "format_version"),
    (_mutate(modulus=1), "modulus"),
    (_mutate(grading={"degrees": [[1]], "free_rank": 0, "torsion": []}), "grading"),
])
def test_semantic_errors_name_a_field(text, path):
    with pytest.raises(SpecError) as err:
        parse_spec(text)
    assert path in err.value.path


def test_unsorted_triples_rejected():
    two = {"format_version": 1, "modulus": 5, "basis_names": ["a", "b"],
           "structure_constants": [[1, 1, 1, 1], [0, 0, 0, 1]],
           "grading": {"degrees": [[], []], "free_rank": 0, "torsion": []}}
    with pytest.raises(SpecError):
        parse_spec(json.dumps(two))


@pytest.mark.parametrize("text", [
    MINIMAL.replace('"modulus": 5', '"modulus": 5.0'),
    MINIMAL.replace('"modulus": 5', '"modulus": NaN'),
    MINIMAL.replace('"modulus": 5,', '"modulus": 5, "modulus": 5,'),
])
def test_profile_violations(text):
    with pytest.raises(SpecError):
        parse_spec(text)


def test_syntax_error_location():
    with pytest.raises(SpecError) as err:
        parse_spec('{\n  "modulus": ,\n}')
    assert err.value.line == 2 and err.value.column is not None


def test_shipped_files_match_builders():
    for stem in SHIPPED:
        path = DATA_DIR / f"{stem}.ring.json"
        assert path.read_text(encoding="utf-8") == emit_spec(regenerate_document(stem)), stem


def test_shipped_documents_are_self_testing():
    docs = shipped_documents()
    assert set(docs) == set(SHIPPED)
    for stem, doc in docs.items():
        checks = run_expectations(doc)
        assert checks, stem
        failed = [c.payload() for c in checks if not c.passed]
        assert not failed, (stem, failed)


def test_shipped_path_resolution():
    assert shipped_path("ex3.8").name == "ex3.8-verbatim.ring.json"
    assert shipped_path("ex3.8-verbatim.ring.json").name == "ex3.8-verbatim.ring.json"
    assert shipped_path("ex3.4.1.ring").name == "ex3.4.1.ring.json"
    assert shipped_path("nope") is None


def test_ex341_document_parses_to_the_instance():
    doc = load_document(shipped_path("ex3.4.1"))
    ex = build_paper_example("ex3.4.1", 5)
    assert doc.ring() == ex.ring
    assert doc.raw_grading() == Grading(ex.grading.group, ex.grading.degrees)
    assert doc.map("F1", ex.ring) == ex.maps["F1"]


def test_every_example_builds_at_p5():
    for eid in EXAMPLE_IDS:
        ex = build_paper_example(eid, 5, 8)
        assert validate_ring(ex.ring)
        expect_valid = not eid in ("ex3.2.1", "ex3.2.2", "ex3.8")
        assert bool(validate_grading(ex.ring, ex.grading)) == expect_valid, eid
        checks = run_expectations(ex.document())
        assert all(c.passed for c in checks), eid


def test_example_preconditions():
    with pytest.raises(IncompatibleModulusError):
        build_paper_example("ex3.6", 3)
    with pytest.raises(IncompatibleModulusError):
        build_paper_example("ex3.4.1", 6)
    with pytest.raises(PreconditionError):
        build_paper_example("ex4.3", 5, 3)
    with pytest.raises(KeyError):
        build_paper_example("ex9.9")
    assert imaginary_unit(5) in (2, 3) and imaginary_unit(13) ** 2 % 13 == 12


def test_ex36_other_prime():
    ex = build_paper_example("ex3.6", 13)
    assert all(c.passed for c in run_expectations(ex.document()))


def test_truncated_polynomials():
    field, g = truncated_poly_ring(5, 1)
    assert field.dim == 1 and g.degrees == ((),)
    ring, grading = truncated_poly_ring(5, 4)
    assert (ring.basis("X^2") * ring.basis("X^3")).is_zero()
    assert validate_grading(ring, grading)


@pytest.mark.parametrize("p, k", [(5, 5), (5, 10), (3, 6), (5, 8), (3, 4)])
def test_formal_derivative_is_a_derivation_iff_p_divides_k(p, k):
    ring, _ = truncated_poly_ring(p, k)
    D = AdditiveMap(ring, formal_derivative(0, k, k))
    assert bool(is_derivation(D)) == (k % p == 0)


def test_family_examples():
    ga = list(enumerate_instances("group-algebra", {"primes": [3], "max_order": 2}))
    assert [r.label for r, _ in ga] == ["Z3[1]", "Z3[Z2]"]
    full = [(r, g) for r, g in enumerate_instances("matrix-pattern", {"primes": [3], "max_n": 2})
            if r.dim == 4 and g.group.torsion == (2,)]
    assert len(full) == 1 and full[0][1].degrees == ((0,), (1,), (1,), (0,))
    free = list(enumerate_instances("free-small", {"max_dim": 1}))
    assert {tuple(r.c.reshape(-1)) for r, _ in free} == {(0,), (1,)}


@pytest.mark.parametrize("family, params", [
    ("matrix-pattern", {"primes": [2, 3], "max_n": 2}),
    ("group-algebra", {"primes": [2, 3, 5], "max_order": 4}),
    ("free-small", {"max_dim": 2}),
])
def test_families_valid_deterministic_no_duplicates(family, params):
    a = list(enumerate_instances(family, params))
    b = list(enumerate_instances(family, params))
    assert [instance_id(r, g) for r, g in a] == [instance_id(r, g) for r, g in b]
    keys = set()
    for ring, grading in a:
        assert validate_ring(ring) and validate_grading(ring, grading)
        key = (ring.modulus, ring.c.tobytes(), ring.basis_names, grading.degrees, grading.group)
        assert key not in keys
        keys.add(key)


def test_family_bounds():
    with pytest.raises(ValueError):
        list(enumerate_instances("matrix-pattern", {"max_n": 4}))
    with pytest.raises(ValueError):
        list(enumerate_instances("nonsense"))


def test_report_round_trip():
    rep = Report("sweep", 0, {"b": [1, 2], "a": {"z": None, "y": True}, "s": "text"})
    text = emit_report(rep)
    back = parse_report(text)
    assert back.command == "sweep" and back.exit_code == 0 and back.payload == rep.payload
    assert emit_report(back) == text
    with pytest.raises(SpecError):
        parse_report(text.replace('"exit_code": 0', '"exit_code": 9'))
    with pytest.raises(SpecError):
        emit_report(Report("x", 0, {"f": 0.5}))


@st.composite
def documents(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    kind = draw(st.sampled_from(["pattern", "group"]))
    if kind == "group":
        ring, grading = group_algebra(p, draw(st.sampled_from([(2,), (3,), (2, 2)])))
    else:
        from gradering.corpus.families import closed_patterns
        pos = draw(st.sampled_from(closed_patterns(2)))
        ring = matrix_pattern_ring(2, pos, p)
        grading = Grading.trivial(ring)
    n = ring.dim
    maps = {f"M{t}": AdditiveMap(ring, draw(st.lists(st.integers(0, p - 1), min_size=n * n,
                                                      max_size=n * n)))
            for t in range(draw(st.integers(0, 2)))}
    gens = [Element(ring, draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n)))]
    ideals = {"J": (draw(st.sampled_from(["left", "right", "two-sided"])), gens)}
    return document_from(ring, grading, maps, ideals, {"ring_valid": True}, draw(st.text(max_size=20)))


@given(documents())
def test_emit_parse_is_identity(doc):
    text = emit_spec(doc)
    back = parse_spec(text)
    assert back == doc
    assert emit_spec(back) == text
