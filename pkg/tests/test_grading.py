import pytest
from hypothesis import given, strategies as st

from gradering import (ZERO, BudgetExceeded, DegreeGroup, Element, Grading, SpecError,
                       UncertifiedGradingError, certify_grading, decompose,
                       enumerate_homogeneous, is_homogeneous, product_ring, validate_grading)
from gradering.corpus import build_paper_example, truncated_poly_ring
from gradering.corpus.families import group_algebra, matrix_pattern_ring
from gradering.grading import homogeneous_count

from helpers import full_matrices, upper_triangular
from oracles import homogeneous_elements


def test_degree_group_arithmetic():
    g = DegreeGroup(1, (4,))
    assert g.add((2, 3), (-5, 3)) == (-3, 2)
    assert g.identity == (0, 0)
    assert g.neg((1, 1)) == (-1, 3)
    with pytest.raises(SpecError):
        DegreeGroup(0, (1,))
    with pytest.raises(SpecError):
        g.normalize((1,))


def test_upper_triangular_grading_valid():
    ring, grading = upper_triangular()
    assert validate_grading(ring, grading)


def test_ex38_printed_grading_fails():
    ex = build_paper_example("ex3.8", 5)
    v = validate_grading(ex.ring, ex.grading)
    assert not v
    i, j, deg = v.witness
    assert (ex.ring.basis_names[i], ex.ring.basis_names[j]) == ("E12", "E21")
    assert deg == (0,)


def test_trivial_grading_always_valid(sweep_instances):
    for ring, _ in sweep_instances:
        assert validate_grading(ring, Grading.trivial(ring))


def test_uncertified_grading_refused():
    from gradering import is_gr_prime
    ring, grading = upper_triangular()
    with pytest.raises(UncertifiedGradingError):
        is_gr_prime(ring, Grading(grading.group, grading.degrees))
    with pytest.raises(UncertifiedGradingError):
        certify_grading(ring, Grading(DegreeGroup(1), ((0,), (1,), (5,))))


def test_decompose_examples():
    ring, grading = upper_triangular()
    x = ring.from_dict({"E11": 1, "E12": 2, "E22": 3})
    parts = decompose(x, grading)
    assert parts == {(0,): ring.from_dict({"E11": 1, "E22": 3}), (2,): ring.from_dict({"E12": 2})}
    assert decompose(ring.zero(), grading) == {}
    assert decompose(ring.basis("E12"), grading) == {(2,): ring.basis("E12")}


def test_is_homogeneous_examples():
    ring, grading = upper_triangular()
    assert is_homogeneous(ring.basis("E12"), grading) == (2,)
    assert is_homogeneous(ring.from_dict({"E11": 1, "E12": 1}), grading) is None
    assert is_homogeneous(ring.zero(), grading) is ZERO


def test_enumerate_homogeneous_counts():
    ring2 = matrix_pattern_ring(1, [(1, 1)], 2)
    r, g = group_algebra(2, (2,))
    assert [e.to_list() for e in enumerate_homogeneous(r, g)] == [[0, 0], [1, 0], [0, 1]]
    ring, _ = upper_triangular(3)
    grading = certify_grading(ring, Grading(DegreeGroup(0, (4,)), ((0,), (2,), (0,))))
    assert len(list(enumerate_homogeneous(ring, grading))) == 11
    big, bg = truncated_poly_ring(5, 12, degree_step=(0,))
    with pytest.raises(BudgetExceeded):
        list(enumerate_homogeneous(big, bg, budget=10))
    assert ring2.dim == 1


def test_enumeration_matches_filter(sweep_instances):
    for ring, grading in sweep_instances:
        got = {tuple(e.to_list()) for e in enumerate_homogeneous(ring, grading)}
        want = {tuple(v) for v in homogeneous_elements(ring.modulus, grading.degrees)}
        assert got == want
        assert len(got) == homogeneous_count(ring, grading)


def test_homogeneous_products_land_in_sum_degree(sweep_instances):
    for ring, grading in sweep_instances:
        H = list(enumerate_homogeneous(ring, grading))
        if len(H) > 500:
            continue
        for a in H:
            da = is_homogeneous(a, grading)
            for b in H:
                db = is_homogeneous(b, grading)
                prod = a * b
                if prod.is_zero() or da is ZERO or db is ZERO:
                    continue
                assert is_homogeneous(prod, grading) == grading.group.add(da, db)


def test_product_of_trivial_gradings():
    a, _ = upper_triangular()
    b, _ = full_matrices(5)
    ring, grading = product_ring(a, Grading.trivial(a), b, Grading.trivial(b))
    assert validate_grading(ring, grading)
    assert set(grading.degrees) == {()}


def test_ex43_ring_is_a_valid_product():
    ex = build_paper_example("ex4.3", 5, 8)
    assert validate_grading(ex.ring, ex.grading)


def test_ex321_printed_degrees_fail_on_matrix_factor():
    ex = build_paper_example("ex3.2.1", 5, 6)
    v = validate_grading(ex.ring, ex.grading)
    assert not v
    i, j, deg = v.witness
    names = ex.ring.basis_names
    assert (names[i], names[j]) == ("E12", "E23") and deg == (1, 1)


def test_product_rejects_invalid_factor():
    ex = build_paper_example("ex3.8", 5)
    b, gb = upper_triangular()
    with pytest.raises(UncertifiedGradingError):
        product_ring(ex.ring, ex.grading, b, gb)


def test_products_of_corpus_gradings_validate(sweep_instances):
    small = [(r, g) for r, g in sweep_instances if r.modulus == 2 and r.dim <= 2]
    for r, gr in small:
        for s, gs in small:
            ring, grading = product_ring(r, gr, s, gs)
            assert validate_grading(ring, grading)


@given(st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_decompose_sums_back(coords):
    ring, grading = upper_triangular()
    x = Element(ring, coords)
    parts = decompose(x, grading)
    total = ring.zero()
    for deg, part in parts.items():
        assert is_homogeneous(part, grading) == deg
        total = total + part
    assert total == x
