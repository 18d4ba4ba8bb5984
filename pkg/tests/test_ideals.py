import numpy as np
import pytest

from gradering import (Element, UnsupportedModulusError, decompose, ideal_generate,
                       is_graded_ideal, membership)
from gradering.corpus import build_paper_example
from gradering.ideals import _closure_step, ideal_from_basis, whole_ring
from gradering.modlinalg import span_points
from gradering.ring import RingSpec, make_ring
from gradering.theorems import ideal_family

from helpers import upper_triangular


def test_zero_ideal():
    ring, grading = upper_triangular()
    I = ideal_generate([ring.zero()], "two-sided", ring)
    assert I.is_zero() and is_graded_ideal(I, grading)
    assert membership(ring.zero(), I)


def test_ideal_generated_by_E12():
    ring, _ = upper_triangular()
    I = ideal_generate([ring.basis("E12")], "two-sided", ring)
    assert I.rank == 1
    assert membership(ring.basis("E12"), I)
    assert not membership(ring.basis("E11"), I)


def test_ex43_ideal():
    ex = build_paper_example("ex4.3", 5, 8)
    I = ideal_generate(ex.ideals["I"][1], "two-sided", ex.ring)
    assert I.rank == 1 + (8 - 3)
    assert is_graded_ideal(I, ex.grading)
    names = ex.ring.basis_names
    for name in ["E12", "X^3", "X^7"]:
        assert membership(ex.ring.basis(name), I)
    for name in ["E11", "1", "X", "X^2"]:
        assert not membership(ex.ring.basis(name), I)
    assert len(names) == 10


def test_non_graded_line():
    ring, grading = upper_triangular()
    line = ideal_from_basis([ring.from_dict({"E11": 1, "E12": 1}).coords], "left", ring)
    v = is_graded_ideal(line, grading)
    assert not v


def test_span_check_rejects_non_ideal():
    ring, _ = upper_triangular()
    with pytest.raises(ValueError):
        ideal_from_basis([ring.basis("E11").coords], "two-sided", ring)


def test_composite_modulus_refused():
    ring = make_ring(RingSpec(4, ["1"], [(0, 0, 0, 1)]))
    with pytest.raises(UnsupportedModulusError):
        ideal_generate([ring.basis(0)], "left", ring)


def _graded_brute(I, grading):
    """Decompose every element of the span and test membership of each part."""
    ring = I.ring
    members = {tuple(v) for v in span_points(I.basis, ring.modulus)} if I.rank else {(0,) * ring.dim}
    for v in members:
        for part in decompose(Element(ring, v), grading).values():
            if tuple(part.to_list()) not in members:
                return False
    return True


def test_closure_is_fixpoint_and_gradedness_matches_brute(sweep_instances):
    checked = 0
    for ring, grading in sweep_instances:
        for side in ("left", "right", "two-sided"):
            family = ideal_family(ring, grading, (side,))
            gens = [Element(ring, v) for v in np.eye(ring.dim, dtype=np.int64)]
            extra = [ideal_generate([gens[0] + gens[-1]], side, ring)] if ring.dim > 1 else []
            for I in family + extra:
                assert _closure_step(ring, I.basis, side).shape == I.basis.shape
                assert bool(is_graded_ideal(I, grading)) == _graded_brute(I, grading)
                checked += 1
    assert checked > 100


def test_whole_ring_contains_everything():
    ring, _ = upper_triangular()
    R = whole_ring(ring)
    assert all(membership(e, R) for e in ring.basis_elements())
