import numpy as np

from gradering import DegreeGroup, Grading, certify_grading
from gradering.corpus.families import matrix_pattern_ring

UPPER = [(1, 1), (1, 2), (2, 2)]
FULL = [(1, 1), (1, 2), (2, 1), (2, 2)]


def upper_triangular(p=5):
    """2x2 upper-triangular matrices, basis E11, E12, E22, Z4-graded (0, 2, 0)."""
    ring = matrix_pattern_ring(2, UPPER, p)
    grading = certify_grading(ring, Grading(DegreeGroup(0, (4,)), ((0,), (2,), (0,))))
    return ring, grading


def full_matrices(p=3, checkerboard=True):
    ring = matrix_pattern_ring(2, FULL, p)
    if checkerboard:
        grading = Grading(DegreeGroup(0, (2,)), ((0,), (1,), (1,), (0,)))
    else:
        grading = Grading.trivial(ring)
    return ring, certify_grading(ring, grading)


def rng(seed=0):
    return np.random.default_rng(seed)
