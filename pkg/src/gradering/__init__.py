"""Finite-dimensional graded rings over Z/m and the derivations that live on them."""

from .errors import (BudgetExceeded, GraderingError, IncompatibleModulusError, MixedRingError,
                     PreconditionError, SpecError, UncertifiedGradingError,
                     UnsupportedModulusError)
from .grading import (ZERO, DegreeGroup, Grading, certify_grading, decompose,
                      enumerate_homogeneous, is_homogeneous, product_ring, validate_grading)
from .ideals import IdealHandle, ideal_generate, is_graded_ideal, membership
from .maps import (AdditiveMap, Classification, classify_map, find_associated_derivation,
                   inner_derivation, is_derivation, is_homogeneous_derivation,
                   is_homogeneous_map, lie_bracket, pair_map, scalar_multiple, split_map, sum_map)
from .primeness import PrimenessReport, is_gr_prime, is_prime
from .ring import (Element, Ring, RingSpec, Verdict, add, center, centralizer, commutator,
                   is_commutative, jordan, make_ring, mul, validate_ring)
from .theorems import (ConditionKind, TheoremVerdict, check_condition, check_lemma_2_1,
                       check_prop_F_nonzero, check_prop_restriction, search_problem, sweep,
                       verify_theorem_4_1, verify_theorem_4_2)

__version__ = "0.1.0"
