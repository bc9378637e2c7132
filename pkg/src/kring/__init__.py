"""Representation rings, restriction kernels, Koszul resolutions and the
K-theory of the homogeneous spaces SL(2n)/Sp(2n) and E6/F4."""

from .branchrules import EmbeddingPair, restrict_character, restriction_matrix
from .charcalc import (Character, adams_operation, decompose_character, exterior_power,
                       irreducible_character, tensor_product)
from .errors import CapacityError, InvariantViolation, KringError, UnsupportedTypeError, VerificationError
from .intertwine import loop_matrix, rep_matrices, solve_intertwiner
from .koszulhom import build_koszul, tor_ranks, truncated_exactness
from .ktheory import brauer_class, e2_page, k_theory_split, k_theory_twisted, poincare_series
from .repring import char_to_poly, group_ring, kernel_generators, restriction_hom, verify_kernel_generation
from .rootdata import build_root_system, cartan_matrix, dominant_representative, weyl_dimension, weyl_orbit

__version__ = "0.1.0"
