"""Exact computations with fat points, symbolic powers and line arrangements.

Gröbner-basis routines and an independent linear-algebra oracle compute
graded pieces of symbolic and ordinary powers of ideals of points in
projective space, so every containment verdict can be checked two ways.
"""

from .coeffs import QQ, QW, NumberField, PrimeField, Rationals, field_make
from .containment import (ContainmentReport, contains_ideal, cor34_check, harbourne_check,
                          harbourne_huneke_check, postulation_criterion, prop21_check,
                          product_containment_check, symbolic_containment)
from .groebner import Ideal, buchberger, ideal_equal, member, reduce
from .ideal_ops import (colon, ideal_power, ideal_product, ideal_sum, intersect,
                        irrelevant_ideal, saturate)
from .invariants import (alpha, beta_threshold, hilbert_function, regularity_fat_points,
                         satdeg, waldschmidt_bounds)
from .oracle import alpha_oracle, containment_oracle, power_piece_membership, symbolic_piece_dim
from .poly import GREVLEX, LEX, Polynomial, parse_polynomial
from .schemes import (FatPointScheme, LineArrangement, ProjectivePoint, arrangement_make,
                      fat_point_ideal, intersection_counts, linear_form, load_fixture,
                      parse_fixture, point_ideal, random_points, singular_locus,
                      subproducts_ideal, symbolic_power)

__version__ = "0.1.0"
