"""Exact computation of multilinear polynomial images on generalized
quaternion algebras: exact field arithmetic (rationals, prime fields, binary
fields, real quadratic towers), quaternion algebras in both characteristic
presentations, constructive image decompositions, and an exhaustive
finite-field oracle."""

from .fields import (BinaryField, DescriptorMismatch, Field, FieldElement,
                     FieldError, InfiniteFieldError, NonPositiveRadicand,
                     PrimeField, RationalField, TowerField, arith,
                     characteristic, embed, enumerate_elements,
                     parse_field_spec, sample_element, sqrt_if_square,
                     tower_adjoin)
from .quaternion import (AlgebraSpec, AlgebraError, NotInvertible, Quaternion,
                         SpecMismatch, basis_product, char_two_algebra,
                         commutator, enumerate_quaternions, h_ab,
                         hamilton_tower, in_h0, in_s2_target_set, is_central,
                         norm_of, odd_char_algebra, parse_algebra_spec,
                         parse_quaternion, qinv, qmul, sample_quaternion,
                         trace_of)
from .multilinear import (ArityError, FreeExpansion, MultilinearPoly,
                          NotRepresentable, coefficient_sum, evaluate,
                          evaluate_vk_nested, expansion_of, fit_deg3_form,
                          fit_deg4_form, in_s2_tideal, make_deg3_form,
                          make_deg4_form, make_s2, make_standard, make_vk,
                          parse_poly_spec, poly_from_json, random_multilinear,
                          relabel)
from .solvers import (CrossSolution, DegenerateCase, ImageWitness,
                      NoInvertibleCommutator, NoNonzeroSolution,
                      NoSolutionCertificate, NotCanonicalizable,
                      PolynomialCentralOrZero, PostCheckError,
                      SearchBudgetExhausted, SolverError, SphereSolution,
                      TargetNotPure, basis_value_search, char2_sum_decompose,
                      char2_product_sum_decompose, commutator_decompose,
                      conjugate_to_canonical, express_pure_in_image,
                      flaut_condition, realize_element, solve_cross,
                      solve_intertwiner, solve_sphere_orthogonal,
                      vk_decompose, waring_decompose)
from .oracle import (BudgetExceeded, CenterTheoremResult, ImageClass,
                     ImageReport, IntegersMod, Matrix, TrichotomyResult,
                     UnitsCheckResult, VkCollapseResult, enumerate_image,
                     image_set, is_trace_vanishing, matrix_evaluate,
                     matrix_units_check, sample_image, verify_center_theorem,
                     verify_trichotomy, verify_vk_collapse)

__version__ = "0.1.0"
