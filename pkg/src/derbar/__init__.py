"""Exact construction and verification of the minimal free resolution of the derivation
module of a generic n x (n+1) determinantal ring."""

from .bar import (BarWord, DerivationPresentation, NotApplicable, bar_differential, bar_term_basis,
                  coker_series_coefficients, der_presentation_matrix, euler_identity,
                  linearity_check, poincare_coefficients, series_coefficients, truncate_to_der,
                  verify_bar)
from .coker import (CokerResolution, DerivationVector, build_partial2, build_U, coker_descent_check,
                    dg_action, verify_dg_module)
from .determinantal import (BadDimension, GenericMatrixData, JacobianTranspose,
                            NonSquareAfterDeletion, build_generic, check_identities,
                            jacobian_transpose, signed_subminor)
from .hilbert_burch import (HilbertBurchDGA, MultTable, build_hilbert_burch, golod_condition_ring,
                            verify_dga)
from .homological import (BasisLabel, ChainElement, GradedComplex, InvalidLabel, VerificationReport,
                          be_condition_one, compose_check, minimality_check, rank_probe)
from .poly import (MissingAssignment, NonSquare, ParseError, Polynomial, PolyMatrix, determinant,
                   normal_form, parse_poly, partial_derivative, poly_add, poly_mul, specialize)

__version__ = "0.1.0"
