"""Exact computer algebra for multi-centered dilatations, deformation
spaces, and their panel rewrites, over the rationals."""

from .rings import (GREVLEX, LEX, Block, Polynomial, PolyParseError,
                    RingContext, RingError, parse_poly, poly_to_string)
from .groebner import (Ideal, QuotientRingContext, SubalgebraMembership,
                       buchberger, check_regular_sequence, eliminate,
                       eliminate_to_subring, hilbert_function,
                       ideal_intersect, ideal_quotient, reduce_poly,
                       ring_map_kernel, saturate)
from .oracle import linear_membership
from .monomial_ideals import (MonomialIdeal, Report, delta_min, mono_intersect,
                              mono_member, mono_power, mono_product, mono_sum,
                              verify_coroap, verify_disjoint_support,
                              verify_nested_powers)
from .dilatation import (Center, Comparison, Fraction, MultiCenter,
                         PresentedAlgebra, algebra_compare, delta_criterion,
                         dilatation_presentation, fraction_member,
                         iterate_dilatation, kernel_modulo)
from .polyptych import (DNode, Leaf, PanelError, Polyptych, canonicalize,
                        emit_dot, enumerate_polyptych, initial_panel,
                        panelize, to_string, validate)
from .deformation import (AssumptionReport, DatumReport, DeformationDatum,
                          PanelizationResult, StrataReport, build_an_datum,
                          check_assumption, deformation_space, evaluate_panel,
                          stratum, validate_datum, verify_panelization,
                          verify_strata)
from .dsl import (CheckStmt, DslError, WorkbenchDocument, parse_document,
                  render_document)
from .cli import CheckResult, emit_json, fraction_to_string, main

__version__ = "0.1.0"
