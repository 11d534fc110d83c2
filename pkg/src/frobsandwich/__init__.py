"""Quotients of the projective plane by p-closed vector fields in characteristic 2."""

from .charts import (ChartError, ChartExpr, SingularPoint, degree_of_foliation, singular_scheme,
                     transport)
from .derivation import (DerivationError, NormalFormCoefficients, PolyDerivation, is_p_closed,
                         make_normalized)
from .driver import (Configuration, ConfigurationError, SurveyReport, chern_check, configuration,
                     configuration_affine, survey)
from .gf2k import FieldCtx, FieldElement, FieldError, field_for_order, field_make
from .invariants import HypersurfacePresentation, InvariantError, invariant_ring, localize
from .poly import MultiPoly, ParseError, gcd, local_quotient_dim, parse_poly
from .rdp import (DualGraph, RDPError, RDPType, classify_rdp, normalize_square_part,
                  resolve_dual_graph, tjurina)

__version__ = "0.1.0"

__all__ = [
    "ChartError", "ChartExpr", "Configuration", "ConfigurationError", "DerivationError",
    "DualGraph", "FieldCtx", "FieldElement", "FieldError", "HypersurfacePresentation",
    "InvariantError", "MultiPoly", "NormalFormCoefficients", "ParseError", "PolyDerivation",
    "RDPError", "RDPType", "SingularPoint", "SurveyReport", "chern_check", "classify_rdp",
    "configuration", "configuration_affine", "degree_of_foliation", "field_for_order",
    "field_make", "gcd", "invariant_ring", "is_p_closed", "local_quotient_dim", "localize",
    "make_normalized", "normalize_square_part", "parse_poly", "resolve_dual_graph",
    "singular_scheme", "survey", "tjurina", "transport",
]
