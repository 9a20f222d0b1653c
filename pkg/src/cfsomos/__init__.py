"""Exact continued fractions of quadratic irrationals over Q[X].

Expands Z = (Y + A)/2 with Y^2 = D(X) into its polynomial continued
fraction, extracts the genus 1 and genus 2 recurrences that the partial
quotients satisfy, generates and verifies Somos / elliptic divisibility
sequences, and certifies pseudo-elliptic integrals.
"""

from .cf import (
    Certificate,
    CFStep,
    Curve,
    PeriodReport,
    State,
    certificate,
    cf_init,
    continuants,
    detect_quasi_period,
    expand,
    is_reduced,
    step_backward,
    step_forward,
)
from .genus1 import (
    CubicModel,
    Genus1Line,
    Genus1Remainder,
    Point,
    Reconstruction,
    TranslationReport,
    g1_add,
    g1_cubic_model,
    g1_denominators,
    g1_eds_of_curve,
    g1_e_relation,
    g1_extract,
    g1_identity9,
    g1_identity10,
    g1_mul,
    g1_neg,
    g1_remainder,
    g1_somos4_check,
    g1_somos4_to_curve,
    g1_verify_translation,
    isomorphism_scale,
    rational_sqrt,
)
from .genus2 import (
    DRecursionReport,
    Genus2IdentityReport,
    Genus2Line,
    Genus2Remainder,
    g2_cpoly,
    g2_d_recursion,
    g2_extract,
    g2_identities,
    g2_remainder,
    g2_t_recursion,
    g2_t_sequence,
)
from .poly import (
    MINUS_INF,
    Poly,
    PolyParseError,
    X,
    format_poly,
    format_rational,
    norm_over_roots,
    parse_rational,
    resultant,
    sqrt_decompose,
)
from .resolve import ResolvedRelation, resolve_bilinear
from .somos import (
    EDSSpec,
    Sequence,
    SomosSpec,
    eds_divisibility,
    eds_generate,
    eds_lookup,
    eds_window,
    hone_map,
    identity21,
    integrality_scan,
    somos5_split,
    somos_check,
    somos_generate,
    swart_vdp_identity,
    ward_identity,
)

__all__ = [
    "Certificate",
    "CFStep",
    "CubicModel",
    "Curve",
    "DRecursionReport",
    "EDSSpec",
    "Genus1Line",
    "Genus1Remainder",
    "Genus2IdentityReport",
    "Genus2Line",
    "Genus2Remainder",
    "MINUS_INF",
    "PeriodReport",
    "Point",
    "Poly",
    "PolyParseError",
    "Reconstruction",
    "ResolvedRelation",
    "Sequence",
    "SomosSpec",
    "State",
    "TranslationReport",
    "X",
    "certificate",
    "cf_init",
    "continuants",
    "detect_quasi_period",
    "eds_divisibility",
    "eds_generate",
    "eds_lookup",
    "eds_window",
    "expand",
    "format_poly",
    "format_rational",
    "g1_add",
    "g1_cubic_model",
    "g1_denominators",
    "g1_eds_of_curve",
    "g1_e_relation",
    "g1_extract",
    "g1_identity9",
    "g1_identity10",
    "g1_mul",
    "g1_neg",
    "g1_remainder",
    "g1_somos4_check",
    "g1_somos4_to_curve",
    "g1_verify_translation",
    "g2_cpoly",
    "g2_d_recursion",
    "g2_extract",
    "g2_identities",
    "g2_remainder",
    "g2_t_recursion",
    "g2_t_sequence",
    "hone_map",
    "identity21",
    "integrality_scan",
    "is_reduced",
    "isomorphism_scale",
    "norm_over_roots",
    "parse_rational",
    "rational_sqrt",
    "resolve_bilinear",
    "resultant",
    "somos5_split",
    "somos_check",
    "somos_generate",
    "sqrt_decompose",
    "step_backward",
    "step_forward",
    "swart_vdp_identity",
    "ward_identity",
]
