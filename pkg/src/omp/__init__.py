"""Oriented matroid programming: program digraphs, monotone paths and Holt-Klee checks."""
from .catalog import CatalogEntry, catalog_get, catalog_list
from .digraph import Digraph
from .extension import (
    LexRule,
    Localization,
    extend,
    lift_extension,
    localization_from_lex,
    perturbation_extension,
    validate_localization,
)
from .holtklee import (
    AvoidanceCertificate,
    CutCertificate,
    PathSystem,
    check_holt_klee,
    covering_covector,
    max_independent_paths,
    search_avoiding_extension,
    verify_avoidance_certificate,
    verify_levi_certificate,
)
from .matroid import OMError, OrientedMatroid, get_cap, set_cap
from .pomcp import (
    PomcpInstance,
    check_pomcp_holt_klee,
    check_property_p,
    cube_subdivision,
    p_matrix_check,
    subdivision_digraph,
    validate_subdivision,
)
from .program import OMProgram, program_from_lp
from .tracer import TracedPath, build_kh, interval_membership, trace_facet_avoiding, trace_path

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "catalog_get",
    "catalog_list",
    "Digraph",
    "LexRule",
    "Localization",
    "extend",
    "lift_extension",
    "localization_from_lex",
    "perturbation_extension",
    "validate_localization",
    "AvoidanceCertificate",
    "CutCertificate",
    "PathSystem",
    "check_holt_klee",
    "covering_covector",
    "max_independent_paths",
    "search_avoiding_extension",
    "verify_avoidance_certificate",
    "verify_levi_certificate",
    "OMError",
    "OrientedMatroid",
    "get_cap",
    "set_cap",
    "PomcpInstance",
    "check_pomcp_holt_klee",
    "check_property_p",
    "cube_subdivision",
    "p_matrix_check",
    "subdivision_digraph",
    "validate_subdivision",
    "OMProgram",
    "program_from_lp",
    "TracedPath",
    "build_kh",
    "interval_membership",
    "trace_facet_avoiding",
    "trace_path",
]
