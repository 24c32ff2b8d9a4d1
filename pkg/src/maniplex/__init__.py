"""Maniplexes: flag graphs, their face posets, voltage double covers,
rank-raising extensions, and the sparse/semisparse classification."""

__version__ = "0.1.0"

from .core import (
    Face,
    FormatError,
    Maniplex,
    ValidationReport,
    Violation,
    automorphism_count,
    components,
    dual,
    faces,
    isomorphic,
    maniplex_from_json,
    maniplex_to_json,
    restrict,
    to_dot,
    validate,
)
from .corpus import corpus_names, platonic, torus_44
from .cosets import CosetCapExceeded, Presentation, coset_enumerate, string_coxeter
from .counterexample import (
    BuildError,
    ThetaNotFound,
    build_B,
    build_B_star,
    build_E_theta,
    find_theta,
    verify_B_conditions,
)
from .coxeter import Verdict, act, coset_words, reduce_word, schreier_correspondence, verdict
from .extension import extend, verify_extension, y_profile
from .poset import (
    RankedPoset,
    flag_function,
    flag_graph_of,
    is_faithful,
    is_polytopal,
    is_polytope,
    pos_of,
    poset_isomorphism,
    rank3_theorems,
    section,
)
from .voltage import VoltageAssignment, cover_is_maniplex, double_cover, lift_connected

__all__ = [
    "__version__",
    "Face",
    "FormatError",
    "Maniplex",
    "ValidationReport",
    "Violation",
    "automorphism_count",
    "components",
    "dual",
    "faces",
    "isomorphic",
    "maniplex_from_json",
    "maniplex_to_json",
    "restrict",
    "to_dot",
    "validate",
    "corpus_names",
    "platonic",
    "torus_44",
    "CosetCapExceeded",
    "Presentation",
    "coset_enumerate",
    "string_coxeter",
    "BuildError",
    "ThetaNotFound",
    "build_B",
    "build_B_star",
    "build_E_theta",
    "find_theta",
    "verify_B_conditions",
    "Verdict",
    "act",
    "coset_words",
    "reduce_word",
    "schreier_correspondence",
    "verdict",
    "extend",
    "verify_extension",
    "y_profile",
    "RankedPoset",
    "flag_function",
    "flag_graph_of",
    "is_faithful",
    "is_polytopal",
    "is_polytope",
    "pos_of",
    "poset_isomorphism",
    "rank3_theorems",
    "section",
    "VoltageAssignment",
    "cover_is_maniplex",
    "double_cover",
    "lift_connected",
]
