"""Exact multivariate Lagrange interpolation on algebraic manifolds.

Dimension formulas for polynomial spaces restricted to manifolds of
sufficient intersection, rank certificates for properly posed node sets,
canonical-form reduction, H-base decomposition, superposition of node
sets, and Cayley-Bacharach reductions -- all over exact rationals.
"""

from .construct import (
    CBPartition,
    CBVerdict,
    ChainEntry,
    CurveChain,
    InterpolationProblem,
    SuperpositionStep,
    build_curve_chain,
    cb_check,
    cb_extend_curve,
    cb_reduce,
    gen_conic_nodes,
    gen_line_nodes,
    interpolate,
    parabola_manifold,
    superpose_interpolate,
    superpose_nodes,
)
from .dimension import (
    DegreeProfile,
    HilbertTable,
    backward_diff_e,
    binom_e,
    curve_dimension_closed_form,
    dim_along,
    hilbert_table,
)
from .errors import (
    CountMismatchError,
    DecompositionError,
    DimensionMismatchError,
    HypothesisError,
    ImproperNodeSetError,
    InputError,
    InsufficientIntersectionError,
    InternalCheckError,
    OffManifoldError,
    ParseError,
    PpsnError,
)
from .macaulay import (
    Decomposition,
    HBaseReport,
    Manifold,
    MonomialSelection,
    ReducedForm,
    canonical_monomials,
    hbase_decompose,
    infinity_check,
    reduce_modulo,
    select_monomials,
    verify_hbase,
)
from .mpoly import (
    MonomialBasis,
    Polynomial,
    as_fraction,
    as_point,
    monomial_basis,
    monomial_key,
    monomials_of_degree,
    parse_polynomial,
)
from .nodes import (
    FactorableSystem,
    IntersectionReport,
    NodeSet,
    PPSNCertificate,
    evaluation_matrix,
    extract_nested_ppsn,
    format_nodes,
    intersect_factorable,
    parse_nodes_text,
    parse_system_text,
    vandermonde,
    verify_ppsn,
)

__version__ = "1.0.0"

__all__ = [
    "CBPartition",
    "CBVerdict",
    "ChainEntry",
    "CountMismatchError",
    "CurveChain",
    "Decomposition",
    "DecompositionError",
    "DegreeProfile",
    "DimensionMismatchError",
    "FactorableSystem",
    "HBaseReport",
    "HilbertTable",
    "HypothesisError",
    "ImproperNodeSetError",
    "InputError",
    "InsufficientIntersectionError",
    "InternalCheckError",
    "InterpolationProblem",
    "IntersectionReport",
    "Manifold",
    "MonomialBasis",
    "MonomialSelection",
    "NodeSet",
    "OffManifoldError",
    "PPSNCertificate",
    "ParseError",
    "Polynomial",
    "PpsnError",
    "ReducedForm",
    "SuperpositionStep",
    "as_fraction",
    "as_point",
    "backward_diff_e",
    "binom_e",
    "build_curve_chain",
    "canonical_monomials",
    "cb_check",
    "cb_extend_curve",
    "cb_reduce",
    "curve_dimension_closed_form",
    "dim_along",
    "evaluation_matrix",
    "extract_nested_ppsn",
    "format_nodes",
    "gen_conic_nodes",
    "gen_line_nodes",
    "hbase_decompose",
    "hilbert_table",
    "infinity_check",
    "interpolate",
    "intersect_factorable",
    "monomial_basis",
    "monomial_key",
    "monomials_of_degree",
    "parabola_manifold",
    "parse_nodes_text",
    "parse_polynomial",
    "parse_system_text",
    "reduce_modulo",
    "select_monomials",
    "superpose_interpolate",
    "superpose_nodes",
    "vandermonde",
    "verify_hbase",
    "verify_ppsn",
]
