"""Exact-arithmetic workbench for heterogeneous Ramsey algebras."""

__version__ = "0.1.0"

from .colorings import Coloring, parse_coloring
from .core import MATRIX, SCALAR, Matrix, Signature, SortWord, make_signature, operation, sorted_prefix
from .errors import RamseyAlgebraError
from .matrices import D_matrix, G_matrix, det, diag_embed, matrix_signature
from .reduction import Bounds, check_homogeneous, check_reduction, enumerate_sorted_reductions, fr_set
from .terms import enumerate_orderly_terms, evaluate, is_orderly, parse_term

__all__ = [
    "Bounds",
    "Coloring",
    "D_matrix",
    "G_matrix",
    "MATRIX",
    "Matrix",
    "RamseyAlgebraError",
    "SCALAR",
    "Signature",
    "SortWord",
    "check_homogeneous",
    "check_reduction",
    "det",
    "diag_embed",
    "enumerate_orderly_terms",
    "enumerate_sorted_reductions",
    "evaluate",
    "fr_set",
    "is_orderly",
    "make_signature",
    "matrix_signature",
    "operation",
    "parse_coloring",
    "parse_term",
    "sorted_prefix",
]
