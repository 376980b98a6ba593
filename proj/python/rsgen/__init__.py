"""Difference matrices and generalized Rudin-Shapiro sequences."""

try:
    from ._rsgen import (
        Generator,
        build_matrix,
        classical_rs,
        find_irreducible,
        load_matrix,
        normalize_matrix,
        theorem_bound,
        verify_matrix,
    )
except ImportError:  # in-tree test runs put the extension on sys.path directly
    from _rsgen import (
        Generator,
        build_matrix,
        classical_rs,
        find_irreducible,
        load_matrix,
        normalize_matrix,
        theorem_bound,
        verify_matrix,
    )

__all__ = [
    "Generator",
    "build_matrix",
    "classical_rs",
    "find_irreducible",
    "load_matrix",
    "normalize_matrix",
    "theorem_bound",
    "verify_matrix",
]
