"""Classical multidimensional scaling with exact small-n solutions and
per-eigenvalue distortion diagnostics."""

from .closed_form import (
    TriangleSides,
    TriangleSolution,
    euclidean_check,
    isosceles_coords,
    shift_to_vertex,
    solve_triangle,
    solve_triangle_general,
    solve_two_points,
    triangle_delta,
)
from .diagnostics import (
    distortion_report,
    eigenvector_difference_table,
    g_terms,
    scan_triangle_violations,
)
from .errors import MDSError
from .io import parse_matrix_csv, rail_fixture
from .matrix_core import Spectrum, SymMatrix, helmert_matrix, jacobi_eigh
from .pipeline import (
    DissimilarityMatrix,
    build_a,
    collinear_lambda,
    double_center,
    embed,
    spectrum_of,
    verify_trace_identity,
)

__version__ = "0.1.0"
