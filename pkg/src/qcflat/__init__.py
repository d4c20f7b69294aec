"""Exact-arithmetic curvature analysis of left-invariant quaternionic
contact structures on Lie groups."""

from .scalars import EXACT, Q, ScalarMode
from .structure import (
    LieFrame,
    NotALieAlgebraError,
    StructureFile,
    StructureSyntaxError,
    parse,
    serialize,
    to_lie_frame,
)
from .qc import QcStructure, QcValidationError, build_qc, standard_quaternionic_triple
from .biquard import compute_torsion, solve_connection
from .curvature import compute_curvature
from .wqc import compute_WR, flatness_verdict
from .builtins import builtin_names, get_builtin
from .report import AnalysisReport
from .cli import analyze

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "Q",
    "ScalarMode",
    "LieFrame",
    "NotALieAlgebraError",
    "StructureFile",
    "StructureSyntaxError",
    "parse",
    "serialize",
    "to_lie_frame",
    "QcStructure",
    "QcValidationError",
    "build_qc",
    "standard_quaternionic_triple",
    "solve_connection",
    "compute_torsion",
    "compute_curvature",
    "compute_WR",
    "flatness_verdict",
    "builtin_names",
    "get_builtin",
    "AnalysisReport",
    "analyze",
    "__version__",
]
