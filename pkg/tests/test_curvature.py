"""Curvature package: golden invariants and the full identity suite."""

import numpy as np
import pytest

from qcflat.curvature import (
    flatness_R,
    verify_bianchi,
    verify_div_identity,
    verify_ricci_formulas,
    verify_sp1_part,
)
from qcflat.scalars import Q
from qcflat.verify import all_passed


def _norm_sq(arr):
    return sum(v * v for v in np.asarray(arr).ravel())


# golden invariants frozen from an independent symbolic recomputation
# (tools/oracle_curvature.py): generic ansatz solved with sympy, explicit
# loops, no shared code with the package
GOLDEN = {
    "g1": {
        "Scal": Q(-12),
        "Ric_diag": [Q(-3)] * 4,
        "RH_norm_sq": Q(24),
    },
    "g3": {
        "Scal": Q(-24),
        "Ric_diag": [Q(-7), Q(-7), Q(-5), Q(-5)],
        "RH_norm_sq": Q(106),
    },
}


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_invariants(name, request):
    from conftest import run_pipeline

    pl = run_pipeline(name)
    golden = GOLDEN[name]
    assert pl.cp.Scal == golden["Scal"]
    assert [pl.cp.Ric[i, i] for i in range(4)] == golden["Ric_diag"]
    assert np.array_equal(pl.cp.Ric, np.diag(golden["Ric_diag"]))
    assert _norm_sq(pl.cp.RH) == golden["RH_norm_sq"]


def test_heisenberg_curvature_vanishes(heis1, heis2):
    for pl in (heis1, heis2):
        rh_zero, full_zero = flatness_R(pl.cp, pl.qc)
        assert rh_zero and full_zero
        assert pl.cp.Scal == 0


def test_g1_is_curved(g1):
    rh_zero, full_zero = flatness_R(g1.cp, g1.qc)
    assert not rh_zero and not full_zero


def test_sp1_part(pipeline):
    checks = verify_sp1_part(pipeline.cp, pipeline.qc)
    assert all_passed(checks), [str(c) for c in checks if not c.passed]


def test_ricci_formulas(pipeline):
    checks = verify_ricci_formulas(pipeline.cp, pipeline.td, pipeline.qc)
    assert all_passed(checks), [str(c) for c in checks if not c.passed]


def test_divergence_identity(pipeline):
    checks = verify_div_identity(pipeline.cp, pipeline.td, pipeline.qc, pipeline.conn)
    assert all_passed(checks), [str(c) for c in checks if not c.passed]


@pytest.mark.parametrize("level", ["basic", "extended"])
def test_bianchi_suite(pipeline, level):
    checks = verify_bianchi(pipeline.cp, pipeline.td, pipeline.qc, pipeline.conn, level=level)
    assert all_passed(checks), [str(c) for c in checks if not c.passed]


def test_residuals_are_exact_zero(pipeline):
    """In exact mode every listed residual is literally zero, not just small."""
    checks = verify_bianchi(pipeline.cp, pipeline.td, pipeline.qc, pipeline.conn, level="extended")
    assert all(c.residual == 0.0 for c in checks)
