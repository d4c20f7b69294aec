"""Canonical connection solve, its defining axioms, and the torsion data."""

import numpy as np
import pytest

from qcflat.biquard import verify_axioms, verify_torsion_properties
from qcflat.scalars import Q
from qcflat.verify import all_passed


def test_solution_is_unique(pipeline):
    conn = pipeline.conn
    assert conn.rank == conn.n_unknowns


def test_axioms(pipeline):
    checks = verify_axioms(pipeline.qc, pipeline.conn)
    assert all_passed(checks), [str(c) for c in checks if not c.passed]


def test_torsion_properties(pipeline):
    checks = verify_torsion_properties(pipeline.td, pipeline.qc)
    assert all_passed(checks), [str(c) for c in checks if not c.passed]


@pytest.mark.parametrize("fix", ["heis1", "heis2"])
def test_heisenberg_connection_vanishes(fix, request):
    pl = request.getfixturevalue(fix)
    assert all(v == 0 for v in pl.conn.gamma.ravel())
    assert all(v == 0 for v in pl.conn.alpha.ravel())
    # only the ever-present contact part 2 omega_s(X,Y) xi_s survives
    for endo in pl.td.T_xi:
        assert all(v == 0 for v in endo.ravel())
    hdim = pl.qc.hdim
    contact = pl.td.T[:hdim, :hdim, hdim:]
    expected = np.stack([2 * w for w in pl.qc.omega], axis=-1)
    assert np.array_equal(contact, expected)


def test_g1_torsion_vanishes(g1):
    td = g1.td
    assert all(v == 0 for v in td.T0.ravel())
    assert all(v == 0 for v in td.U.ravel())
    assert all(v == 0 for v in td.u.ravel())
    # but the connection itself is not flat
    assert any(v != 0 for v in g1.conn.gamma.ravel())


def test_g3_torsion_endomorphism(g3):
    expected = np.diag([Q(-1, 4), Q(-1, 4), Q(1, 4), Q(1, 4)])
    assert np.array_equal(g3.td.T0, expected)
    assert all(v == 0 for v in g3.td.U.ravel())  # n = 1


def test_sp1_forms_horizontal_part(g1, g3):
    hdim = g1.qc.hdim
    assert all(v == 0 for v in g1.conn.alpha[:, :hdim].ravel())
    # g3 carries nonvanishing vertical sp(1) forms
    assert any(v != 0 for v in g3.conn.alpha.ravel())
