"""Conformal rescaling engine and the SO(3) rotation action."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcflat.conformal import (
    ConformalJet,
    check_covariance,
    compute_M,
    compute_S,
    covariance_suite,
    random_jet,
    rotate_structure,
    rotation_suite,
    so3_from_quaternion,
    verify_M_traces,
    verify_S_constraints,
)
from qcflat.scalars import EXACT, Q
from qcflat.verify import all_passed


def _constant_jet(qc, h):
    return ConformalJet(h=h, dh=EXACT.zeros(qc.dim), hess_sym=EXACT.zeros(qc.hdim, qc.hdim))


def _vertical_jet(qc, s, value):
    dh = EXACT.zeros(qc.dim)
    dh[qc.vert(s)] = value
    return ConformalJet(h=Q(1), dh=dh, hess_sym=EXACT.zeros(qc.hdim, qc.hdim))


def test_constant_factor_gives_trivial_difference_tensor(g1):
    jet = _constant_jet(g1.qc, Q(3))
    sd = compute_S(jet, g1.qc)
    assert all(v == 0 for v in sd.S_h.ravel())
    for sv in sd.S_v:
        assert all(v == 0 for v in sv.ravel())
    md = compute_M(jet, g1.qc)
    assert all(v == 0 for v in md.M.ravel())
    assert md.trM == 0


def test_vertical_jet_m_tensor(g3):
    """A jet with only dh(xi_2) = q contributes M = -(q/2) omega_2, whose
    omega-trace is the closed-form value -2n q."""
    qc = g3.qc
    q = Q(5, 3)
    jet = _vertical_jet(qc, 2, q)
    md = compute_M(jet, qc)
    assert np.array_equal(md.M, -q * Q(1, 2) * qc.omega[1])
    assert md.M_s[1] == -2 * qc.n * q
    assert md.M_s[0] == 0 and md.M_s[2] == 0 and md.trM == 0
    assert all_passed(verify_M_traces(md, jet, qc))


def test_vertical_jet_reeb_difference(g1):
    """With only dh(xi_1) nonzero the Reeb-slot difference tensor reduces to
    the omega rotation terms."""
    qc = g1.qc
    t = Q(2, 7)
    jet = _vertical_jet(qc, 1, t)
    sd = compute_S(jet, qc)
    hdim = qc.hdim
    # the i = 1 slot sees the antisymmetric Hessian part through the bracket
    assert np.array_equal(sd.S_v[0], -t * qc.g[:hdim, :hdim])
    assert np.array_equal(sd.S_v[1], -t * qc.omega[2])
    assert np.array_equal(sd.S_v[2], t * qc.omega[1])
    assert all_passed(verify_S_constraints(sd, jet, qc))


def test_random_jet_is_deterministic(g1):
    a = random_jet(g1.qc, 11)
    b = random_jet(g1.qc, 11)
    c = random_jet(g1.qc, 12)
    assert a.h == b.h and np.array_equal(a.dh, b.dh) and np.array_equal(a.hess_sym, b.hess_sym)
    assert not (a.h == c.h and np.array_equal(a.dh, c.dh) and np.array_equal(a.hess_sym, c.hess_sym))
    assert a.h > 0


def test_single_jet_gate(pipeline):
    jet = random_jet(pipeline.qc, 123)
    checks = check_covariance(pipeline.wrd, pipeline.cp, jet, pipeline.qc)
    assert all_passed(checks), [str(c) for c in checks if not c.passed]
    assert all(c.residual == 0.0 for c in checks)


def test_covariance_suite(pipeline):
    checks = covariance_suite(pipeline.wrd, pipeline.cp, pipeline.qc, trials=10, seed=0)
    assert all_passed(checks), [str(c) for c in checks if not c.passed]


@settings(max_examples=40, deadline=None)
@given(st.tuples(*(st.integers(-6, 6) for _ in range(4))).filter(any))
def test_quaternion_rotations_are_special_orthogonal(quat):
    psi = so3_from_quaternion(*quat, EXACT)
    assert np.array_equal(psi @ psi.T, EXACT.eye(3))
    det = (
        psi[0, 0] * (psi[1, 1] * psi[2, 2] - psi[1, 2] * psi[2, 1])
        - psi[0, 1] * (psi[1, 0] * psi[2, 2] - psi[1, 2] * psi[2, 0])
        + psi[0, 2] * (psi[1, 0] * psi[2, 1] - psi[1, 1] * psi[2, 0])
    )
    assert det == 1


def test_zero_quaternion_rejected():
    with pytest.raises(ValueError):
        so3_from_quaternion(0, 0, 0, 0, EXACT)


def test_non_rotation_rejected(g1):
    bad = EXACT.eye(3)
    bad[0, 0] = Q(-1)  # orthogonal, determinant -1
    with pytest.raises(ValueError, match="determinant"):
        rotate_structure(g1.qc, bad)
    with pytest.raises(ValueError, match="orthogonal"):
        rotate_structure(g1.qc, 2 * EXACT.eye(3))


def test_quarter_turn_rotation(g3):
    """Rotation about the third axis by a quarter turn permutes the first two
    contact forms; the conformal tensor must not move."""
    psi = so3_from_quaternion(1, 0, 0, 1, EXACT)
    rqc = rotate_structure(g3.qc, psi)
    assert np.array_equal(rqc.I[2], g3.qc.I[2])
    assert np.array_equal(rqc.I[0], sum(psi[0, t] * g3.qc.I[t] for t in range(3)))
    from qcflat.conformal import check_rotation_invariance

    assert check_rotation_invariance(g3.wrd, g3.qc, psi).passed


def test_rotation_suite(pipeline):
    checks = rotation_suite(pipeline.wrd, pipeline.qc, trials=3, seed=5)
    assert all_passed(checks), [str(c) for c in checks if not c.passed]
