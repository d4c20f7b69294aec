"""Quaternionic triple, structure validation, and the [3]/[-1] projector."""

import random

import numpy as np
import pytest

from qcflat.qc import (
    QcValidationError,
    build_qc,
    casimir_apply,
    project_3_minus1,
    standard_quaternionic_triple,
)
from qcflat.scalars import EXACT, Q
from qcflat.structure import parse, to_lie_frame


@pytest.mark.parametrize("n", [1, 2])
def test_standard_triple_relations(n):
    I1, I2, I3 = standard_quaternionic_triple(n)
    eye = EXACT.eye(4 * n)
    for m in (I1, I2, I3):
        assert np.array_equal(m @ m, -eye)
        assert np.array_equal(m.T, -m)
    assert np.array_equal(I1 @ I2, I3)
    assert np.array_equal(I2 @ I3, I1)
    assert np.array_equal(I3 @ I1, I2)


def test_vert_indexing(pipeline):
    qc = pipeline.qc
    assert [qc.vert(s) for s in (1, 2, 3)] == [qc.hdim, qc.hdim + 1, qc.hdim + 2]
    assert qc.omega[0][0, 1] == 1  # omega_1(e_1, e_2) = g(I_1 e_1, e_2)


def test_compatibility_failure_is_reported():
    bad = parse("n = 1\nde[5] = 2 e[1,2]\nde[6] = 2 e[1,3] - 2 e[2,4]\nde[7] = 2 e[1,4] + 2 e[2,3]\n")
    with pytest.raises(QcValidationError, match="compatibility"):
        build_qc(to_lie_frame(bad, check_jacobi=False))


def test_reeb_failure_is_reported():
    bad = parse(
        "n = 1\n"
        "de[5] = 2 e[1,2] + 2 e[3,4] + e[1,5]\n"
        "de[6] = 2 e[1,3] - 2 e[2,4]\n"
        "de[7] = 2 e[1,4] + 2 e[2,3]\n"
    )
    with pytest.raises(QcValidationError, match="Reeb"):
        build_qc(to_lie_frame(bad, check_jacobi=False))


def test_broken_triple_is_rejected(heis1):
    I1, I2, I3 = standard_quaternionic_triple(1)
    with pytest.raises(QcValidationError, match="I_1 I_2"):
        build_qc(heis1.qc.frame, triple=(I1, I3, I2))
    with pytest.raises(QcValidationError, match=r"I_2\^2"):
        build_qc(heis1.qc.frame, triple=(I1, I2 * Q(2), I3))


def _random_bilinear(rng, hdim):
    b = EXACT.zeros(hdim, hdim)
    for i in range(hdim):
        for j in range(hdim):
            b[i, j] = Q(rng.randint(-9, 9), rng.randint(1, 4))
    return b


def test_projector_eigentensors(pipeline):
    qc = pipeline.qc
    hdim = qc.hdim
    gH = qc.g[:hdim, :hdim]
    assert np.array_equal(casimir_apply(gH, qc), 3 * gH)
    for w in qc.omega:
        assert np.array_equal(casimir_apply(w, qc), -w)


def test_projector_idempotent_and_complete(heis1):
    qc = heis1.qc
    rng = random.Random(2024)
    for _ in range(50):
        b = _random_bilinear(rng, qc.hdim)
        b3, bm1 = project_3_minus1(b, qc)
        assert np.array_equal(b3 + bm1, b)
        b33, b3m1 = project_3_minus1(b3, qc)
        assert np.array_equal(b33, b3)
        assert all(v == 0 for v in b3m1.ravel())
        m13, m1m1 = project_3_minus1(bm1, qc)
        assert np.array_equal(m1m1, bm1)
        assert all(v == 0 for v in m13.ravel())
