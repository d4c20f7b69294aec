"""Conformal tensor assembly, trace properties, and integrability data."""

import random
from types import SimpleNamespace

import numpy as np

from qcflat.qc import project_3_minus1
from qcflat.scalars import EXACT, Q
from qcflat.verify import all_passed
from qcflat.wqc import (
    LData,
    _wr_qcwdef,
    _wr_qcwdef1,
    check_integrability,
    check_integrability_vertical,
    compute_B,
    flatness_verdict,
    kulkarni_nomizu,
    verify_B_traces,
    verify_WR_properties,
)


def test_wr_properties(pipeline):
    checks = verify_WR_properties(pipeline.wrd, pipeline.cp, pipeline.td, pipeline.qc)
    assert all_passed(checks), [str(c) for c in checks if not c.passed]


def test_kulkarni_nomizu_symmetries():
    rng = random.Random(7)
    p = np.array([[Q(rng.randint(-5, 5)) for _ in range(4)] for _ in range(4)], dtype=object)
    q = np.array([[Q(rng.randint(-5, 5)) for _ in range(4)] for _ in range(4)], dtype=object)
    ps, qs = (p + p.T) * Q(1, 2), (q + q.T) * Q(1, 2)
    k = kulkarni_nomizu(ps, qs)
    assert np.array_equal(k, -np.einsum("yxzv->xyzv", k))
    assert np.array_equal(k, -np.einsum("xyvz->xyzv", k))
    assert np.array_equal(k, np.einsum("zvxy->xyzv", k))


def test_l_decomposition(g3):
    """L agrees with its trace decomposition and with the golden values."""
    ld = g3.wrd.L
    n, hdim = g3.qc.n, g3.qc.hdim
    gH = g3.qc.g[:hdim, :hdim]
    scal_term = gH * (g3.cp.Scal * Q(1, 32 * n * (n + 2)))
    assert np.array_equal(ld.L, ld.L0 + scal_term)
    assert np.array_equal(ld.L0, g3.td.T0 * Q(1, 2))  # U = 0 for n = 1
    assert ld.trL == g3.cp.Scal * Q(1, 8 * (n + 2))
    l3, _ = project_3_minus1(ld.L0, g3.qc)
    assert all(v == 0 for v in l3.ravel())  # L0 purely [-1] when U = 0


def test_wr_definitions_agree_on_synthetic_data(heis1):
    """The L-based assembly and its trace-split expansion agree for any
    curvature array and any compatible (T0, U, Scal) decomposition; checked on
    seeded random data over the n = 1 frame."""
    qc = heis1.qc
    hdim = qc.hdim
    rng = random.Random(31)
    for _ in range(50):
        raw = np.array(
            [[Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(hdim)] for _ in range(hdim)],
            dtype=object,
        )
        sym = (raw + raw.T) * Q(1, 2)
        _, t0 = project_3_minus1(sym - np.trace(sym) * qc.g[:hdim, :hdim] * Q(1, hdim), qc)
        t0 = t0 - np.trace(t0) * qc.g[:hdim, :hdim] * Q(1, hdim)
        scal = Q(rng.randint(-20, 20))
        u = EXACT.zeros(hdim, hdim)  # n = 1
        l0 = t0 * Q(1, 2) + u
        ell = l0 + qc.g[:hdim, :hdim] * (scal * Q(1, 32 * qc.n * (qc.n + 2)))
        ld = LData(L=ell, L0=l0, trL=np.einsum("aa->", ell))
        r = EXACT.zeros(hdim, hdim, hdim, hdim)
        for idx in np.ndindex(r.shape):
            r[idx] = Q(rng.randint(-3, 3))
        fake_cp = SimpleNamespace(RH=r, Scal=scal)
        fake_td = SimpleNamespace(T0=t0, U=u)
        a = _wr_qcwdef(fake_cp, ld, qc)
        b = _wr_qcwdef1(fake_cp, fake_td, ld, qc)
        assert np.array_equal(a, b)


def test_flatness_verdicts(pipeline):
    # every builtin model is qc-conformally flat by direct computation,
    # including g3 (nonzero torsion endomorphism, vanishing conformal tensor)
    assert flatness_verdict(pipeline.wrd, pipeline.qc)
    assert pipeline.wrd.norm_sq() == 0


def test_integrability_when_flat(pipeline):
    bd = compute_B(pipeline.wrd, pipeline.qc, pipeline.conn)
    checks = verify_B_traces(bd, pipeline.wrd, pipeline.qc)
    checks += check_integrability(bd, pipeline.qc, pipeline.conn)
    checks += check_integrability_vertical(bd, pipeline.wrd, pipeline.qc, pipeline.conn)
    assert all_passed(checks), [str(c) for c in checks if not c.passed]


def test_b_vanishes_on_torsion_free_models(heis1, g1):
    for pl in (heis1, g1):
        bd = compute_B(pl.wrd, pl.qc, pl.conn)
        assert all(v == 0 for v in bd.B.ravel())
    # flat model: L = 0 entirely, so the vertical values vanish too
    assert all(v == 0 for v in compute_B(heis1.wrd, heis1.qc, heis1.conn).B_vv.ravel())
    # g1: L is pure trace, which feeds the quadratic term of the vertical values
    bd1 = compute_B(g1.wrd, g1.qc, g1.conn)
    assert np.array_equal(bd1.B_vv, EXACT.eye(3) * Q(1, 64))


def test_b_nonzero_on_g3(g3):
    bd = compute_B(g3.wrd, g3.qc, g3.conn)
    assert any(v != 0 for v in bd.B.ravel())
