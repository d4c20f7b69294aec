"""Pointwise conformal rescaling and frame rotation.

A rescaling eta -> eta/(2h) is encoded by the 2-jet of the positive factor h
at the base point: its value, the differential on the full frame, and the
symmetrized horizontal Hessian.  From the jet we evaluate the difference
tensor S between the two canonical connections, the (0,2) transformation
tensor M, the rescaled curvature, and finally the rescaled conformal tensor,
whose covariance (2h WR_bar = WR) is checked entrywise.  The SO(3) action
rotating the triple of contact forms is handled separately: it leaves the
connection, hence the conformal tensor, untouched, and we verify that by
recomputing the whole pipeline on the rotated frame.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .biquard import compute_torsion, solve_connection
from .curvature import CurvaturePackage, _apply_both, _apply_left, _apply_right, compute_curvature
from .qc import CYCLIC, QcStructure, build_qc, project_3_minus1
from .structure import LieFrame
from .verify import Check, check_zero
from .wqc import WRData, assemble_wr, compute_WR, kulkarni_nomizu


@dataclass
class ConformalJet:
    """2-jet of the conformal factor at the base point.

    ``h`` is the (positive) value, ``dh`` the differential evaluated on the
    full frame, ``hess_sym`` the symmetric part of the second covariant
    differential restricted to the horizontal space.  The full horizontal
    Hessian is recovered by subtracting dh(xi_s) omega_s, since the
    antisymmetric part of the second differential is -dh of the torsion.
    """

    h: object
    dh: np.ndarray  # length dim
    hess_sym: np.ndarray  # hdim x hdim, symmetric

    def dh_vert(self, s: int, qc: QcStructure):
        return self.dh[qc.vert(s)]


def hessian_full(jet: ConformalJet, qc: QcStructure) -> np.ndarray:
    """The horizontal second differential with its antisymmetric part."""
    out = jet.hess_sym.copy()
    for s in (1, 2, 3):
        out = out - jet.dh_vert(s, qc) * qc.omega[s - 1]
    return out


def _dh_twists(jet: ConformalJet, qc: QcStructure):
    """dh_H and the three composites X -> dh(I_s X) as horizontal covectors."""
    dhH = jet.dh[: qc.hdim]
    return dhH, [Is.T @ dhH for Is in qc.I]


@dataclass
class SData:
    S_h: np.ndarray  # S_h[x,y,z] = g(S_{e_x} e_y, e_z)
    S_v: list  # three hdim x hdim matrices, g(S_{xi_bar_i} X, Y)


def compute_S(jet: ConformalJet, qc: QcStructure) -> SData:
    """Difference tensor between the rescaled and original connections, in
    its horizontal slots and in the rescaled-Reeb slots."""
    mode, n, hdim = qc.mode, qc.n, qc.hdim
    gH = qc.g[:hdim, :hdim]
    h = jet.h
    dhH, dhs = _dh_twists(jet, qc)
    inv2h = mode.rat(1, 2) / h

    S_h = (
        np.einsum("x,yz->xyz", dhH, gH)
        + np.einsum("y,zx->xyz", dhH, gH)
        - np.einsum("z,xy->xyz", dhH, gH)
    )
    for s in (1, 2, 3):
        w = qc.omega[s - 1]
        S_h = S_h - np.einsum("x,yz->xyz", dhs[s - 1], w)
        S_h = S_h + np.einsum("y,zx->xyz", dhs[s - 1], w)
        S_h = S_h + np.einsum("z,xy->xyz", dhs[s - 1], w)
    S_h = -inv2h * S_h

    hess = hessian_full(jet, qc)
    lap = np.einsum("aa->", jet.hess_sym)
    grad_sq = sum(v * v for v in dhH)
    quarter = mode.rat(1, 4)
    S_v = []
    for (i, j, k) in CYCLIC:
        Ii, Ij, Ik = qc.I[i - 1], qc.I[j - 1], qc.I[k - 1]
        sv = -quarter * (
            -_apply_right(hess, Ii)
            + _apply_left(hess, Ii)
            - _apply_both(hess, Ij, Ik)
            + _apply_both(hess, Ik, Ij)
        )
        sv = sv - inv2h * (
            np.einsum("x,y->xy", dhs[k - 1], dhs[j - 1])
            - np.einsum("x,y->xy", dhs[j - 1], dhs[k - 1])
            + np.einsum("x,y->xy", dhs[i - 1], dhH)
            - np.einsum("x,y->xy", dhH, dhs[i - 1])
        )
        sv = sv + mode.rat(1, 4 * n) * (-lap + 2 * grad_sq / h) * qc.omega[i - 1]
        sv = sv - jet.dh_vert(k, qc) * qc.omega[j - 1] + jet.dh_vert(j, qc) * qc.omega[k - 1]
        S_v.append(sv)
    return SData(S_h=S_h, S_v=S_v)


def verify_S_constraints(sd: SData, jet: ConformalJet, qc: QcStructure) -> list[Check]:
    """The two linear conditions that determine the horizontal part of S:
    its antisymmetrization in the first two slots is fixed by the contact
    torsion, and its symmetrization in the last two by metric compatibility."""
    mode, hdim = qc.mode, qc.hdim
    gH = qc.g[:hdim, :hdim]
    dhH, dhs = _dh_twists(jet, qc)
    invh = mode.rat(1) / jet.h

    r1 = sd.S_h - np.einsum("xyz->yxz", sd.S_h)
    for s in (1, 2, 3):
        r1 = r1 + invh * np.einsum("xy,z->xyz", qc.omega[s - 1], dhs[s - 1])
    r2 = sd.S_h + np.einsum("xyz->xzy", sd.S_h) + invh * np.einsum("x,yz->xyz", dhH, gH)
    return [
        check_zero("first-slot antisymmetry constraint on S", r1, mode),
        check_zero("metric-compatibility constraint on S", r2, mode),
    ]


@dataclass
class MData:
    M: np.ndarray
    M_sym: np.ndarray
    trM: object
    M_s: list  # three scalars, traces against the fundamental forms


def compute_M(jet: ConformalJet, qc: QcStructure) -> MData:
    """The (0,2) tensor through which the curvature transforms."""
    mode, hdim = qc.mode, qc.hdim
    gH = qc.g[:hdim, :hdim]
    h = jet.h
    dhH, dhs = _dh_twists(jet, qc)
    grad_sq = sum(v * v for v in dhH)

    quad = np.einsum("x,y->xy", dhH, dhH)
    for s in (1, 2, 3):
        quad = quad + np.einsum("x,y->xy", dhs[s - 1], dhs[s - 1])
    quad = quad + mode.rat(1, 2) * grad_sq * gH

    inv2h = mode.rat(1, 2) / h
    M = inv2h * (hessian_full(jet, qc) - inv2h * quad)
    M_sym = (M + M.T) * mode.rat(1, 2)
    trM = np.einsum("aa->", M)
    M_s = [np.einsum("ab,ba->", M, Is) for Is in qc.I]
    return MData(M=M, M_sym=M_sym, trM=trM, M_s=M_s)


def verify_M_traces(md: MData, jet: ConformalJet, qc: QcStructure) -> list[Check]:
    """Closed forms of the traces of M, and its decomposition into the
    symmetric part minus the vertical-differential multiples of omega_s."""
    mode, n = qc.mode, qc.n
    h = jet.h
    dhH, _ = _dh_twists(jet, qc)
    lap = np.einsum("aa->", jet.hess_sym)
    grad_sq = sum(v * v for v in dhH)

    r_tr = md.trM - mode.rat(1, 2) / h * (lap - (n + 2) * grad_sq / h)
    r_s = [md.M_s[s - 1] + 2 * n * jet.dh_vert(s, qc) / h for s in (1, 2, 3)]
    decomp = md.M - md.M_sym
    for s in (1, 2, 3):
        decomp = decomp + mode.rat(1, 2) / h * jet.dh_vert(s, qc) * qc.omega[s - 1]
    return [
        check_zero("closed form of the metric trace of M", np.array([r_tr]), mode),
        check_zero("closed forms of the omega-traces of M", np.array(r_s), mode),
        check_zero("symmetric/vertical decomposition of M", decomp, mode),
    ]


def _curvature_shift(md: MData, qc: QcStructure) -> np.ndarray:
    """The M-controlled (0,4) tensor equal to 2h R04_bar - R04."""
    mode, n = qc.mode, qc.n
    hdim = qc.hdim
    gH = qc.g[:hdim, :hdim]
    M = md.M
    half = mode.rat(1, 2)

    out = -kulkarni_nomizu(gH, M)
    for s in (1, 2, 3):
        Is, w = qc.I[s - 1], qc.omega[s - 1]
        out = out - kulkarni_nomizu(w, -_apply_right(M, Is))
        MI = _apply_right(M, Is)
        out = out + np.einsum("zv,xy->xyzv", w, MI - MI.T)
    for (i, j, k) in CYCLIC:
        Ii, Ij, Ik = qc.I[i - 1], qc.I[j - 1], qc.I[k - 1]
        br = _apply_right(M, Ii) - _apply_left(M, Ii) + _apply_both(M, Ij, Ik) - _apply_both(M, Ik, Ij)
        out = out + half * np.einsum("xy,zv->xyzv", qc.omega[i - 1], br)
    out = out - np.einsum("zv,xy->xyzv", gH, M - M.T)

    inv2n = mode.rat(1, 2 * n)
    for w in qc.omega:
        out = out - inv2n * md.trM * np.einsum("xy,zv->xyzv", w, w)
    for (i, j, k) in CYCLIC:
        wj, wk = qc.omega[j - 1], qc.omega[k - 1]
        out = out + inv2n * md.M_s[i - 1] * (
            np.einsum("xy,zv->xyzv", wj, wk) - np.einsum("xy,zv->xyzv", wk, wj)
        )
    return out


@dataclass
class RescaledState:
    """Pointwise data of the rescaled structure, all lowered with its own
    metric g/(2h)."""

    R04: np.ndarray
    Ric: np.ndarray
    Scal: object
    L: np.ndarray
    trL: object  # metric trace, taken against the rescaled metric
    gH: np.ndarray
    omega: tuple


def transform(cp: CurvaturePackage, wrd: WRData, md: MData, jet: ConformalJet, qc: QcStructure) -> RescaledState:
    """Curvature, Ricci data and L of the rescaled structure at the point."""
    mode, hdim = qc.mode, qc.hdim
    h2 = 2 * jet.h
    inv2h = mode.rat(1) / h2
    gH = qc.g[:hdim, :hdim]

    R04 = inv2h * (cp.RH + _curvature_shift(md, qc))
    Ric = h2 * np.einsum("axya->xy", R04)  # trace against the rescaled metric
    Scal = h2 * np.einsum("aa->", Ric)
    L = wrd.L.L + md.M_sym
    trL = h2 * np.einsum("aa->", L)
    omega = tuple(inv2h * w for w in qc.omega)
    return RescaledState(R04=R04, Ric=Ric, Scal=Scal, L=L, trL=trL, gH=inv2h * gH, omega=omega)


def verify_ricci_transform(rs: RescaledState, cp: CurvaturePackage, md: MData, jet: ConformalJet, qc: QcStructure) -> list[Check]:
    """Trace consequences of the curvature transformation: the Ricci shift is
    an explicit combination of M and its projections, and the scalar shift is
    a multiple of the trace of M."""
    mode, n, hdim = qc.mode, qc.n, qc.hdim
    gH = qc.g[:hdim, :hdim]
    m3, _ = project_3_minus1(md.M, qc)
    r_ric = rs.Ric - cp.Ric - 4 * (n + 1) * md.M_sym - 6 * m3 - mode.rat(2 * n + 3, 2 * n) * md.trM * gH
    r_scal = rs.Scal / (2 * jet.h) - cp.Scal - 8 * (n + 2) * md.trM
    return [
        check_zero("Ricci shift under rescaling", r_ric, mode),
        check_zero("scalar curvature shift under rescaling", np.array([r_scal]), mode),
    ]


def rescaled_wr(rs: RescaledState, qc: QcStructure) -> np.ndarray:
    """Conformal tensor of the rescaled structure, from its own ingredients."""
    return assemble_wr(rs.R04, rs.L, rs.trL, rs.gH, rs.omega, qc.I, qc.n, qc.mode)


def check_covariance(wrd: WRData, cp: CurvaturePackage, jet: ConformalJet, qc: QcStructure) -> list[Check]:
    """Full gate for one jet: S constraints, trace identities of M, the Ricci
    shift, and the covariance law 2h WR_bar = WR (equivalently, invariance of
    the (1,3) tensor, since raising an index contributes the inverse factor)."""
    sd = compute_S(jet, qc)
    md = compute_M(jet, qc)
    checks = verify_S_constraints(sd, jet, qc)
    checks += verify_M_traces(md, jet, qc)
    rs = transform(cp, wrd, md, jet, qc)
    checks += verify_ricci_transform(rs, cp, md, jet, qc)
    residual = 2 * jet.h * rescaled_wr(rs, qc) - wrd.WR
    scale = float(max(1.0, abs(float(cp.Scal))))
    checks.append(check_zero("conformal covariance of the conformal tensor", residual, qc.mode, scale))
    return checks


_H_CHOICES = ((1, 2), (1, 1), (2, 1), (3, 1))


def random_jet(qc: QcStructure, seed: int) -> ConformalJet:
    """Seeded rational 2-jet with small numerators and denominators."""
    rng = random.Random(seed)
    mode = qc.mode

    def rat():
        return mode.rat(rng.randint(-5, 5), rng.randint(1, 4))

    p, q = rng.choice(_H_CHOICES)
    h = mode.rat(p, q)
    dh = np.array([rat() for _ in range(qc.dim)], dtype=object if mode.exact else float)
    hess = mode.zeros(qc.hdim, qc.hdim)
    for a in range(qc.hdim):
        for b in range(a, qc.hdim):
            hess[a, b] = rat()
            hess[b, a] = hess[a, b]
    return ConformalJet(h=h, dh=dh, hess_sym=hess)


def covariance_suite(wrd: WRData, cp: CurvaturePackage, qc: QcStructure, trials: int = 25, seed: int = 0) -> list[Check]:
    """Run the covariance gate over seeded random jets and aggregate each
    internal identity into a single worst-case check."""
    grouped: dict[str, list[Check]] = {}
    for trial in range(trials):
        for c in check_covariance(wrd, cp, random_jet(qc, seed + trial), qc):
            grouped.setdefault(c.name, []).append(c)
    out = []
    for name, cs in grouped.items():
        worst = max(cs, key=lambda c: c.residual)
        out.append(
            Check(
                name=f"{name} ({len(cs)} jets)",
                residual=worst.residual,
                scale=worst.scale,
                worst=worst.worst,
                passed=all(c.passed for c in cs),
            )
        )
    return out


def so3_from_quaternion(a: int, b: int, c: int, d: int, mode) -> np.ndarray:
    """Exact-rational rotation matrix from a nonzero integer quaternion."""
    norm = a * a + b * b + c * c + d * d
    if norm == 0:
        raise ValueError("zero quaternion")
    rows = [
        [a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)],
        [2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)],
        [2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d],
    ]
    psi = mode.zeros(3, 3)
    for i in range(3):
        for j in range(3):
            psi[i, j] = mode.rat(rows[i][j], norm) if mode.exact else rows[i][j] / norm
    return psi


def rotate_structure(qc: QcStructure, psi: np.ndarray) -> QcStructure:
    """The structure in the frame with rotated vertical directions and the
    correspondingly rotated quaternionic triple."""
    mode, hdim, dim = qc.mode, qc.hdim, qc.dim
    eye3 = mode.eye(3)
    if not all(mode.is_zero(v, scale=1) for v in (psi @ psi.T - eye3).ravel()):
        raise ValueError("rotation matrix is not orthogonal")
    det = (
        psi[0, 0] * (psi[1, 1] * psi[2, 2] - psi[1, 2] * psi[2, 1])
        - psi[0, 1] * (psi[1, 0] * psi[2, 2] - psi[1, 2] * psi[2, 0])
        + psi[0, 2] * (psi[1, 0] * psi[2, 1] - psi[1, 1] * psi[2, 0])
    )
    if not mode.is_zero(det - 1, scale=1):
        raise ValueError("rotation matrix must have determinant one")

    O = mode.eye(dim)
    O[hdim:, hdim:] = psi
    c_rot = np.einsum("IK,JL,NM,KLM->IJN", O, O, O, qc.c)
    triple = tuple(sum(psi[s, t] * qc.I[t] for t in range(3)) for s in range(3))
    name = qc.frame.name + "-rotated" if qc.frame.name else "rotated"
    frame = LieFrame(n=qc.n, c=c_rot, name=name)
    return build_qc(frame, triple=triple, mode=mode)


def random_rotation(seed: int, mode) -> np.ndarray:
    rng = random.Random(seed)
    while True:
        quat = [rng.randint(-3, 3) for _ in range(4)]
        if any(quat):
            return so3_from_quaternion(*quat, mode)


def check_rotation_invariance(wrd: WRData, qc: QcStructure, psi: np.ndarray) -> Check:
    """Recompute the whole pipeline on the rotated frame and compare the
    conformal tensor entrywise (the canonical connection is rotation-blind)."""
    rqc = rotate_structure(qc, psi)
    conn = solve_connection(rqc)
    td = compute_torsion(rqc, conn)
    cp = compute_curvature(rqc, conn)
    rwr = compute_WR(cp, td, rqc)
    return check_zero("rotation invariance of the conformal tensor", rwr.WR - wrd.WR, qc.mode)


def rotation_suite(wrd: WRData, qc: QcStructure, trials: int = 10, seed: int = 0) -> list[Check]:
    checks = [check_rotation_invariance(wrd, qc, random_rotation(seed + t, qc.mode)) for t in range(trials)]
    worst = max(checks, key=lambda c: c.residual)
    return [
        Check(
            name=f"rotation invariance of the conformal tensor ({trials} rotations)",
            residual=worst.residual,
            scale=worst.scale,
            worst=worst.worst,
            passed=all(c.passed for c in checks),
        )
    ]
