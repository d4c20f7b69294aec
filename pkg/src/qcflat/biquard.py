"""The Biquard connection from its defining axioms, and its torsion.

The connection is the unique metric connection preserving the H/V splitting
and the Sp(n)Sp(1) structure whose torsion is purely vertical on H x H and
whose vertical torsion endomorphisms are orthogonal to sp(n)+sp(1).  All
axioms are assembled into one exact linear system over the coefficients of
the horizontal endomorphisms Lambda_A in an orthogonal basis of
sp(n)+sp(1); a full-rank certificate from the solver doubles as the
uniqueness proof for the given input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qc import CYCLIC, QcStructure, casimir_apply
from .tensor import LinearSystem, solve_exact
from .verify import Check, check_zero


class BiquardSolveError(ValueError):
    """Biquard axioms unsolvable: rank-deficient or inconsistent system."""


@dataclass
class SpnSp1Basis:
    sp_n: list  # skew matrices commuting with all I_s
    sp_1: tuple  # (I_1, I_2, I_3)

    @property
    def all(self) -> list:
        return self.sp_n + list(self.sp_1)

    def norms(self):
        return [_inner(b, b) for b in self.all]


def _inner(p, q):
    return np.einsum("ab,ab->", p, q)


def build_spn_sp1_basis(qc: QcStructure) -> SpnSp1Basis:
    """Orthogonal basis of sp(n) (+) sp(1) inside so(4n).

    sp(n) elements arise by averaging elementary skew matrices over
    conjugation by the quaternion group, pi(P) = (P - sum_s I_s P I_s)/4,
    which projects onto the commutant of {I_1,I_2,I_3}; exact Gram-Schmidt
    keeps an orthogonal spanning set.
    """
    n, hdim, mode = qc.n, qc.hdim, qc.mode
    quarter = mode.rat(1, 4)
    basis: list = []
    for a in range(hdim):
        for b in range(a + 1, hdim):
            e = mode.zeros(hdim, hdim)
            e[a, b] = mode.rat(1)
            e[b, a] = mode.rat(-1)
            cand = e.copy()
            for Is in qc.I:
                cand = cand - Is @ e @ Is
            cand = cand * quarter
            # orthogonalize against what we already have
            for prev in basis:
                coeff = _inner(cand, prev) / _inner(prev, prev)
                cand = cand - prev * coeff
            if any(v != 0 for v in cand.ravel()) if mode.exact else any(
                abs(v) > 1e-12 for v in cand.ravel()
            ):
                basis.append(cand)
    expected = n * (2 * n + 1)
    if len(basis) != expected:
        raise BiquardSolveError(
            f"sp(n) basis dimension {len(basis)} != n(2n+1) = {expected}"
        )
    return SpnSp1Basis(sp_n=basis, sp_1=tuple(qc.I))


@dataclass
class Connection:
    """gamma[A, B, C] = Gamma^C_{AB} over the full frame; alpha[s-1, A] are
    the sp(1)-connection 1-forms; lam[A] = (Gamma^c_{Ab})_{c,b horizontal}."""

    gamma: np.ndarray
    alpha: np.ndarray
    lam: np.ndarray
    basis: SpnSp1Basis
    rank: int
    n_unknowns: int


def solve_connection(qc: QcStructure, basis: SpnSp1Basis | None = None) -> Connection:
    """Solve the Biquard axioms as one linear system; demand a unique
    solution (rank certificate), else raise BiquardSolveError."""
    mode, hdim, dim, c = qc.mode, qc.hdim, qc.dim, qc.c
    if basis is None:
        basis = build_spn_sp1_basis(qc)
    bas = basis.all
    N = len(bas)

    rows, rhs = [], []
    # (b) prescribed horizontal torsion: Gamma^z_{ab} - Gamma^z_{ba} = c^z_{ab}
    for a in range(hdim):
        for b in range(a + 1, hdim):
            for z in range(hdim):
                row = mode.zeros(dim * N)
                for m, B in enumerate(bas):
                    row[a * N + m] = B[z, b]
                    row[b * N + m] = row[b * N + m] - B[z, a]
                rows.append(row)
                rhs.append(c[a, b, z])
    # (c) vertical directions: <Lambda_{xi_s} - D_s, B_m> = 0 with
    # (D_s)[b, a] = g([xi_s, e_a]_H, e_b)
    for s in (1, 2, 3):
        A = qc.vert(s)
        D = c[A, :hdim, :hdim].T  # D[b, a] = c^b_{xi_s, a}
        for m, Bm in enumerate(bas):
            row = mode.zeros(dim * N)
            for mp, Bp in enumerate(bas):
                row[A * N + mp] = _inner(Bp, Bm)
            rows.append(row)
            rhs.append(_inner(D, Bm))

    matrix = np.stack(rows)
    rhs_arr = np.empty(len(rhs), dtype=matrix.dtype)
    rhs_arr[:] = rhs
    result = solve_exact(LinearSystem(matrix, rhs_arr), mode)
    if not result.unique:
        raise BiquardSolveError(
            "Biquard axioms unsolvable: rank "
            f"{result.rank}/{result.n_unknowns}, consistent={result.consistent} "
            "(suspect invalid input geometry or a sign-convention bug)"
        )
    x = result.x

    lam = mode.zeros(dim, hdim, hdim)
    for A in range(dim):
        acc = mode.zeros(hdim, hdim)
        for m, B in enumerate(bas):
            acc = acc + B * x[A * N + m]
        lam[A] = acc

    # sp(1) components: Lambda_A = B_A + sum_s beta_s(A) I_s, alpha = 2 beta
    alpha = mode.zeros(3, dim)
    inv4n = mode.rat(1, 4 * qc.n)
    for s in (1, 2, 3):
        Is = qc.I[s - 1]
        for A in range(dim):
            alpha[s - 1, A] = 2 * _inner(lam[A], Is) * inv4n

    gamma = mode.zeros(dim, dim, dim)
    gamma[:, :hdim, :hdim] = np.swapaxes(lam, 1, 2)  # gamma[A,b,z] = lam[A][z,b]
    for (i, j, k) in CYCLIC:
        vi, vj, vk = qc.vert(i), qc.vert(j), qc.vert(k)
        for A in range(dim):
            # nabla_A xi_i = -alpha_j(A) xi_k + alpha_k(A) xi_j
            gamma[A, vi, vk] = -alpha[j - 1, A]
            gamma[A, vi, vj] = alpha[k - 1, A]

    return Connection(
        gamma=gamma, alpha=alpha, lam=lam, basis=basis, rank=result.rank, n_unknowns=result.n_unknowns
    )


def verify_axioms(qc: QcStructure, conn: Connection) -> list[Check]:
    """Exact residuals of every defining axiom of the connection."""
    mode, hdim, dim, c = qc.mode, qc.hdim, qc.dim, qc.c
    g, lam, alpha = conn.gamma, conn.lam, conn.alpha
    checks = []

    checks.append(
        check_zero("metricity Gamma^C_{AB} + Gamma^B_{AC}", g + np.swapaxes(g, 1, 2), mode)
    )

    split = g.copy()
    split[:, :hdim, :hdim] = mode.rat(0)
    split[:, hdim:, hdim:] = mode.rat(0)
    checks.append(check_zero("splitting: mixed H/V coefficients vanish", split, mode))

    nabla_i = []
    for (i, j, k) in CYCLIC:
        Ii, Ij, Ik = qc.I[i - 1], qc.I[j - 1], qc.I[k - 1]
        for A in range(dim):
            res = (lam[A] @ Ii - Ii @ lam[A]) + Ik * alpha[j - 1, A] - Ij * alpha[k - 1, A]
            nabla_i.append(res)
    checks.append(check_zero("sp(1) relation [Lambda_A, I_i] = -a_j I_k + a_k I_j", np.stack(nabla_i), mode))

    tors_h = []
    for a in range(hdim):
        for b in range(hdim):
            for z in range(hdim):
                tors_h.append(g[a, b, z] - g[b, a, z] - c[a, b, z])
    checks.append(check_zero("horizontal torsion Gamma^c_{ab}-Gamma^c_{ba}=c^c_{ab}", np.array(tors_h, dtype=g.dtype), mode))

    ortho = []
    for s in (1, 2, 3):
        A = qc.vert(s)
        t = lam[A] - c[A, :hdim, :hdim].T
        for B in conn.basis.all:
            ortho.append(_inner(t, B))
    checks.append(check_zero("T_{xi_s} orthogonal to sp(n)+sp(1)", np.array(ortho, dtype=g.dtype), mode))
    return checks


@dataclass
class TorsionData:
    T: np.ndarray  # T[A, B, C] = T^C_{AB} (C contravariant)
    T_xi: list  # endomorphism matrices of T(xi_s, .)|_H
    T0_xi: list  # their symmetric parts
    b_xi: list  # their skew parts
    u: np.ndarray
    T0: np.ndarray  # (0,2) on H
    U: np.ndarray  # (0,2) on H
    T_vv: np.ndarray  # T_vv[i-1, j-1, :] = T(xi_i, xi_j) components


def compute_torsion(qc: QcStructure, conn: Connection) -> TorsionData:
    mode, hdim, dim = qc.mode, qc.hdim, qc.dim
    g = conn.gamma
    T = g - np.swapaxes(g, 0, 1) - qc.c

    # sanity: T(X,Y) = 2 sum_s omega_s(X,Y) xi_s on H x H
    for s in (1, 2, 3):
        res = T[:hdim, :hdim, qc.vert(s)] - 2 * qc.omega[s - 1]
        if not all(mode.is_zero(v, scale=2) for v in res.ravel()):
            raise BiquardSolveError(f"horizontal torsion does not equal 2 omega_{s} xi_{s}")

    half = mode.rat(1, 2)
    T_xi, T0_xi, b_xi, u_cands = [], [], [], []
    for s in (1, 2, 3):
        M = T[qc.vert(s), :hdim, :hdim].T  # M[b,a] = T^b_{xi_s, a}
        T_xi.append(M)
        T0_xi.append((M + M.T) * half)
        b = (M - M.T) * half
        b_xi.append(b)
        u_cands.append(-qc.I[s - 1] @ b)  # b_{xi_s} = I_s u  =>  u = -I_s b
    for s in (1, 2):
        diff = u_cands[s] - u_cands[0]
        if not all(mode.is_zero(v, scale=1) for v in diff.ravel()):
            raise BiquardSolveError("the three candidates for u disagree")
    u = u_cands[0]

    E = qc.mode.zeros(hdim, hdim)
    for s in (1, 2, 3):
        E = E + T0_xi[s - 1] @ qc.I[s - 1]
    T0 = E.T  # T0(X,Y) = g(E X, Y)
    U = u.T  # U(X,Y) = g(u X, Y); u is symmetric

    T_vv = mode.zeros(3, 3, dim)
    for i in range(3):
        for j in range(3):
            T_vv[i, j] = T[qc.vert(i + 1), qc.vert(j + 1)]

    return TorsionData(T=T, T_xi=T_xi, T0_xi=T0_xi, b_xi=b_xi, u=u, T0=T0, U=U, T_vv=T_vv)


def verify_torsion_properties(td: TorsionData, qc: QcStructure) -> list[Check]:
    mode, hdim = qc.mode, qc.hdim
    checks = []

    traces = []
    for s in (1, 2, 3):
        M = td.T_xi[s - 1]
        traces.append(np.einsum("aa->", M))
        for Is in qc.I:
            traces.append(np.einsum("ab,ba->", M, Is))
    checks.append(check_zero("torsion endomorphisms completely trace-free", np.array(traces, dtype=td.T.dtype), mode))

    b_res = [td.b_xi[s - 1] - qc.I[s - 1] @ td.u for s in (1, 2, 3)]
    checks.append(check_zero("b_{xi_s} = I_s u with one common u", np.stack(b_res), mode))

    u = td.u
    u_props = [u - u.T, np.array([[np.einsum("aa->", u)]], dtype=u.dtype)]
    u_props += [u @ Is - Is @ u for Is in qc.I]
    checks.append(
        check_zero("u symmetric, traceless, commuting with I_s", np.concatenate([np.atleast_2d(p).ravel() for p in u_props]), mode)
    )
    if qc.n == 1:
        checks.append(check_zero("n=1 forces u = 0", u, mode))

    from .qc import casimir_apply as dag

    checks.append(check_zero("T0 in the [-1]-eigenspace: T0 + dagger T0 = 0", td.T0 + dag(td.T0, qc), mode))
    checks.append(check_zero("U in the [3]-eigenspace: 3U - dagger U = 0", td.U * 3 - dag(td.U, qc), mode))

    t001 = []
    for s in (1, 2, 3):
        Is = qc.I[s - 1]
        lhs = 4 * (td.T0_xi[s - 1] @ Is).T
        rhs = td.T0 - Is.T @ td.T0 @ Is
        t001.append(lhs - rhs)
    checks.append(check_zero("4 g(T0_{xi_s} I_s X, Y) = T0(X,Y) - T0(I_sX,I_sY)", np.stack(t001), mode))
    return checks
