"""Standalone cross-check of the curvature pipeline, written independently
with sympy rationals and explicit loops (no shared code with the package
beyond the published structure constants).

For each hardcoded 7-dimensional model it:
  * solves the defining conditions of the canonical connection with
    sympy.linsolve over a generic so(4) x sp(1)-parameter ansatz,
  * computes curvature, Ricci traces, the torsion tensors,
  * assembles the conformal tensor from its [3]-projection formula,
and prints the invariants used as frozen oracle values in the test suite.

Run:  python3 tools/oracle_curvature.py
"""

import sympy as sp
from sympy import Rational as R

# structure constants a^k_{ij} of de^k = sum_{i<j} a^k_{ij} e^i ^ e^j, 1-based
MODELS = {
    "g1": {
        2: {(1, 2): -1, (3, 4): -2, (3, 7): R(-1, 2), (4, 6): R(1, 2)},
        3: {(1, 3): -1, (2, 4): 2, (2, 7): R(1, 2), (4, 5): R(-1, 2)},
        4: {(1, 4): -1, (2, 3): -2, (2, 6): R(-1, 2), (3, 5): R(1, 2)},
        5: {(1, 2): 2, (3, 4): 2, (6, 7): R(-1, 2)},
        6: {(1, 3): 2, (2, 4): -2, (5, 7): R(1, 2)},
        7: {(1, 4): 2, (2, 3): 2, (5, 6): R(-1, 2)},
    },
    "g3": {
        1: {(1, 3): R(-3, 2), (2, 4): R(3, 2), (2, 5): R(-3, 4), (3, 6): R(1, 4), (4, 7): R(-1, 4), (5, 7): R(1, 8)},
        2: {(1, 4): R(-3, 2), (2, 3): R(-3, 2), (1, 5): R(3, 4), (3, 7): R(1, 4), (4, 6): R(1, 4), (5, 6): R(-1, 8)},
        4: {(1, 2): 1, (3, 4): 1, (1, 7): R(1, 2), (2, 6): R(-1, 2), (6, 7): R(1, 4)},
        5: {(1, 2): 2, (3, 4): 2, (1, 7): 1, (2, 6): -1, (6, 7): R(1, 2)},
        6: {(1, 3): 2, (2, 4): -2, (2, 5): 1},
        7: {(1, 4): 2, (2, 3): 2, (1, 5): -1},
    },
}

DIM, HD = 7, 4


def brackets(model):
    # c[i][j][k]: e^k component of [e_i, e_j]; de^k(e_i,e_j) = -e^k([e_i,e_j])
    c = [[[R(0)] * DIM for _ in range(DIM)] for _ in range(DIM)]
    for k, terms in model.items():
        for (i, j), a in terms.items():
            c[i - 1][j - 1][k - 1] = -a
            c[j - 1][i - 1][k - 1] = a
    # Jacobi sanity
    for i in range(DIM):
        for j in range(DIM):
            for l in range(DIM):
                for p in range(DIM):
                    tot = sum(
                        c[i][j][m] * c[m][l][p] + c[j][l][m] * c[m][i][p] + c[l][i][m] * c[m][j][p]
                        for m in range(DIM)
                    )
                    assert tot == 0, (i, j, l, p)
    return c


def quaternion_matrices():
    I1 = sp.Matrix(4, 4, lambda r, q: 0)
    I2 = sp.zeros(4, 4)
    I3 = sp.zeros(4, 4)
    # I1: e1->e2, e2->-e1, e3->e4, e4->-e3  (columns are images)
    for (m, col, row, s) in [
        (1, 0, 1, 1), (1, 1, 0, -1), (1, 2, 3, 1), (1, 3, 2, -1),
        (2, 0, 2, 1), (2, 1, 3, -1), (2, 2, 0, -1), (2, 3, 1, 1),
        (3, 0, 3, 1), (3, 1, 2, 1), (3, 2, 1, -1), (3, 3, 0, -1),
    ]:
        [I1, I2, I3][m - 1][row, col] = s
    assert I1 * I2 == I3
    return [I1, I2, I3]


def solve_connection(c):
    I = quaternion_matrices()
    # unknown horizontal endomorphisms Lam[A] in so(4), plus sp(1) forms beta
    lam_syms, lam = [], []
    for A in range(DIM):
        m = sp.zeros(4, 4)
        for r in range(4):
            for q in range(r + 1, 4):
                s = sp.Symbol(f"l_{A}_{r}_{q}")
                lam_syms.append(s)
                m[r, q] = s
                m[q, r] = -s
        lam.append(m)
    beta = [[sp.Symbol(f"b_{A}_{s}") for s in range(3)] for A in range(DIM)]
    bsyms = [b for row in beta for b in row]

    eqs = []
    # horizontal torsion: Lam_a e_b - Lam_b e_a = [e_a,e_b]_H
    for a in range(HD):
        for b in range(HD):
            for z in range(HD):
                eqs.append(lam[a][z, b] - lam[b][z, a] - c[a][b][z])
    # sp(1) preservation: [Lam_A, I_i] = beta_k(A) I_j - beta_j(A) I_k
    for A in range(DIM):
        for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            m = lam[A] * I[i] - I[i] * lam[A] - beta[A][k] * I[j] + beta[A][j] * I[k]
            eqs.extend(list(m))
    # vertical torsion orthogonal to sp(1) and to sp(n) = the I-commutant:
    # M_s e_a = Lam_{xi_s} e_a - [xi_s, e_a]_H
    for s in range(3):
        V = HD + s
        M = sp.zeros(4, 4)
        for a in range(4):
            for z in range(4):
                M[z, a] = lam[V][z, a] - c[V][a][z]
        for t in range(3):
            eqs.append(sum(M[p, q] * I[t][p, q] for p in range(4) for q in range(4)))
        K = M - M.T
        P = (K - sum((It.T * K * It for It in I), sp.zeros(4, 4))) / 4
        eqs.extend(list(P))

    sol = sp.solve(eqs, lam_syms + bsyms, dict=True)
    assert len(sol) == 1
    sol = sol[0]
    lam_v = [m.subs(sol) for m in lam]
    beta_v = [[sp.nsimplify(sp.sympify(b).subs(sol)) for b in row] for row in beta]
    for row in beta_v:
        for b in row:
            assert not b.free_symbols
    for m in lam_v:
        assert not m.free_symbols
    return lam_v, beta_v, I


def full_gamma(lam, beta):
    # gamma[A][B][C] = Gamma^C_{AB}; vertical block from the sp(1) forms
    gamma = [[[R(0)] * DIM for _ in range(DIM)] for _ in range(DIM)]
    for A in range(DIM):
        for b in range(HD):
            for z in range(HD):
                gamma[A][b][z] = lam[A][z, b]
        for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            # nabla_A xi_i = beta_k(A) xi_j - beta_j(A) xi_k
            gamma[A][HD + i][HD + j] = beta[A][k]
            gamma[A][HD + i][HD + k] = -beta[A][j]
    return gamma


def curvature(gamma, c):
    Rm = [[[[R(0)] * DIM for _ in range(DIM)] for _ in range(DIM)] for _ in range(DIM)]
    for a in range(DIM):
        for b in range(DIM):
            for z in range(DIM):
                for d in range(DIM):
                    v = sum(gamma[a][e][d] * gamma[b][z][e] for e in range(DIM))
                    v -= sum(gamma[b][e][d] * gamma[a][z][e] for e in range(DIM))
                    v -= sum(c[a][b][e] * gamma[e][z][d] for e in range(DIM))
                    Rm[a][b][z][d] = v
    return Rm


def analyze(name):
    c = brackets(MODELS[name])
    lam, beta, I = solve_connection(c)
    gamma = full_gamma(lam, beta)
    Rm = curvature(gamma, c)
    Ric = sp.Matrix(4, 4, lambda x, y: sum(Rm[a][x][y][a] for a in range(HD)))
    Scal = Ric.trace()

    # torsion endomorphisms and T0
    T0 = sp.zeros(4, 4)
    for s in range(3):
        V = HD + s
        M = sp.zeros(4, 4)
        for a in range(4):
            for z in range(4):
                M[z, a] = lam[V][z, a] - c[V][a][z]
        Msym = (M + M.T) / 2
        T0 += (Msym * I[s]).T
    omega = [Is.T for Is in I]

    # conformal tensor via its [3]-projection expression (n=1, U=0)
    def kn(p, q, x, y, z, v):
        return p[x, z] * q[y, v] + p[y, v] * q[x, z] - p[y, z] * q[x, v] - p[x, v] * q[y, z]

    g = sp.eye(4)
    s0 = Scal / (32 * 1 * 3)
    WR = [[[[R(0)] * 4 for _ in range(4)] for _ in range(4)] for _ in range(4)]
    nrm = R(0)
    for x in range(4):
        for y in range(4):
            for z in range(4):
                for v in range(4):
                    val = Rm[x][y][z][v]
                    for Is in I:
                        val += sum(
                            Is[p, x] * Is[q, y] * Rm[p][q][z][v] for p in range(4) for q in range(4)
                        )
                    val /= 4
                    for s in range(3):
                        t0sk = sum(T0[x, p] * I[s][p, y] for p in range(4)) - sum(
                            I[s][p, x] * T0[p, y] for p in range(4)
                        )
                        val -= omega[s][z, v] * t0sk / 2
                        val += s0 * kn(omega[s], omega[s], x, y, z, v)
                    val += s0 * kn(g, g, x, y, z, v)
                    WR[x][y][z][v] = sp.nsimplify(val)
                    nrm += val**2
    print(f"{name}: Scal = {Scal}")
    print(f"{name}: Ric  = {Ric.tolist()}")
    print(f"{name}: T0   = {T0.tolist()}")
    print(f"{name}: |WR|^2 = {sp.nsimplify(nrm)}")
    rnorm = sum(
        Rm[a][b][z][d] ** 2 for a in range(4) for b in range(4) for z in range(4) for d in range(4)
    )
    print(f"{name}: |R_H|^2 = {rnorm}")


if __name__ == "__main__":
    for name in ("g1", "g3"):
        analyze(name)
