"""Quaternionic contact structure on a Lie frame: metric, quaternionic
triple, fundamental 2-forms, Reeb conditions, and the Casimir-type projector
onto the [3] and [-1] components of bilinear forms on the horizontal space.

Index layout (0-based): horizontal 0..4n-1, vertical 4n..4n+2 with
xi_s = e_{4n+s-1} and eta_s = e^{4n+s-1} for s = 1,2,3.  The frame is
orthonormal, g = Id on the full frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scalars import EXACT, ScalarMode
from .structure import LieFrame


class QcValidationError(ValueError):
    """The input frame does not define a (dimension-7 Reeb-compatible) qc
    structure."""


def standard_quaternionic_triple(n: int, mode: ScalarMode = EXACT):
    """Block-diagonal I_1, I_2, I_3 with the standard 4x4 quaternion action
    on each block: e_1 -> e_2 = I_1 e_1, e_3 = I_2 e_1, e_4 = I_3 e_1."""
    one = mode.rat(1)
    blocks = {
        # (image index, sign) per column 0..3 inside one block
        1: ((1, 1), (0, -1), (3, 1), (2, -1)),
        2: ((2, 1), (3, -1), (0, -1), (1, 1)),
        3: ((3, 1), (2, 1), (1, -1), (0, -1)),
    }
    out = []
    for s in (1, 2, 3):
        m = mode.zeros(4 * n, 4 * n)
        for b in range(n):
            for col, (row, sign) in enumerate(blocks[s]):
                m[4 * b + row, 4 * b + col] = sign * one
        out.append(m)
    return tuple(out)


@dataclass
class QcStructure:
    frame: LieFrame
    I: tuple  # three 4n x 4n matrices, columns = input vector index
    omega: tuple  # three 4n x 4n matrices, omega_s[a,b] = omega_s(e_a, e_b)
    g: np.ndarray  # full-frame identity
    c: np.ndarray  # structure constants in this mode's dtype
    mode: ScalarMode

    @property
    def n(self) -> int:
        return self.frame.n

    @property
    def hdim(self) -> int:
        return 4 * self.frame.n

    @property
    def dim(self) -> int:
        return self.frame.dim

    def vert(self, s: int) -> int:
        """Frame index of xi_s, s = 1,2,3."""
        return self.hdim + s - 1


CYCLIC = ((1, 2, 3), (2, 3, 1), (3, 1, 2))


def build_qc(frame: LieFrame, triple=None, mode: ScalarMode = EXACT) -> QcStructure:
    """Assemble and validate the qc structure determined by the frame.

    The contact forms are eta_s = e^{4n+s}; compatibility demands
    d eta_s(e_a, e_b) = -c^{4n+s}_{ab} = 2 omega_s(e_a, e_b) on H, and the
    Reeb conditions on xi_s are enforced (hard error: the Biquard existence
    and uniqueness theorem presupposes them, and in dimension 7 they are part
    of the definition).
    """
    hdim, dim = 4 * frame.n, frame.dim
    c = mode.convert(frame.c) if not mode.exact else frame.c
    I = triple if triple is not None else standard_quaternionic_triple(frame.n, mode)
    _validate_triple(I, hdim, mode)
    omega = tuple(Is.T.copy() for Is in I)  # omega_s(e_a,e_b) = g(I_s e_a, e_b)

    # compatibility d eta_s|_H = 2 omega_s
    for s in (1, 2, 3):
        for a in range(hdim):
            for b in range(hdim):
                if not mode.is_zero(-c[a, b, hdim + s - 1] - 2 * omega[s - 1][a, b], scale=2):
                    raise QcValidationError(
                        f"compatibility failure: d eta_{s}(e_{a+1}, e_{b+1}) = "
                        f"{-c[a, b, hdim + s - 1]} but 2 omega_{s} = {2 * omega[s - 1][a, b]}"
                    )

    # Reeb conditions: (xi_s . d eta_s)|_H = 0,
    # (xi_s . d eta_k)|_H = -(xi_k . d eta_s)|_H
    for s in (1, 2, 3):
        vs = hdim + s - 1
        for a in range(hdim):
            if not mode.is_zero(c[vs, a, vs]):
                raise QcValidationError(
                    f"Reeb condition failure: (xi_{s} . d eta_{s})(e_{a+1}) != 0"
                )
        for k in range(s + 1, 4):
            vk = hdim + k - 1
            for a in range(hdim):
                if not mode.is_zero(c[vs, a, vk] + c[vk, a, vs]):
                    raise QcValidationError(
                        f"Reeb condition failure: (xi_{s} . d eta_{k})|_H != "
                        f"-(xi_{k} . d eta_{s})|_H at e_{a+1}"
                    )

    g = mode.eye(dim)
    return QcStructure(frame=frame, I=tuple(I), omega=omega, g=g, c=c, mode=mode)


def _validate_triple(I, hdim, mode: ScalarMode):
    if len(I) != 3 or any(m.shape != (hdim, hdim) for m in I):
        raise QcValidationError("quaternionic triple must be three 4n x 4n matrices")
    eye = mode.eye(hdim)
    for s, m in enumerate(I, start=1):
        if not _is_zero_mat(m @ m + eye, mode):
            raise QcValidationError(f"I_{s}^2 != -Id")
        if not _is_zero_mat(m + m.T, mode):
            raise QcValidationError(f"I_{s} is not skew (not g-orthogonal)")
    if not _is_zero_mat(I[0] @ I[1] - I[2], mode):
        raise QcValidationError("I_1 I_2 != I_3")
    if not _is_zero_mat(I[1] @ I[0] + I[2], mode):
        raise QcValidationError("I_2 I_1 != -I_3")


def _is_zero_mat(m, mode: ScalarMode) -> bool:
    return all(mode.is_zero(v, scale=1) for v in m.ravel())


def casimir_apply(b: np.ndarray, qc: QcStructure) -> np.ndarray:
    """(dagger b)(X,Y) = sum_s b(I_s X, I_s Y) for a bilinear form on H."""
    out = qc.mode.zeros(qc.hdim, qc.hdim)
    for Is in qc.I:
        out = out + Is.T @ b @ Is
    return out


def project_3_minus1(b: np.ndarray, qc: QcStructure):
    """Split a bilinear form on H into its [3] and [-1] components:
    b_[3] = (b + dagger b)/4, b_[-1] = (3b - dagger b)/4."""
    quarter = qc.mode.rat(1, 4)
    db = casimir_apply(b, qc)
    b3 = (b + db) * quarter
    bm1 = (b * 3 - db) * quarter
    return b3, bm1
