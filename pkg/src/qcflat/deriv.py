"""Covariant derivatives of left-invariant tensors.

For a left-invariant tensor all frame components are constant, so the
covariant derivative reduces to algebraic contractions with the connection
coefficients: covariant slots pick up -Gamma terms, contravariant slots
+Gamma terms.  Because the connection preserves the H/V splitting, summing
each slot over its own index range is exact.
"""

from __future__ import annotations

import numpy as np

_LETTERS = "ijklmnpq"


def nabla(P: np.ndarray, slots, gamma: np.ndarray, hdim: int, valence=None) -> np.ndarray:
    """All-directions covariant derivative of a constant-component tensor.

    Returns N with N[A, i1..ik] = (nabla_{e_A} P)(e_{i1}, .., e_{ik}), the
    derivative direction A running over the full frame.  ``slots`` tags each
    index of P with 'H' or 'F'; ``valence`` (default all covariant) tags
    'lo'/'up'.
    """
    k = P.ndim
    if valence is None:
        valence = ("lo",) * k
    dim = gamma.shape[0]
    letters = _LETTERS[:k]
    out = None
    for m in range(k):
        r = hdim if slots[m] == "H" else dim
        g_block = gamma[:, :r, :r]
        pin = letters[:m] + "z" + letters[m + 1 :]
        if valence[m] == "lo":
            # -Gamma^z_{A b} P(.., e_z, ..)
            term = -np.einsum(f"a{letters[m]}z,{pin}->a{letters}", g_block, P)
        else:
            # +Gamma^{out}_{A z} P^z : Gamma[A, z, out]
            term = np.einsum(f"az{letters[m]},{pin}->a{letters}", g_block, P)
        out = term if out is None else out + term
    return out
