"""Dense multi-index tensors over a fixed frame, plus an exact linear solver.

Components live in numpy arrays (dtype=object for exact rationals, float64 in
float mode).  Slots are tagged with their index range: 'H' for the horizontal
range 1..4n, 'F' for the full range 1..4n+3.  The metric is the identity in
the orthonormal frame, so contraction is summation over a shared index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .scalars import ScalarMode, bit_size


class SlotRangeError(ValueError):
    """Two tensor slots with different index ranges were combined."""


@dataclass(frozen=True)
class Tensor:
    """A dense tensor over the frame.

    ``slots``   -- per-slot range tag, 'H' or 'F'.
    ``valence`` -- per-slot 'lo' (covariant) or 'up' (contravariant); purely
                   bookkeeping in an orthonormal frame but kept so raised and
                   lowered versions of the same data stay distinguishable.
    """

    data: np.ndarray
    slots: tuple[str, ...]
    valence: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.valence:
            object.__setattr__(self, "valence", ("lo",) * len(self.slots))
        if len(self.slots) != self.data.ndim or len(self.valence) != self.data.ndim:
            raise ValueError("slot/valence tags must match tensor rank")

    @property
    def rank(self) -> int:
        return self.data.ndim

    def __getitem__(self, idx):
        return self.data[idx]

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_compatible(other)
        return Tensor(self.data + other.data, self.slots, self.valence)

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check_compatible(other)
        return Tensor(self.data - other.data, self.slots, self.valence)

    def scale(self, c) -> "Tensor":
        return Tensor(self.data * c, self.slots, self.valence)

    def _check_compatible(self, other: "Tensor"):
        if self.slots != other.slots:
            raise SlotRangeError(f"slot ranges differ: {self.slots} vs {other.slots}")

    def contract(self, slot_a: int, slot_b: int) -> "Tensor":
        """Trace over two slots of equal range (orthonormal-frame metric)."""
        if self.slots[slot_a] != self.slots[slot_b]:
            raise SlotRangeError(
                f"cannot contract slot {slot_a} ({self.slots[slot_a]}) with "
                f"slot {slot_b} ({self.slots[slot_b]})"
            )
        data = np.trace(self.data, axis1=slot_a, axis2=slot_b)
        if not isinstance(data, np.ndarray):  # full contraction yields a bare scalar
            boxed = np.empty((), dtype=self.data.dtype)
            boxed[()] = data
            data = boxed
        keep = [i for i in range(self.rank) if i not in (slot_a, slot_b)]
        return Tensor(data, tuple(self.slots[i] for i in keep), tuple(self.valence[i] for i in keep))

    def _swap(self, slot_a: int, slot_b: int) -> np.ndarray:
        if self.slots[slot_a] != self.slots[slot_b]:
            raise SlotRangeError("symmetrization slots must share a range")
        return np.swapaxes(self.data, slot_a, slot_b)

    def symmetrize(self, slot_a: int, slot_b: int) -> "Tensor":
        half = _half_like(self.data)
        return Tensor((self.data + self._swap(slot_a, slot_b)) * half, self.slots, self.valence)

    def antisymmetrize(self, slot_a: int, slot_b: int) -> "Tensor":
        half = _half_like(self.data)
        return Tensor((self.data - self._swap(slot_a, slot_b)) * half, self.slots, self.valence)


def _half_like(data: np.ndarray):
    if data.dtype == object:
        from .scalars import Q

        return Q(1, 2)
    return 0.5


def tensor_contract(t: Tensor, slot_a: int, slot_b: int) -> Tensor:
    return t.contract(slot_a, slot_b)


def symmetrize(t: Tensor, slot_a: int, slot_b: int) -> Tensor:
    return t.symmetrize(slot_a, slot_b)


def antisymmetrize(t: Tensor, slot_a: int, slot_b: int) -> Tensor:
    return t.antisymmetrize(slot_a, slot_b)


class LinearSolveError(ValueError):
    """Raised when a linear system is inconsistent or rank-deficient but a
    unique solution was demanded."""


@dataclass
class SolveResult:
    x: np.ndarray | None
    rank: int
    n_unknowns: int
    consistent: bool

    @property
    def unique(self) -> bool:
        return self.consistent and self.rank == self.n_unknowns


@dataclass
class LinearSystem:
    """rows = equations, cols = unknowns; rhs matching."""

    matrix: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        if self.matrix.shape[0] != self.rhs.shape[0]:
            raise ValueError("matrix/rhs row mismatch")


def solve_exact(sys: LinearSystem, mode: ScalarMode | None = None) -> SolveResult:
    """Rational Gaussian elimination with a rank certificate.

    Pivot choice: among the nonzero candidates in the current column, the
    entry of smallest combined numerator/denominator bit size, which keeps
    coefficient growth in check.  In float mode this degrades to partial
    pivoting on magnitude.
    """
    exact = mode is None or mode.exact
    m = [list(row) for row in sys.matrix]
    b = list(sys.rhs)
    n_rows, n_cols = len(m), (len(m[0]) if m else 0)

    def nonzero(x):
        if exact:
            return x != 0
        return abs(x) > 1e-13

    piv_rows: list[tuple[int, int]] = []  # (row, col) of accepted pivots
    piv_r = 0
    for col in range(n_cols):
        candidates = [r for r in range(piv_r, n_rows) if nonzero(m[r][col])]
        if not candidates:
            continue
        if exact:
            r0 = min(candidates, key=lambda r: bit_size(m[r][col]))
        else:
            r0 = max(candidates, key=lambda r: abs(m[r][col]))
        if r0 != piv_r:
            m[piv_r], m[r0] = m[r0], m[piv_r]
            b[piv_r], b[r0] = b[r0], b[piv_r]
        p = m[piv_r][col]
        for r in range(piv_r + 1, n_rows):
            f = m[r][col]
            if not nonzero(f):
                continue
            f = f / p
            for c in range(col, n_cols):
                m[r][c] = m[r][c] - f * m[piv_r][c]
            b[r] = b[r] - f * b[piv_r]
        piv_rows.append((piv_r, col))
        piv_r += 1

    rank = len(piv_rows)
    consistent = all(not nonzero(b[r]) for r in range(rank, n_rows))
    if not consistent or rank < n_cols:
        return SolveResult(x=None, rank=rank, n_unknowns=n_cols, consistent=consistent)

    # back substitution; rank == n_cols so every column carries a pivot
    x = [None] * n_cols
    for piv_r, col in reversed(piv_rows):
        s = b[piv_r]
        for c in range(col + 1, n_cols):
            s = s - m[piv_r][c] * x[c]
        x[col] = s / m[piv_r][col]
    out = np.empty(n_cols, dtype=sys.matrix.dtype)
    out[:] = x
    return SolveResult(x=out, rank=rank, n_unknowns=n_cols, consistent=True)
