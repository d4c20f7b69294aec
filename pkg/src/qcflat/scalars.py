"""Exact rational scalars and the scalar-mode switch.

All geometric data in this package is built from rationals.  The default
backend is gmpy2's ``mpq`` (GMP-backed, always stored in lowest terms with a
positive denominator); ``fractions.Fraction`` is a drop-in fallback when
gmpy2 is unavailable.  float64 is an opt-in mode for speed on larger models;
zero tests in that mode are relative to the magnitude of the operands.
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    from gmpy2 import mpq as _ratio

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _ratio

    _HAVE_GMPY2 = False

import numpy as np

#: the exact rational constructor: Q(3, 2) == 3/2, Q("3/2") works too.
Q = _ratio

ZERO = Q(0)
ONE = Q(1)


def rational_from_string(text: str):
    """Parse ``int`` or ``int/posint`` into an exact rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        d = int(den)
        if d <= 0:
            raise ValueError(f"denominator must be positive: {text!r}")
        return Q(int(num), d)
    return Q(int(text))


def rational_to_string(x) -> str:
    num, den = x.numerator, x.denominator
    return str(num) if den == 1 else f"{num}/{den}"


def bit_size(x) -> int:
    """Total bit length of numerator and denominator; pivot-selection metric."""
    return int(x.numerator).bit_length() + int(x.denominator).bit_length()


@dataclass(frozen=True)
class ScalarMode:
    """Arithmetic mode: exact rationals (default) or float64 with a tolerance."""

    exact: bool = True
    float_tolerance: float = 1e-9

    def rat(self, p: int, q: int = 1):
        """The scalar p/q in this mode's arithmetic."""
        return Q(p, q) if self.exact else p / q

    def zeros(self, *shape) -> np.ndarray:
        if self.exact:
            a = np.empty(shape, dtype=object)
            a[...] = ZERO
            return a
        return np.zeros(shape)

    def eye(self, m: int) -> np.ndarray:
        a = self.zeros(m, m)
        for i in range(m):
            a[i, i] = self.rat(1)
        return a

    def convert(self, arr: np.ndarray) -> np.ndarray:
        """Exact array -> this mode's dtype (identity in exact mode)."""
        if self.exact:
            return arr
        out = np.zeros(arr.shape)
        for idx, v in np.ndenumerate(arr):
            out[idx] = float(v)
        return out

    def is_zero(self, x, scale=0) -> bool:
        """Exact mode: literal zero.  Float mode: |x| <= tol * (1 + scale)."""
        if self.exact:
            return x == 0
        return abs(x) <= self.float_tolerance * (1.0 + abs(scale))


EXACT = ScalarMode(exact=True)


def max_abs(arr) -> float:
    """Largest |entry| as a float (display / scale purposes)."""
    flat = np.asarray(arr).ravel()
    if flat.size == 0:
        return 0.0
    return max(abs(float(v)) for v in flat)


def argmax_abs(arr):
    """Index tuple of the entry with the largest magnitude."""
    a = np.asarray(arr)
    flat = a.ravel()
    best, best_i = -1.0, 0
    for i, v in enumerate(flat):
        av = abs(float(v))
        if av > best:
            best, best_i = av, i
    return np.unravel_index(best_i, a.shape)
