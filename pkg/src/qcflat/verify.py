"""Residual bookkeeping shared by all identity verifiers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scalars import ScalarMode, argmax_abs, max_abs


@dataclass
class Check:
    """One verified identity: max |residual|, the magnitude it is compared
    against, and the worst offending index tuple for debugging."""

    name: str
    residual: float
    scale: float
    worst: tuple | None
    passed: bool

    def __str__(self):
        status = "ok" if self.passed else "FAIL"
        loc = "" if self.worst is None else f" at {self.worst}"
        return f"[{status}] {self.name}: residual {self.residual:g}{loc}"


def check_zero(name: str, arr, mode: ScalarMode, scale=None) -> Check:
    """Check that every entry of ``arr`` is zero (exactly, or within the
    float-mode tolerance relative to ``scale``)."""
    a = np.asarray(arr)
    if a.size == 0:
        return Check(name, 0.0, 0.0, None, True)
    sc = float(scale) if scale is not None else 1.0
    passed = all(mode.is_zero(v, scale=sc) for v in a.ravel())
    res = max_abs(a)
    worst = argmax_abs(a) if res > 0 else None
    return Check(name, res, sc, worst, passed)


def all_passed(checks) -> bool:
    return all(c.passed for c in checks)
