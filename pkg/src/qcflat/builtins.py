"""Built-in structure files: the 7- and 11-dimensional quaternionic
Heisenberg groups and two solvable 7-dimensional groups, one with vanishing
torsion endomorphism and negative scalar curvature (g1) and one with
nonvanishing torsion endomorphism (g3)."""

from __future__ import annotations

from .structure import StructureFile, parse

HEISENBERG_N1 = """\
# 7-dimensional quaternionic Heisenberg group
name = heisenberg-n1
n = 1
de[5] = 2 e[1,2] + 2 e[3,4]
de[6] = 2 e[1,3] - 2 e[2,4]
de[7] = 2 e[1,4] + 2 e[2,3]
"""

HEISENBERG_N2 = """\
# 11-dimensional quaternionic Heisenberg group
name = heisenberg-n2
n = 2
de[9]  = 2 e[1,2] + 2 e[3,4] + 2 e[5,6] + 2 e[7,8]
de[10] = 2 e[1,3] - 2 e[2,4] + 2 e[5,7] - 2 e[6,8]
de[11] = 2 e[1,4] + 2 e[2,3] + 2 e[5,8] + 2 e[6,7]
"""

G1 = """\
# 7-dimensional solvable group: zero torsion endomorphism, negative
# scalar curvature, vanishing conformal curvature
name = g1
n = 1
de[2] = -e[1,2] - 2 e[3,4] - 1/2 e[3,7] + 1/2 e[4,6]
de[3] = -e[1,3] + 2 e[2,4] + 1/2 e[2,7] - 1/2 e[4,5]
de[4] = -e[1,4] - 2 e[2,3] - 1/2 e[2,6] + 1/2 e[3,5]
de[5] = 2 e[1,2] + 2 e[3,4] - 1/2 e[6,7]
de[6] = 2 e[1,3] - 2 e[2,4] + 1/2 e[5,7]
de[7] = 2 e[1,4] + 2 e[2,3] - 1/2 e[5,6]
"""

G3 = """\
# 7-dimensional group with nonvanishing torsion endomorphism
name = g3
n = 1
de[1] = -3/2 e[1,3] + 3/2 e[2,4] - 3/4 e[2,5] + 1/4 e[3,6] - 1/4 e[4,7] + 1/8 e[5,7]
de[2] = -3/2 e[1,4] - 3/2 e[2,3] + 3/4 e[1,5] + 1/4 e[3,7] + 1/4 e[4,6] - 1/8 e[5,6]
de[4] = e[1,2] + e[3,4] + 1/2 e[1,7] - 1/2 e[2,6] + 1/4 e[6,7]
de[5] = 2 e[1,2] + 2 e[3,4] + e[1,7] - e[2,6] + 1/2 e[6,7]
de[6] = 2 e[1,3] - 2 e[2,4] + e[2,5]
de[7] = 2 e[1,4] + 2 e[2,3] - e[1,5]
"""

BUILTINS: dict[str, str] = {
    "heisenberg-n1": HEISENBERG_N1,
    "heisenberg-n2": HEISENBERG_N2,
    "g1": G1,
    "g3": G3,
}


def builtin_names() -> list[str]:
    return sorted(BUILTINS)


def get_builtin(name: str) -> StructureFile:
    try:
        text = BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; available: {', '.join(builtin_names())}") from None
    return parse(text)
