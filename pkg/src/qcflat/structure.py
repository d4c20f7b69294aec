"""Structure-equation DSL: parse/serialize left-invariant coframe data and
convert it to Lie-algebra structure constants.

File format (UTF-8 text, '#' starts a comment):

    name = g1            # optional
    n = 1                # required, dimension is 4n+3
    de[5] = 2 e[1,2] + 2 e[3,4] - 1/2 e[6,7]

Each ``de[k]`` line lists the coefficients of the exterior derivative of the
k-th coframe 1-form in the basis e[i,j] = e^i wedge e^j with i < j; unlisted
coframe indices mean de^k = 0.  Wedge normalization: e^{ij}(e_a, e_b) =
delta^i_a delta^j_b - delta^i_b delta^j_a, hence de^k(e_i, e_j) =
-e^k([e_i, e_j]) and the bracket constants are the negated coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .scalars import Q, rational_to_string


class StructureSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotALieAlgebraError(ValueError):
    def __init__(self, triple: tuple[int, int, int], component: int):
        i, j, l = triple
        super().__init__(
            "not a Lie algebra: Jacobi identity fails for "
            f"(e_{i}, e_{j}, e_{l}) in the e_{component} component"
        )
        self.triple = triple
        self.component = component


@dataclass(frozen=True)
class Term:
    coefficient: object  # exact rational
    i: int  # 1-based, i < j
    j: int


@dataclass
class StructureFile:
    n: int
    name: str = ""
    equations: dict[int, tuple[Term, ...]] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return 4 * self.n + 3

    def __eq__(self, other):
        return (
            isinstance(other, StructureFile)
            and self.n == other.n
            and self.name == other.name
            and _normalized(self.equations) == _normalized(other.equations)
        )


def _normalized(equations):
    out = {}
    for k, terms in equations.items():
        kept = tuple(sorted((t for t in terms if t.coefficient != 0), key=lambda t: (t.i, t.j)))
        if kept:
            out[k] = kept
    return out


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<de>de\[\s*(?P<k>\d+)\s*\])
      | (?P<e>e\[\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\])
      | (?P<rat>-?\d+(?:\s*/\s*\d+)?)
      | (?P<op>[+\-=*])
    )""",
    re.VERBOSE,
)


def _tokenize(line: str, lineno: int):
    pos, out = 0, []
    while pos < len(line):
        if line[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(line, pos)
        if not m or m.start() != pos and line[pos:m.start()].strip():
            raise StructureSyntaxError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        out.append((m, pos + 1))
        pos = m.end()
    return out


def parse(text: str) -> StructureFile:
    """Parse the structure DSL; raises StructureSyntaxError with position."""
    name = ""
    n = None
    equations: dict[int, tuple[Term, ...]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = re.match(r"\s*name\s*=\s*([A-Za-z_][A-Za-z0-9_\-]*)\s*$", line)
        if m:
            name = m.group(1)
            continue
        m = re.match(r"\s*n\s*=\s*(\d+)\s*$", line)
        if m:
            n = int(m.group(1))
            if n < 1:
                raise StructureSyntaxError("n must be positive", lineno, 1)
            continue
        if n is None:
            raise StructureSyntaxError("expected 'n = <int>' before equations", lineno, 1)
        k, terms = _parse_equation(line, lineno, dim=4 * n + 3)
        if k in equations:
            raise StructureSyntaxError(f"duplicate equation for de[{k}]", lineno, 1)
        equations[k] = terms

    if n is None:
        raise StructureSyntaxError("missing required line 'n = <int>'", 1, 1)
    return StructureFile(n=n, name=name, equations=_normalized(equations))


def _parse_equation(line: str, lineno: int, dim: int) -> tuple[int, tuple[Term, ...]]:
    tokens = _tokenize(line, lineno)
    it = iter(range(len(tokens)))

    def tok(idx):
        return tokens[idx] if idx < len(tokens) else (None, len(line) + 1)

    m, col = tok(0)
    if m is None or not m.group("de"):
        raise StructureSyntaxError("expected 'de[<k>]'", lineno, col)
    k = int(m.group("k"))
    if not 1 <= k <= dim:
        raise StructureSyntaxError(f"coframe index {k} out of range 1..{dim}", lineno, col)
    m, col = tok(1)
    if m is None or m.group("op") != "=":
        raise StructureSyntaxError("expected '='", lineno, col)

    terms: list[Term] = []
    seen: set[tuple[int, int]] = set()
    idx = 2
    sign = None  # pending sign; terms after the first need an explicit one
    have_term = False
    # a single literal 0 means "no terms"
    if len(tokens) == 3 and tokens[2][0].group("rat") == "0":
        return k, ()
    while idx < len(tokens):
        m, col = tok(idx)
        if m.group("op") in ("+", "-"):
            if sign is not None:
                raise StructureSyntaxError("unexpected sign", lineno, col)
            sign = Q(1) if m.group("op") == "+" else Q(-1)
            idx += 1
            continue
        if have_term and sign is None:
            raise StructureSyntaxError("expected '+' or '-' between terms", lineno, col)
        coef = Q(1)
        if m.group("rat"):
            rat = m.group("rat").replace(" ", "")
            if "/" in rat:
                num, den = rat.split("/")
                if int(den) == 0:
                    raise StructureSyntaxError("zero denominator", lineno, col)
                coef = Q(int(num), int(den))
            else:
                coef = Q(int(rat))
            idx += 1
            m, col = tok(idx)
            if m is not None and m.group("op") == "*":
                idx += 1
                m, col = tok(idx)
        if m is None or not m.group("e"):
            raise StructureSyntaxError("expected wedge term 'e[<i>,<j>]'", lineno, col)
        i, j = int(m.group("i")), int(m.group("j"))
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise StructureSyntaxError(f"index out of range 1..{dim} in e[{i},{j}]", lineno, col)
        if i >= j:
            raise StructureSyntaxError(f"wedge term e[{i},{j}] requires i < j", lineno, col)
        if (i, j) in seen:
            raise StructureSyntaxError(f"duplicate wedge term e[{i},{j}]", lineno, col)
        seen.add((i, j))
        terms.append(Term((sign if sign is not None else Q(1)) * coef, i, j))
        sign = None
        idx += 1
        have_term = True
    if sign is not None:
        raise StructureSyntaxError("dangling sign at end of equation", lineno, len(line))
    if not have_term:
        raise StructureSyntaxError("empty right-hand side (use '0' for zero)", lineno, len(line))
    return k, tuple(terms)


def serialize(sf: StructureFile) -> str:
    """Emit the DSL text; terms sorted by (i,j), coefficients in lowest terms."""
    lines = []
    if sf.name:
        lines.append(f"name = {sf.name}")
    lines.append(f"n = {sf.n}")
    for k in sorted(_normalized(sf.equations)):
        parts = []
        for t in _normalized(sf.equations)[k]:
            c = t.coefficient
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            coef = "" if mag == 1 else f"{rational_to_string(mag)} "
            parts.append((sign, f"{coef}e[{t.i},{t.j}]"))
        first_sign, first_body = parts[0]
        rhs = (first_sign if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            rhs += f" {sign} {body}"
        lines.append(f"de[{k}] = {rhs}")
    return "\n".join(lines) + "\n"


@dataclass
class LieFrame:
    """Structure constants c^k_{ij} of [e_i, e_j] = sum_k c^k_{ij} e_k.

    ``c`` is indexed 0-based: c[i, j, k] = c^k_{ij}, antisymmetric in (i, j).
    """

    n: int
    c: np.ndarray
    name: str = ""

    @property
    def dim(self) -> int:
        return 4 * self.n + 3

    def bracket(self, i: int, j: int) -> np.ndarray:
        return self.c[i, j]


def to_lie_frame(sf: StructureFile, check_jacobi: bool = True) -> LieFrame:
    """Convert coframe derivatives to brackets: de^k(e_i,e_j) = -c^k_{ij}."""
    dim = sf.dim
    c = np.empty((dim, dim, dim), dtype=object)
    c[...] = Q(0)
    for k, terms in sf.equations.items():
        for t in terms:
            c[t.i - 1, t.j - 1, k - 1] = -t.coefficient
            c[t.j - 1, t.i - 1, k - 1] = t.coefficient
    frame = LieFrame(n=sf.n, c=c, name=sf.name)
    if check_jacobi:
        bad = jacobi_violation(frame)
        if bad is not None:
            (i, j, l), p = bad
            raise NotALieAlgebraError((i + 1, j + 1, l + 1), p + 1)
    return frame


def jacobi_violation(frame: LieFrame):
    """First violating (triple, component) of the Jacobi identity, or None."""
    c, dim = frame.c, frame.dim
    for i in range(dim):
        for j in range(i + 1, dim):
            for l in range(j + 1, dim):
                # [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]
                v = c[i, j] @ c[:, l, :] + c[j, l] @ c[:, i, :] + c[l, i] @ c[:, j, :]
                for p in range(dim):
                    if v[p] != 0:
                        return (i, j, l), p
    return None


def d_squared_violation(sf: StructureFile):
    """First nonzero coefficient of d(de^k), or None.  Equivalent to Jacobi.

    d(de^k) = sum_{i<j} a^k_{ij} (de^i ^ e^j - e^i ^ de^j); we expand in the
    basis e^{abc}, a<b<c.
    """
    dim = sf.dim
    a = np.empty((dim, dim, dim), dtype=object)
    a[...] = Q(0)
    for k, terms in sf.equations.items():
        for t in terms:
            a[k - 1, t.i - 1, t.j - 1] = t.coefficient
            a[k - 1, t.j - 1, t.i - 1] = -t.coefficient
    for k in range(dim):
        # coefficient of e^{p q r} (p<q<r) in d(de^k):
        # sum over cyclic (p,q,r) of sum_m a[k,m,r_c] * a[m,p_c,q_c]
        for p in range(dim):
            for q in range(p + 1, dim):
                for r in range(q + 1, dim):
                    total = Q(0)
                    for (x, y, z) in ((p, q, r), (q, r, p), (r, p, q)):
                        total += sum(a[k, m, z] * a[m, x, y] for m in range(dim))
                    if total != 0:
                        return k + 1, (p + 1, q + 1, r + 1)
    return None
