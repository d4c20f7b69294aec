"""Structure DSL: parse/serialize round trips, error reporting, and the
equivalence of the two Lie-algebra consistency tests."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcflat.builtins import BUILTINS
from qcflat.scalars import Q
from qcflat.structure import (
    NotALieAlgebraError,
    StructureFile,
    StructureSyntaxError,
    Term,
    d_squared_violation,
    jacobi_violation,
    parse,
    serialize,
    to_lie_frame,
)


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtin_round_trip(name):
    sf = parse(BUILTINS[name])
    assert parse(serialize(sf)) == sf


def test_g1_coefficients():
    sf = parse(BUILTINS["g1"])
    assert Term(Q(-1, 2), 6, 7) in sf.equations[5]
    assert Term(Q(2), 1, 2) in sf.equations[5]


def _terms_strategy():
    pair = st.tuples(st.integers(1, 7), st.integers(1, 7)).filter(lambda p: p[0] < p[1])
    coef = st.builds(Q, st.integers(-8, 8).filter(bool), st.integers(1, 6))
    return st.dictionaries(pair, coef, min_size=0, max_size=5)


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(st.integers(1, 7), _terms_strategy(), min_size=0, max_size=4))
def test_random_round_trip(eqs):
    sf = StructureFile(
        n=1,
        name="probe",
        equations={
            k: tuple(Term(c, i, j) for (i, j), c in sorted(terms.items()))
            for k, terms in eqs.items()
        },
    )
    assert parse(serialize(sf)) == sf


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("de[5] = e[1,2]", "expected 'n = <int>'"),
        ("n = 0", "n must be positive"),
        ("n = 1\nde[9] = e[1,2]", "out of range"),
        ("n = 1\nde[5] = e[2,1]", "requires i < j"),
        ("n = 1\nde[5] = e[1,8]", "out of range"),
        ("n = 1\nde[5] = e[1,2] + e[1,2]", "duplicate wedge term"),
        ("n = 1\nde[5] = e[1,2]\nde[5] = e[3,4]", "duplicate equation"),
        ("n = 1\nde[5] = 1/0 e[1,2]", "zero denominator"),
        ("n = 1\nde[5] = + - e[1,2]", "unexpected sign"),
        ("n = 1\nde[5] = e[1,2] e[3,4]", "between terms"),
        ("n = 1\nde[5] = e[1,2] +", "dangling sign"),
        ("n = 1\nde[5] =", "empty right-hand side"),
        ("n = 1\nde[5] = e[1,2] $ 3", "unexpected character"),
        ("", "missing required line"),
    ],
)
def test_syntax_errors(text, fragment):
    with pytest.raises(StructureSyntaxError, match=fragment):
        parse(text)


def test_error_carries_position():
    with pytest.raises(StructureSyntaxError) as err:
        parse("n = 1\nde[5] = e[2,1]")
    assert err.value.line == 2 and err.value.column > 1


def test_comments_and_zero_rhs():
    sf = parse("# header\nn = 1  # trailing\nde[5] = 0\n")
    assert sf.equations == {}


JACOBI_BAD = """\
n = 1
de[5] = 2 e[1,2] + 2 e[3,4] + e[6,7]
de[6] = 2 e[1,3] - 2 e[2,4]
de[7] = 2 e[1,4] + 2 e[2,3]
"""


def test_jacobi_violation_names_the_triple():
    with pytest.raises(NotALieAlgebraError) as err:
        to_lie_frame(parse(JACOBI_BAD))
    assert "Jacobi" in str(err.value)
    assert len(err.value.triple) == 3


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_consistency_tests_agree_on_builtins(name):
    sf = parse(BUILTINS[name])
    assert d_squared_violation(sf) is None
    assert jacobi_violation(to_lie_frame(sf)) is None


def test_consistency_tests_agree_on_violation():
    sf = parse(JACOBI_BAD)
    assert d_squared_violation(sf) is not None
    assert jacobi_violation(to_lie_frame(sf, check_jacobi=False)) is not None
