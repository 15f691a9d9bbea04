
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from zinbiel.errors import SingularMatrix
from zinbiel.linalg import (
    Subspace,
    identity,
    inverse,
    inverse_mod_p,
    left_kernel,
    rank,
    rank_mod_p,
    row_reduce,
)
from zinbiel.scalars import QuadraticScalar

small = st.fractions(min_value=-4, max_value=4, max_denominator=4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def _sympy(M):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_and_rref_match_sympy(M):
    S = _sympy(M)
    assert rank(M) == S.rank()
    r, R = row_reduce(M)
    expected, _ = S.rref()
    assert r == S.rank()
    got = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in R])
    assert got == expected


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse(M):
    if _sympy(M).det() == 0:
        with pytest.raises(SingularMatrix):
            inverse(M)
        return
    inv = inverse(M)
    assert np.array_equal(np.array(M, dtype=object).dot(inv), identity(len(M)))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_left_kernel(M):
    K = left_kernel(np.array(M, dtype=object))
    assert len(K) == len(M) - rank(M)
    for v in K:
        assert all(x == 0 for x in np.array(v, dtype=object).dot(np.array(M, dtype=object)))


def test_rank_over_quadratic_extension():
    s2 = QuadraticScalar(0, 1, 2)
    # rows (1, sqrt2) and (sqrt2, 2) are dependent; (1, 1) is not in their span
    assert rank([[1, s2], [s2, 2]]) == 1
    assert rank([[1, s2], [1, 1]]) == 2


def test_subspace_canonical_and_membership():
    a = Subspace.span([[1, 2, 0], [0, 1, 1]], 3)
    b = Subspace.span([[1, 3, 1], [2, 4, 0], [1, 2, 0]], 3)
    assert a == b
    assert a.dim == 2 and a.pivots == (0, 1)
    assert a.contains([3, 7, 1]) and not a.contains([0, 0, 1])
    assert Subspace.span([[0, 0, 1]], 3).issubspace(Subspace.full(3))
    assert str(Subspace.span([[2, 0]], 2)) == "span{(1 0)}"
    assert str(Subspace.zero(2)) == "0"


def test_mod_p_helpers():
    assert rank_mod_p([[1, 1], [1, 1]], 2, 2) == 1
    assert rank_mod_p([[2, 0], [0, 1]], 2, 2) == 1
    assert rank_mod_p([[2, 0], [0, 1]], 2, 3) == 2
    M = [[1, 1, 0], [0, 1, 1], [1, 0, 0]]
    inv = inverse_mod_p(M, 3)
    prod = (np.array(M) @ np.array(inv)) % 3
    assert (prod == np.eye(3, dtype=int)).all()
    with pytest.raises(SingularMatrix):
        inverse_mod_p([[1, 1], [1, 1]], 2)


def test_subspace_mod_p():
    S = Subspace.span([[1, 1, 0], [2, 2, 0]], 3, modulus=3)
    assert S.dim == 1 and S.contains([2, 2, 0])
