import itertools
from fractions import Fraction

import pytest

from zinbiel import Algebra, CatalogId, direct_sum, make_f1, make_f2, make_f3, make_nf, zinbiel_check
from zinbiel.catalog import (
    SAMPLE_ALPHAS,
    a15_coefficient,
    binomial,
    dim4_catalog,
    make_dim4,
    make_filiform,
)
from zinbiel.errors import DimensionTooSmall, InvalidParameter


def pascal(limit):
    rows = [[1]]
    for m in range(1, limit + 1):
        prev = rows[-1]
        rows.append([1] + [prev[k - 1] + prev[k] for k in range(1, m)] + [1])
    return rows


PASCAL = pascal(40)

# Four-dimensional tables copied from the classification list (1-based; alpha marks the family parameter).
A = "alpha"
DIM4 = {
    1: {(1, 1): {2: 1}, (1, 2): {3: 1}, (2, 1): {3: 2}, (1, 3): {4: 1}, (2, 2): {4: 3}, (3, 1): {4: 3}},
    2: {(1, 1): {3: 1}, (1, 2): {4: 1}, (1, 3): {4: 1}, (3, 1): {4: 2}},
    3: {(1, 1): {3: 1}, (1, 3): {4: 1}, (2, 2): {4: 1}, (3, 1): {4: 2}},
    4: {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 1): {3: -1}},
    5: {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 1): {3: -1}, (2, 2): {4: 1}},
    6: {(1, 1): {4: 1}, (1, 2): {3: 1}, (2, 1): {3: -1}, (2, 2): {3: -2, 4: 1}},
    7: {(1, 2): {3: 1}, (2, 1): {4: 1}, (2, 2): {3: -1}},
    8: {(1, 1): {3: 1}, (1, 2): {4: 1}, (2, 1): {3: (-1, A)}, (2, 2): {4: -1}},
    9: {(1, 1): {4: 1}, (1, 2): {4: (1, A)}, (2, 1): {4: (-1, A)}, (2, 2): {4: 1}, (3, 3): {4: 1}},
    10: {(1, 2): {4: 1}, (1, 3): {4: 1}, (2, 1): {4: -1}, (2, 2): {4: 1}, (3, 1): {4: 1}},
    11: {(1, 1): {4: 1}, (1, 2): {4: 1}, (2, 1): {4: -1}, (3, 3): {4: 1}},
    12: {(1, 2): {3: 1}, (2, 1): {4: 1}},
    13: {(1, 2): {3: 1}, (2, 1): {3: -1}, (2, 2): {4: 1}},
    14: {(2, 1): {4: 1}, (2, 2): {3: 1}},
    15: {(1, 2): {4: 1}, (2, 2): {3: 1}, (2, 1): {4: "A15"}},
    16: {(1, 2): {4: 1}, (2, 1): {4: -1}, (3, 3): {4: 1}},
}


def expected_dim4(k, alpha):
    table = {}
    for key, terms in DIM4[k].items():
        out = {}
        for e, c in terms.items():
            if c == "A15":
                c = (1 + alpha) / (1 - alpha)
            elif isinstance(c, tuple):
                c = c[0] * alpha
            out[e] = Fraction(c)
        table[key] = out
    return Algebra.from_table(4, table)


def test_binomial_against_pascal():
    for m, row in enumerate(PASCAL):
        for k, v in enumerate(row):
            assert binomial(m, k) == v
        assert binomial(m, m + 1) == 0
    assert binomial(3, 2) == 3
    assert binomial(29, 14) == PASCAL[29][14]


@pytest.mark.parametrize("n", range(1, 11))
def test_nf_coefficient_law(n):
    A = make_nf(n)
    for i, j, k in itertools.product(range(1, n + 1), repeat=3):
        want = PASCAL[i + j - 1][j] if (k == i + j) else 0
        assert A.constants[i - 1, j - 1, k - 1] == want


@pytest.mark.parametrize("n", range(5, 9))
def test_f1_coefficient_law_and_split(n):
    A = make_f1(n)
    for i, j, k in itertools.product(range(1, n + 1), repeat=3):
        want = PASCAL[i + j - 1][j] if (k == i + j and k <= n - 1) else 0
        assert A.constants[i - 1, j - 1, k - 1] == want
    assert A == direct_sum(make_nf(n - 1), Algebra.zero(1))


def test_nf_examples():
    assert make_nf(4) == expected_dim4(1, None)
    assert make_nf(7).constants[2, 1, 4] == 6
    assert not list(make_nf(1).nonzero_products())
    with pytest.raises(DimensionTooSmall):
        make_nf(0)


def test_filiform_extra_products():
    f2 = make_f2(5)
    assert f2.constants[4, 0, 3] == 1
    assert make_f2(5) == make_filiform(5, 1, 0)
    f3 = make_f3(6)
    assert f3.constants[5, 5, 4] == 1
    others = [(i, j) for i, j, _, _ in f3.nonzero_products() if 5 in (i, j)]
    assert others == [(5, 5)]
    assert make_filiform(5, 0, 0) == make_f1(5)
    assert zinbiel_check(make_filiform(6, 3, 4)).holds


@pytest.mark.parametrize("maker", [make_f1, make_f2, make_f3])
def test_filiform_needs_dimension_five(maker):
    with pytest.raises(DimensionTooSmall):
        maker(4)
    with pytest.raises(DimensionTooSmall):
        make_filiform(4, 1, 1)


def test_filiform_grid_satisfies_identity():
    grid = [Fraction(0), Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(7, 5)]
    for n in range(5, 9):
        for a, b in itertools.product(grid, grid):
            assert zinbiel_check(make_filiform(n, a, b)).holds


@pytest.mark.parametrize("k", range(1, 17))
def test_dim4_tables_match_the_list(k):
    alphas = SAMPLE_ALPHAS + (Fraction(2, 3), Fraction(-5)) if k in (8, 9, 15) else (None,)
    for a in alphas:
        B = make_dim4(k, a)
        assert B == expected_dim4(k, a)
        assert zinbiel_check(B).holds


def test_dim4_examples():
    assert make_dim4(15, 0).constants[1, 0, 3] == 1
    assert make_dim4(8, 2).constants[1, 0, 2] == -2
    assert a15_coefficient(Fraction(1, 2)) == 3
    with pytest.raises(InvalidParameter):
        make_dim4(15, 1)
    with pytest.raises(InvalidParameter):
        make_dim4(8)
    with pytest.raises(InvalidParameter):
        make_dim4(3, 1)
    with pytest.raises(InvalidParameter):
        make_dim4(17)


def test_catalog_ids():
    assert str(CatalogId("A8", alpha=Fraction(1, 2))) == "A8(1/2)"
    assert str(CatalogId("NF", 4)) == "NF(4)"
    assert str(CatalogId("FAB", 5, 1, 2)) == "F5(1, 2)"
    assert CatalogId("A1").build() == make_nf(4)
    assert CatalogId("F2", 6).build() == make_f2(6)
    assert CatalogId("FAB", 6, 3, 4).build() == make_filiform(6, 3, 4)
    with pytest.raises(InvalidParameter):
        CatalogId("X").build()


def test_dim4_catalog_contents():
    cat = dim4_catalog()
    assert len(cat) == 13 + 3 * len(SAMPLE_ALPHAS)
    assert set(cat) >= {"A1", "A16", "A8(1/2)", "A15(2)"}
