"""Constructors for the named Zinbiel algebras.

* ``NF_n``: one-generated (nul-filiform) algebra, ``e_i o e_j = C(i+j-1, j) e_{i+j}`` for ``i + j <= n``.
* ``F_n^1, F_n^2, F_n^3``: the three filiform classes (``n >= 5``), and the
  two-parameter adapted form ``F_n(alpha, beta)`` they are normalized from.
* ``A_1 .. A_16``: the non-split four-dimensional algebras, three of them
  one-parameter families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra
from .errors import DimensionTooSmall, InvalidParameter
from .scalars import format_rational, to_scalar


def binomial(m: int, k: int) -> int:
    """Exact ``C(m, k)``, zero when ``k > m``."""
    return math.comb(m, k)


def _graded_table(n: int, top: int) -> dict:
    """Products ``e_i o e_j = C(i+j-1, j) e_{i+j}`` for ``i + j <= top`` (1-based)."""
    table = {}
    for i in range(1, top):
        for j in range(1, top - i + 1):
            table[(i, j)] = {i + j: binomial(i + j - 1, j)}
    return table


def make_nf(n: int) -> Algebra:
    if n < 1:
        raise DimensionTooSmall("NF_n needs n >= 1")
    return Algebra.from_table(n, _graded_table(n, n))


def _require_filiform_dim(n: int):
    if n < 5:
        raise DimensionTooSmall(f"filiform constructors need n >= 5, got {n}")


def make_filiform(n: int, alpha=0, beta=0) -> Algebra:
    """Adapted form: ``F_n^1`` plus ``e_n o e_1 = alpha e_{n-1}`` and ``e_n o e_n = beta e_{n-1}``."""
    _require_filiform_dim(n)
    table = _graded_table(n, n - 1)
    alpha, beta = to_scalar(alpha), to_scalar(beta)
    if alpha != 0:
        table[(n, 1)] = {n - 1: alpha}
    if beta != 0:
        table[(n, n)] = {n - 1: beta}
    return Algebra.from_table(n, table)


def make_f1(n: int) -> Algebra:
    return make_filiform(n, 0, 0)


def make_f2(n: int) -> Algebra:
    return make_filiform(n, 1, 0)


def make_f3(n: int) -> Algebra:
    return make_filiform(n, 0, 1)


def a15_coefficient(alpha) -> Fraction:
    """Coefficient of ``e_4`` in ``e_2 o e_1`` for ``A_15(alpha)``: ``(1 + alpha) / (1 - alpha)``."""
    alpha = to_scalar(alpha)
    if alpha == 1:
        raise InvalidParameter("A15 is undefined at alpha = 1")
    return (1 + alpha) / (1 - alpha)


def _dim4_table(k: int, a) -> dict:
    if k == 1:
        return _graded_table(4, 4)
    if k == 8:
        return {(1, 1): {3: 1}, (1, 2): {4: 1}, (2, 1): {3: -a}, (2, 2): {4: -1}}
    if k == 9:
        return {(1, 1): {4: 1}, (1, 2): {4: a}, (2, 1): {4: -a}, (2, 2): {4: 1}, (3, 3): {4: 1}}
    if k == 15:
        return {(1, 2): {4: 1}, (2, 1): {4: a15_coefficient(a)}, (2, 2): {3: 1}}
    tables = {
        2: {(1, 1): {3: 1}, (1, 2): {4: 1}, (1, 3): {4: 1}, (3, 1): {4: 2}},
        3: {(1, 1): {3: 1}, (1, 3): {4: 1}, (2, 2): {4: 1}, (3, 1): {4: 2}},
        4: {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 1): {3: -1}},
        5: {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 1): {3: -1}, (2, 2): {4: 1}},
        6: {(1, 1): {4: 1}, (1, 2): {3: 1}, (2, 1): {3: -1}, (2, 2): {3: -2, 4: 1}},
        7: {(1, 2): {3: 1}, (2, 1): {4: 1}, (2, 2): {3: -1}},
        10: {(1, 2): {4: 1}, (1, 3): {4: 1}, (2, 1): {4: -1}, (2, 2): {4: 1}, (3, 1): {4: 1}},
        11: {(1, 1): {4: 1}, (1, 2): {4: 1}, (2, 1): {4: -1}, (3, 3): {4: 1}},
        12: {(1, 2): {3: 1}, (2, 1): {4: 1}},
        13: {(1, 2): {3: 1}, (2, 1): {3: -1}, (2, 2): {4: 1}},
        14: {(2, 1): {4: 1}, (2, 2): {3: 1}},
        16: {(1, 2): {4: 1}, (2, 1): {4: -1}, (3, 3): {4: 1}},
    }
    return tables[k]


PARAMETRIC = frozenset({8, 9, 15})


def make_dim4(k: int, alpha=None) -> Algebra:
    """The algebra ``A_k`` (1 <= k <= 16); families 8, 9 and 15 need ``alpha``."""
    if isinstance(k, str):
        k = int(k.lstrip("Aa"))
    if not 1 <= k <= 16:
        raise InvalidParameter(f"no algebra A{k} in the four-dimensional list")
    if k in PARAMETRIC:
        if alpha is None:
            raise InvalidParameter(f"A{k} is a family; alpha is required")
        alpha = to_scalar(alpha)
    elif alpha is not None:
        raise InvalidParameter(f"A{k} takes no parameter")
    return Algebra.from_table(4, _dim4_table(k, alpha))


@dataclass(frozen=True)
class CatalogId:
    """Name of a catalog algebra: ``tag`` in {NF, F1, F2, F3, FAB, A1..A16} plus arguments."""

    tag: str
    n: int = 4
    alpha: object = None
    beta: object = None

    def build(self) -> Algebra:
        t = self.tag.upper()
        if t == "NF":
            return make_nf(self.n)
        if t in ("F1", "F2", "F3"):
            return {"F1": make_f1, "F2": make_f2, "F3": make_f3}[t](self.n)
        if t == "FAB":
            return make_filiform(self.n, self.alpha or 0, self.beta or 0)
        if t.startswith("A"):
            return make_dim4(int(t[1:]), self.alpha)
        raise InvalidParameter(f"unknown catalog tag {self.tag!r}")

    def __str__(self):
        t = self.tag.upper()
        if t in ("NF", "F1", "F2", "F3"):
            return f"{t}({self.n})"
        if t == "FAB":
            return f"F{self.n}({format_rational(self.alpha or 0)}, {format_rational(self.beta or 0)})"
        if self.alpha is not None:
            return f"{t}({format_rational(self.alpha)})"
        return t


SAMPLE_ALPHAS = (Fraction(0), Fraction(1, 2), Fraction(2))


def dim4_catalog(alphas=SAMPLE_ALPHAS) -> dict[str, Algebra]:
    """All sixteen algebras, families sampled at each of ``alphas``."""
    out = {}
    for k in range(1, 17):
        if k in PARAMETRIC:
            for a in alphas:
                out[str(CatalogId(f"A{k}", alpha=a))] = make_dim4(k, a)
        else:
            out[f"A{k}"] = make_dim4(k)
    return out


def split_dim4() -> Algebra:
    """The split algebra met in the (2, 1, 0) case: ``e1e1 = e3, e1e3 = e4, e3e1 = 2e4``, ``e2`` idle."""
    return Algebra.from_table(4, {(1, 1): {3: 1}, (1, 3): {4: 1}, (3, 1): {4: 2}})
