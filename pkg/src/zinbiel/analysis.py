"""Nilpotency analysis: power sequence, nilindex, shape, gradation and invariants."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from fractions import Fraction


import numpy as np

from . import linalg
from .algebra import Algebra, BasisChange, transport
from .errors import NotNilpotent
from .linalg import Subspace


@dataclass(frozen=True)
class PowerSeries:
    subspaces: tuple
    dims: tuple

    @property
    def nilpotent(self) -> bool:
        return self.dims[-1] == 0


class Shape(enum.Enum):
    NUL_FILIFORM = "NulFiliform"
    FILIFORM = "Filiform"
    OTHER = "Other"

    def __str__(self):
        return self.value


def _left_products(A: Algebra, rows) -> list:
    """All vectors ``e_i o v`` for ``v`` in ``rows`` (spanning set of ``A o span(rows)``)."""
    if not rows:
        return []
    form = A.integer_form()
    if form is not None and all(isinstance(x, Fraction) for r in rows for x in r):
        c = form[0]
        V = np.array([linalg.integer_row(r) for r in rows], dtype=object)
    else:
        c = A.constants
        V = np.array(rows, dtype=object)
    # out[v, i, k] = sum_j V[v, j] c[i, j, k]
    out = np.einsum("vj,ijk->vik", V, c)
    return [list(r) for r in out.reshape(-1, A.dim)]


def power_series(A: Algebra) -> PowerSeries:
    """``A^1 = A`` and ``A^{k+1} = A o A^k``, stopping at zero or at index ``dim + 1``."""
    n = A.dim
    current = Subspace.full(n)
    subspaces = [current]
    while current.dim > 0 and len(subspaces) < n + 1:
        current = Subspace.span(_left_products(A, current.rows), n)
        subspaces.append(current)
    return PowerSeries(tuple(subspaces), tuple(s.dim for s in subspaces))


def nilindex(A: Algebra) -> int:
    """Least ``s`` with ``A^s = 0``."""
    ps = power_series(A)
    if not ps.nilpotent:
        raise NotNilpotent(f"A^{len(ps.dims)} has dimension {ps.dims[-1]}")
    return len(ps.dims)


def power_dim(ps: PowerSeries, i: int) -> int:
    """``dim A^i`` for any ``i >= 1``, extending past the stored tail."""
    if i <= len(ps.dims):
        return ps.dims[i - 1]
    return ps.dims[-1] if not ps.nilpotent else 0


def classify_shape(A: Algebra) -> Shape:
    n = A.dim
    ps = power_series(A)
    if all(power_dim(ps, i) == n + 1 - i for i in range(1, n + 2)):
        return Shape.NUL_FILIFORM
    if all(power_dim(ps, i) == n - i for i in range(2, n + 1)):
        return Shape.FILIFORM
    return Shape.OTHER


def signature(A: Algebra, length: int = 3) -> tuple:
    """``(dim A^2, dim A^3, ...)``, ``length`` entries (the 4-dimensional case list uses 3)."""
    ps = power_series(A)
    return tuple(power_dim(ps, i) for i in range(2, 2 + length))


DIM4_SIGNATURES = ((3, 2, 1), (2, 1, 0), (2, 0, 0), (1, 0, 0), (0, 0, 0))


def generator_count(A: Algebra) -> int:
    """``dim A - dim A^2``, the size of a minimal generating set of a nilpotent algebra."""
    ps = power_series(A)
    if not ps.nilpotent:
        raise NotNilpotent("generator count needs a nilpotent algebra")
    return A.dim - power_dim(ps, 2)


def _left_mult_matrix(A: Algebra) -> np.ndarray:
    # row i: concat_j (e_i o e_j)
    n = A.dim
    return np.array(A.constants.reshape(n, n * n), dtype=object)


def _right_mult_matrix(A: Algebra) -> np.ndarray:
    # row j: concat_i (e_i o e_j)
    n = A.dim
    return np.array(A.constants.transpose(1, 0, 2).reshape(n, n * n), dtype=object)


def _mult_matrix(A: Algebra, side: str) -> np.ndarray:
    if side == "left":
        return _left_mult_matrix(A)
    if side == "right":
        return _right_mult_matrix(A)
    if side in ("two-sided", "both"):
        return np.concatenate([_left_mult_matrix(A), _right_mult_matrix(A)], axis=1)
    raise ValueError(f"unknown side {side!r}")


def annihilator(A: Algebra, side: str = "two-sided") -> Subspace:
    """Left ``{x : x o A = 0}``, right ``{x : A o x = 0}`` or their intersection."""
    n = A.dim
    M = _mult_matrix(A, side)
    if n == 0:
        return Subspace.zero(0)
    return Subspace.span(linalg.left_kernel(M), n)


def annihilator_dim(A: Algebra, side: str = "two-sided") -> int:
    """Dimension of :func:`annihilator` without building a basis."""
    if A.dim == 0:
        return 0
    return A.dim - linalg.rank(_mult_matrix(A, side))


def _span_dim(vectors, n: int) -> int:
    if not vectors:
        return 0
    return linalg.rank(np.array(vectors, dtype=object))


@dataclass(frozen=True)
class Fingerprint:
    """Rank invariants of an algebra.  Equal fingerprints are necessary for isomorphism."""

    dim: int
    power_dims: tuple
    left_ann: int
    right_ann: int
    two_sided_ann: int
    sym_rank: int
    antisym_rank: int
    generators: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d["power_dims"] = list(self.power_dims)
        return d

    def differences(self, other: "Fingerprint") -> list[str]:
        return [name for name in self.__dataclass_fields__ if getattr(self, name) != getattr(other, name)]


def fingerprint(A: Algebra) -> Fingerprint:
    n = A.dim
    ps = power_series(A)
    c = A.constants
    sym = [list(c[i, j] + c[j, i]) for i in range(n) for j in range(i, n)]
    anti = [list(c[i, j] - c[j, i]) for i in range(n) for j in range(i + 1, n)]
    return Fingerprint(
        dim=n,
        power_dims=ps.dims,
        left_ann=annihilator_dim(A, "left"),
        right_ann=annihilator_dim(A, "right"),
        two_sided_ann=annihilator_dim(A, "two-sided"),
        sym_rank=_span_dim(sym, n),
        antisym_rank=_span_dim(anti, n),
        generators=n - power_dim(ps, 2),
    )


@dataclass(frozen=True)
class GradedAlgebra:
    """Associated graded algebra in an adapted basis.

    ``change`` maps the input algebra to the adapted basis; ``degrees[k]`` is the
    filtration degree of basis vector ``k``.
    """

    algebra: Algebra
    degrees: tuple
    change: BasisChange

    def is_graded(self) -> bool:
        d = self.degrees
        return all(d[k] == d[i] + d[j] for i, j, k, _ in self.algebra.nonzero_products())


def natural_grading(A: Algebra) -> GradedAlgebra:
    """Associated graded algebra of the filtration ``A^1 > A^2 > ...``.

    The complement of ``A^{i+1}`` in ``A^i`` is formed by the rref rows of ``A^i``
    whose pivot is not a pivot of ``A^{i+1}``.  Pivot columns of successive steps
    partition the indices, so each complement vector sits at its pivot position;
    an already graded algebra keeps its basis unchanged.
    """
    ps = power_series(A)
    if not ps.nilpotent:
        raise NotNilpotent("natural grading needs a nilpotent algebra")
    n = A.dim
    rows: list = [None] * n
    degrees = [0] * n
    for deg, (cur, nxt) in enumerate(zip(ps.subspaces, ps.subspaces[1:]), start=1):
        taken = set(nxt.pivots)
        for row, pc in zip(cur.rows, cur.pivots):
            if pc not in taken:
                rows[pc] = row
                degrees[pc] = deg
    change = BasisChange(np.array(rows, dtype=object).reshape(n, n)) if n else BasisChange(linalg.zeros(0, 0))
    adapted = transport(A, change)
    c = np.array(adapted.constants, dtype=object)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if degrees[k] != degrees[i] + degrees[j]:
                    c[i, j, k] = Fraction(0)
    return GradedAlgebra(Algebra(c, A.labels), tuple(degrees), change)
