"""Exact linear algebra over Q, Q(sqrt(r)) and F_p.

Matrices are 2-D numpy object arrays (or anything ``np.asarray`` accepts).
Purely rational input takes a fraction-free integer path, which is an order of
magnitude faster than eliminating with ``Fraction`` objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, SingularMatrix
from .scalars import QuadraticScalar, to_scalar


def as_matrix(M, ncols: Optional[int] = None) -> np.ndarray:
    """Coerce to a 2-D object array of exact scalars."""
    rows = [list(r) for r in M]
    if not rows:
        return np.empty((0, ncols or 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionMismatch("ragged matrix")
    out = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = to_scalar(x)
    return out


def _all_rational(values) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in values)


def integer_row(row) -> list[int]:
    """Scale a rational row to coprime integers (span-preserving)."""
    row = list(row)
    lcm = math.lcm(*(x.denominator for x in row))
    if lcm == 1:
        ints = [int(x) for x in row]
    else:
        ints = [x.numerator * (lcm // x.denominator) for x in row]
    g = math.gcd(*ints)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _rref_integer(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    """Reduced echelon form of integer rows; returns only the nonzero rows."""
    rows = [r[:] for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        sel = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        piv = rows[r]
        pv = piv[c]
        for i in range(len(rows)):
            if i == r:
                continue
            sv = rows[i][c]
            if sv:
                new = [pv * a - sv * b for a, b in zip(rows[i], piv)]
                g = math.gcd(*new)
                if g > 1:
                    new = [v // g for v in new]
                rows[i] = new
        pivots.append(c)
        r += 1
        # drop rows that vanished
        rows = rows[:r] + [row for row in rows[r:] if any(row)]
    out = []
    for row, c in zip(rows[:r], pivots):
        pv = row[c]
        out.append([Fraction(v, pv) for v in row])
    return out


def _rank_integer(rows: list[list[int]], ncols: int) -> int:
    """Forward elimination only; enough for the rank."""
    rows = [r for r in rows if any(r)]
    rank = 0
    for c in range(ncols):
        sel = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        piv = rows[rank]
        pv = piv[c]
        rest = []
        for row in rows[rank + 1 :]:
            sv = row[c]
            if sv:
                row = [pv * a - sv * b for a, b in zip(row, piv)]
                g = math.gcd(*row)
                if g == 0:
                    continue
                if g > 1:
                    row = [v // g for v in row]
            rest.append(row)
        rows = rows[: rank + 1] + rest
        rank += 1
        if rank == len(rows):
            break
    return rank


def _rref_generic(rows: list[list], ncols: int) -> list[list]:
    rows = [r[:] for r in rows]
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        sel = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return [[to_scalar(x) for x in row] for row in rows[:r]]


def _nonzero_rref_rows(M) -> list[list]:
    if isinstance(M, np.ndarray):
        ncols = M.shape[1]
        rows = M.tolist()
    else:
        rows = [list(r) for r in M]
        ncols = len(rows[0])
    if _all_rational(x for row in rows for x in row):
        return _rref_integer([integer_row(r) for r in rows], ncols)
    return _rref_generic([[to_scalar(x) for x in r] for r in rows], ncols)


def row_reduce(M) -> tuple[int, np.ndarray]:
    """Return ``(rank, rref)`` with ``rref`` the same shape as ``M``, zero rows last."""
    M = M if isinstance(M, np.ndarray) and M.ndim == 2 else as_matrix(M)
    nz = _nonzero_rref_rows(M)
    out = np.empty(M.shape, dtype=object)
    out[...] = Fraction(0)
    for i, row in enumerate(nz):
        out[i, :] = row
    return len(nz), out


def rank(M) -> int:
    M = M if isinstance(M, np.ndarray) and M.ndim == 2 else as_matrix(M)
    if M.size == 0:
        return 0
    rows = M.tolist()
    if _all_rational(x for row in rows for x in row):
        return _rank_integer([integer_row(r) for r in rows], M.shape[1])
    return len(_rref_generic([[to_scalar(x) for x in r] for r in rows], M.shape[1]))


def inverse(M) -> np.ndarray:
    M = M if isinstance(M, np.ndarray) and M.ndim == 2 else as_matrix(M)
    n, m = M.shape
    if n != m:
        raise DimensionMismatch(f"cannot invert a {n}x{m} matrix")
    aug = np.empty((n, 2 * n), dtype=object)
    aug[:, :n] = M
    aug[:, n:] = identity(n)
    rows = _nonzero_rref_rows(aug)
    if len(rows) < n or any(rows[i][i] != 1 for i in range(n)):
        raise SingularMatrix("matrix is singular")
    return np.array([row[n:] for row in rows], dtype=object)


def identity(n: int) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    out[...] = Fraction(0)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out[...] = Fraction(0)
    return out


def left_kernel(M) -> list[list]:
    """Basis of ``{x : x @ M == 0}`` (M has one row per coordinate of x)."""
    M = M if isinstance(M, np.ndarray) and M.ndim == 2 else as_matrix(M)
    n = M.shape[0]
    if M.shape[1] == 0:
        return [list(r) for r in identity(n)]
    rows = _nonzero_rref_rows(M.T.copy())
    pivots = [next(j for j, x in enumerate(r) if x != 0) for r in rows]
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Subspace:
    """A linear subspace stored as its canonical reduced row-echelon basis.

    With ``modulus`` set the subspace lives in F_p^n and rows hold residues.
    Equal subspaces have equal ``rows``, so dataclass equality is subspace equality.
    """

    ambient_dim: int
    rows: tuple
    modulus: Optional[int] = None

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, modulus: Optional[int] = None):
        vectors = [list(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise DimensionMismatch("vector length differs from ambient dimension")
        if modulus is not None:
            rows = rref_mod_p(vectors, ambient_dim, modulus)
        elif not vectors:
            rows = []
        else:
            rows = _nonzero_rref_rows(vectors)
        return cls(ambient_dim, tuple(tuple(r) for r in rows), modulus)

    @classmethod
    def zero(cls, n: int, modulus: Optional[int] = None):
        return cls(n, (), modulus)

    @classmethod
    def full(cls, n: int, modulus: Optional[int] = None):
        one = 1 if modulus is not None else Fraction(1)
        zero = 0 if modulus is not None else Fraction(0)
        rows = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        return cls(n, rows, modulus)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x != 0) for r in self.rows)

    def basis(self) -> np.ndarray:
        if not self.rows:
            return np.empty((0, self.ambient_dim), dtype=object)
        return np.array(self.rows, dtype=object)

    def contains(self, v) -> bool:
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            f = v[pc]
            if f != 0:
                if self.modulus is not None:
                    v = [(a - f * b) % self.modulus for a, b in zip(v, row)]
                else:
                    v = [a - f * b for a, b in zip(v, row)]
        return all(x == 0 for x in v)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __str__(self):
        from .scalars import format_scalar

        if not self.rows:
            return "0"
        return "span{" + ", ".join("(" + " ".join(format_scalar(x) if self.modulus is None else str(x) for x in r) + ")" for r in self.rows) + "}"


# --- F_p helpers -------------------------------------------------------------


def rref_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Nonzero rows of the reduced echelon form over F_p."""
    rows = [[x % p for x in r] for r in rows]
    rows = [r for r in rows if any(r)]
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        sel = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
        rows = rows[:r] + [row for row in rows[r:] if any(row)]
    return rows[:r]


def rank_mod_p(rows, ncols: int, p: int) -> int:
    return len(rref_mod_p(rows, ncols, p))


def inverse_mod_p(M: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    n = len(M)
    aug = [list(M[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    red = rref_mod_p(aug, 2 * n, p)
    if len(red) < n or any(red[i][i] != 1 for i in range(n)):
        raise SingularMatrix(f"matrix is singular mod {p}")
    return [row[n:] for row in red]


def is_quadratic(x) -> bool:
    return isinstance(x, QuadraticScalar)
