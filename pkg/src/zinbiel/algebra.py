"""Finite-dimensional algebras given by structure constants.

``A.constants[i, j, k]`` is the coefficient of ``e_k`` in ``e_i o e_j``.
Indices are 0-based everywhere in the library; ``Algebra.from_table`` takes
the 1-based labels used when writing multiplication tables by hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from . import linalg
from .errors import DimensionMismatch, SingularMatrix
from .scalars import QuadraticScalar, format_scalar, to_scalar


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _integer_form(arr: np.ndarray):
    """``(ints, d)`` with ``arr == ints / d`` if every entry is rational, else ``None``."""
    flat = arr.ravel()
    if not all(isinstance(x, Fraction) for x in flat):
        return None
    d = math.lcm(*(x.denominator for x in flat))
    ints = np.empty(arr.shape, dtype=object)
    ints.ravel()[:] = [x.numerator * (d // x.denominator) for x in flat]
    return ints, d


def _from_integer_form(ints: np.ndarray, d: int) -> np.ndarray:
    out = np.empty(ints.shape, dtype=object)
    out.ravel()[:] = [Fraction(v, d) for v in ints.ravel()]
    return out


class Algebra:
    """An ``n``-dimensional algebra with a dense structure-constant tensor.

    Instances are immutable.  Nothing about the Zinbiel identity is assumed;
    use :func:`zinbiel_check`.
    """

    __slots__ = ("constants", "labels", "_int_form", "_hash")

    def __init__(self, constants, labels: Optional[Sequence[str]] = None):
        arr = np.asarray(constants, dtype=object)
        if arr.size == 0:
            n = arr.shape[0] if arr.ndim >= 1 else 0
            arr = np.empty((n, n, n), dtype=object)
        if arr.ndim != 3 or not (arr.shape[0] == arr.shape[1] == arr.shape[2]):
            raise DimensionMismatch(f"structure tensor must be n x n x n, got shape {arr.shape}")
        data = np.empty(arr.shape, dtype=object)
        data.ravel()[:] = [to_scalar(x) for x in arr.ravel()]
        n = arr.shape[0]
        if labels is None:
            labels = tuple(f"e{i + 1}" for i in range(n))
        labels = tuple(labels)
        if len(labels) != n:
            raise DimensionMismatch("one label per basis vector is required")
        self.constants = _freeze(data)
        self.labels = labels
        self._int_form = False
        self._hash = None

    @classmethod
    def _from_ints(cls, ints: np.ndarray, d: int, labels=None) -> "Algebra":
        """Algebra with constants ``ints / d``; the integer form is kept for reuse."""
        g = math.gcd(d, *ints.ravel())
        if g > 1:
            ints = np.array([v // g for v in ints.ravel()], dtype=object).reshape(ints.shape)
            d //= g
        A = cls(_from_integer_form(ints, d), labels)
        A._int_form = (ints, d)
        return A

    @classmethod
    def zero(cls, n: int) -> "Algebra":
        return cls(linalg.zeros(n, n, n))

    @classmethod
    def from_table(cls, n: int, table: Mapping[tuple[int, int], Mapping[int, object]]) -> "Algebra":
        """Build from ``{(i, j): {k: coeff}}`` with 1-based indices; omitted products are zero."""
        c = linalg.zeros(n, n, n)
        for (i, j), terms in table.items():
            for k, coeff in terms.items():
                if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
                    raise DimensionMismatch(f"index out of range in e{i}*e{j} -> e{k} for dim {n}")
                c[i - 1, j - 1, k - 1] = c[i - 1, j - 1, k - 1] + to_scalar(coeff)
        return cls(c)

    @property
    def dim(self) -> int:
        return self.constants.shape[0]

    def integer_form(self):
        if self._int_form is False:
            self._int_form = _integer_form(self.constants)
        return self._int_form

    def is_rational(self) -> bool:
        return self.integer_form() is not None

    def product(self, i: int, j: int) -> np.ndarray:
        return self.constants[i, j]

    def nonzero_products(self):
        """Yield ``(i, j, k, coeff)`` for every nonzero structure constant, 0-based."""
        n = self.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    x = self.constants[i, j, k]
                    if x != 0:
                        yield i, j, k, x

    def relabel(self, labels: Sequence[str]) -> "Algebra":
        return Algebra(self.constants, labels)

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.constants == other.constants))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, tuple(self.constants.ravel())))
        return self._hash

    def __repr__(self):
        return f"Algebra(dim={self.dim}, products={len(list(self.nonzero_products()))})"

    def table_str(self) -> str:
        """Human-readable multiplication table, 1-based."""
        lines = []
        n = self.dim
        for i in range(n):
            for j in range(n):
                terms = [(k, self.constants[i, j, k]) for k in range(n) if self.constants[i, j, k] != 0]
                if terms:
                    rhs = " + ".join(f"{format_scalar(c)}*{self.labels[k]}" for k, c in terms)
                    lines.append(f"{self.labels[i]} * {self.labels[j]} = {rhs}")
        return "\n".join(lines)


def _vector(x, n: int) -> np.ndarray:
    v = np.asarray(list(x), dtype=object)
    if v.shape != (n,):
        raise DimensionMismatch(f"expected a vector of length {n}, got {v.shape}")
    return np.array([to_scalar(a) for a in v], dtype=object)


def basis_vector(n: int, i: int) -> np.ndarray:
    v = linalg.zeros(n)
    v[i] = Fraction(1)
    return v


def multiply(A: Algebra, x, y) -> np.ndarray:
    """Bilinear product of two coefficient vectors."""
    n = A.dim
    x = _vector(x, n)
    y = _vector(y, n)
    if n == 0:
        return linalg.zeros(0)
    out = np.einsum("i,j,ijk->k", x, y, A.constants)
    return np.array([to_scalar(a) for a in out], dtype=object)


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    k: int
    residual: tuple


@dataclass(frozen=True)
class ZinbielReport:
    holds: bool
    violations: list = field(default_factory=list)


def zinbiel_residuals(A: Algebra) -> np.ndarray:
    """``R[i,j,k,:] = (e_i e_j) e_k - e_i (e_j e_k) - e_i (e_k e_j)`` for all basis triples.

    Rational algebras are evaluated in integers scaled by the squared common
    denominator, which leaves the zero pattern and signs intact.
    """
    res, d = _scaled_residuals(A)
    if d is not None:
        return _from_integer_form(res, d * d)
    return res


def _scaled_residuals(A: Algebra):
    form = A.integer_form()
    c, d = form if form is not None else (A.constants, None)
    left = np.einsum("ijm,mkl->ijkl", c, c)
    inner = np.einsum("jkm,iml->ijkl", c, c)
    return left - inner - inner.transpose(0, 2, 1, 3), d


def _primes_below(limit: int, count: int) -> list[int]:
    out = []
    m = limit - 1
    while len(out) < count:
        if m % 2 and all(m % d for d in range(3, math.isqrt(m) + 1, 2)):
            out.append(m)
        m -= 1
    return out


_CHECK_PRIMES: list[int] = []


def _residuals_vanish(ints: np.ndarray) -> Optional[bool]:
    """Exact zero test for the scaled residual tensor by reduction modulo word-size primes.

    Every residual entry is bounded by ``3 n M^2`` with ``M`` the largest constant,
    so vanishing modulo primes whose product exceeds twice that bound means it
    vanishes over Z.  Returns ``None`` when int64 products could overflow.
    """
    n = ints.shape[0]
    if n >= 64:
        return None
    top = max((abs(int(x)) for x in ints.ravel()), default=0)
    bound = 2 * 3 * n * top * top
    if not _CHECK_PRIMES:
        _CHECK_PRIMES.extend(_primes_below(1 << 28, 64))
    covered = 1
    for p in _CHECK_PRIMES:
        if covered > bound:
            return True
        cp = np.fromiter((int(x) % p for x in ints.ravel()), dtype=np.int64, count=n**3).reshape(n, n, n)
        left = cp.reshape(n * n, n) @ cp.reshape(n, n * n) % p
        inner = (cp.reshape(n * n, n) @ cp.transpose(1, 0, 2).reshape(n, n * n) % p).reshape(n, n, n, n)
        inner = inner.transpose(2, 0, 1, 3).reshape(n * n, n * n)
        swapped = inner.reshape(n, n, n, n).transpose(0, 2, 1, 3).reshape(n * n, n * n)
        if ((left - inner - swapped) % p).any():
            return False
        covered *= p
    return None if covered <= bound else True


def zinbiel_check(A: Algebra) -> ZinbielReport:
    """Check ``(x o y) o z = x o (y o z) + x o (z o y)`` on every basis triple.

    By trilinearity, vanishing on basis triples certifies the identity for all
    elements.  Violations carry 0-based indices.
    """
    n = A.dim
    if n == 0:
        return ZinbielReport(True, [])
    form = A.integer_form()
    if form is not None and _residuals_vanish(form[0]):
        return ZinbielReport(True, [])
    res, d = _scaled_residuals(A)
    scale = 1 if d is None else d * d
    violations = []
    for i, j, k in zip(*np.nonzero(np.any(res != 0, axis=3))):
        r = res[i, j, k]
        values = r if d is None else [Fraction(x, scale) for x in r]
        violations.append(Violation(int(i), int(j), int(k), tuple(to_scalar(x) for x in values)))
    return ZinbielReport(not violations, violations)


@dataclass(frozen=True, eq=False)
class BasisChange:
    """Invertible matrix whose row ``i`` holds the old-basis coordinates of the new ``e'_i``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix) if not isinstance(self.matrix, np.ndarray) else self.matrix
        m = np.array([[to_scalar(x) for x in row] for row in m], dtype=object).reshape(m.shape)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch("basis change must be square")
        if linalg.rank(m) != m.shape[0]:
            raise SingularMatrix("basis change is not invertible")
        object.__setattr__(self, "matrix", _freeze(m))

    @classmethod
    def identity(cls, n: int) -> "BasisChange":
        return cls(linalg.identity(n))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def inverse(self) -> "BasisChange":
        return BasisChange(linalg.inverse(self.matrix))

    def then(self, other: "BasisChange") -> "BasisChange":
        """Change that first applies ``self`` and then ``other`` (expressed in the new basis)."""
        return BasisChange(np.array(other.matrix.dot(self.matrix), dtype=object))

    def is_rational(self) -> bool:
        return all(not isinstance(x, QuadraticScalar) for x in self.matrix.ravel())

    def radicand(self) -> Optional[int]:
        for x in self.matrix.ravel():
            if isinstance(x, QuadraticScalar):
                return x.r
        return None

    def __eq__(self, other):
        if not isinstance(other, BasisChange):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and bool(np.all(self.matrix == other.matrix))

    def __hash__(self):
        return hash(tuple(self.matrix.ravel()))

    def rows_str(self) -> list[str]:
        return [" ".join(format_scalar(x) for x in row) for row in self.matrix]


def transport(A: Algebra, P) -> Algebra:
    """Rewrite ``A`` in the basis ``e'_i = sum_a P[i, a] e_a``.

    ``e'_i o e'_j = sum P[i,a] P[j,b] c[a,b,:]`` in old coordinates, then
    multiplied by ``P^-1`` to land in new coordinates.
    """
    if not isinstance(P, BasisChange):
        P = BasisChange(P)
    n = A.dim
    if P.dim != n:
        raise DimensionMismatch(f"basis change of size {P.dim} for algebra of dim {n}")
    if n == 0:
        return A
    Pm = P.matrix
    Pinv = linalg.inverse(Pm)
    a_form = A.integer_form()
    p_form = _integer_form(Pm)
    q_form = _integer_form(Pinv)
    if a_form is not None and p_form is not None and q_form is not None:
        (c, dc), (pm, dp), (qm, dq) = a_form, p_form, q_form
        t = np.einsum("ia,abk->ibk", pm, c)
        t = np.einsum("jb,ibk->ijk", pm, t)
        t = np.einsum("ijk,kl->ijl", t, qm)
        return Algebra._from_ints(t, dc * dp * dp * dq, A.labels)
    t = np.einsum("ia,abk->ibk", Pm, A.constants)
    t = np.einsum("jb,ibk->ijk", Pm, t)
    t = np.einsum("ijk,kl->ijl", t, Pinv)
    return Algebra(t, A.labels)


def direct_sum(A: Algebra, B: Algebra) -> Algebra:
    """Block-diagonal sum; basis is A's basis followed by B's."""
    n, m = A.dim, B.dim
    c = linalg.zeros(n + m, n + m, n + m)
    c[:n, :n, :n] = A.constants
    c[n:, n:, n:] = B.constants
    return Algebra(c)


def permutation_change(perm: Sequence[int]) -> BasisChange:
    """Basis change with ``e'_i = e_{perm[i]}`` (0-based)."""
    n = len(perm)
    m = linalg.zeros(n, n)
    for i, j in enumerate(perm):
        m[i, j] = Fraction(1)
    return BasisChange(m)
