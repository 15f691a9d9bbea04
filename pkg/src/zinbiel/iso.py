"""Isomorphism machinery.

Exact verification of a given basis change, the constructive normalizer for
the adapted filiform form, complete isomorphism search over F_p, direct-sum
search over F_p, and :func:`distinguish`, which combines them into a verdict.

Only two outcomes are certificates over C: ``NonIsomorphic`` (a rank
invariant differs) and ``IsomorphicOverQ`` (an exact basis change over Q or
Q(sqrt r) was verified).  Everything found modulo p is evidence only.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import linalg
from .algebra import Algebra, BasisChange, transport
from .analysis import fingerprint
from .catalog import make_f1, make_f2, make_f3, make_filiform
from .errors import (
    DenominatorDivisibleByP,
    DimensionMismatch,
    DimensionTooSmall,
    SearchSpaceTooLarge,
)
from .linalg import Subspace, rref_mod_p
from .scalars import QuadraticScalar, format_scalar, is_rational_square, sqrt_rational, to_scalar

log = logging.getLogger(__name__)

DEFAULT_NODE_CAP = 10**8
DEFAULT_PRIMES = (2, 3)


# --- exact verification and the filiform normalizer -------------------------


def verify_isomorphism(A: Algebra, B: Algebra, P) -> bool:
    """True iff ``transport(A, P)`` equals ``B`` entry by entry."""
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions differ: {A.dim} vs {B.dim}")
    return transport(A, P) == B


_FILIFORM_MAKERS = {"F1": make_f1, "F2": make_f2, "F3": make_f3}


def filiform_class(alpha, beta) -> str:
    alpha, beta = to_scalar(alpha), to_scalar(beta)
    if beta != 0:
        return "F3"
    return "F2" if alpha != 0 else "F1"


def normalize_filiform(n: int, alpha, beta) -> tuple[str, BasisChange]:
    """Class of ``F_n(alpha, beta)`` and a basis change onto that class's table.

    New basis: ``e'_1 = a_1 e_1 + a_n e_n``, ``e'_i = e'_1 o e'_{i-1}`` for
    ``2 <= i <= n-1`` and ``e'_n = b_{n-2} e_{n-2} + b_n e_n`` with
    ``b_{n-2} = -(a_n b_n / a_1) beta``.

    * ``beta = alpha = 0``: identity.
    * ``beta = 0 != alpha``: ``b_n = a_1^{n-2} / alpha``.
    * ``beta != 0``: ``a_n = alpha a_1 / ((n-3) beta)`` and ``b_n^2 = a_1^{n-1} / beta``.
      ``a_1`` is 1 unless that makes ``b_n`` irrational and ``n`` is even, in
      which case ``a_1 = beta`` gives a rational square.  For odd ``n`` and
      non-square ``beta`` the change lives in Q(sqrt r).
    """
    if n < 5:
        raise DimensionTooSmall(f"filiform normalizer needs n >= 5, got {n}")
    alpha, beta = to_scalar(alpha), to_scalar(beta)
    cls = filiform_class(alpha, beta)
    A = make_filiform(n, alpha, beta)
    if cls == "F1":
        return cls, BasisChange.identity(n)
    a1 = Fraction(1)
    if cls == "F2":
        an = Fraction(0)
        bn = a1 ** (n - 2) / alpha
    else:
        if not is_rational_square(a1 ** (n - 1) / beta) and n % 2 == 0:
            a1 = beta
        an = alpha * a1 / ((n - 3) * beta)
        bn = sqrt_rational(a1 ** (n - 1) / beta)
    bn2 = -(an * bn / a1) * beta

    rows = linalg.zeros(n, n)
    first = linalg.zeros(n)
    first[0], first[n - 1] = a1, an
    rows[0] = first
    for i in range(1, n - 1):
        prev = rows[i - 1]
        rows[i] = np.einsum("i,j,ijk->k", first, prev, A.constants)
    last = linalg.zeros(n)
    last[n - 3] = bn2
    last[n - 1] = bn
    rows[n - 1] = last
    rows = np.array([[to_scalar(x) for x in r] for r in rows], dtype=object)
    change = BasisChange(rows)
    target = _FILIFORM_MAKERS[cls](n)
    if not verify_isomorphism(A, target, change):  # pragma: no cover - guarded by tests
        raise AssertionError(f"normalizer produced an invalid change for n={n}, alpha={alpha}, beta={beta}")
    return cls, change


def adapted_filiform_parameters(A: Algebra) -> Optional[tuple]:
    """``(alpha, beta)`` if ``A`` is literally ``F_n(alpha, beta)``, else ``None``."""
    n = A.dim
    if n < 5:
        return None
    alpha = A.constants[n - 1, 0, n - 2]
    beta = A.constants[n - 1, n - 1, n - 2]
    if isinstance(alpha, QuadraticScalar) or isinstance(beta, QuadraticScalar):
        return None
    if make_filiform(n, alpha, beta) != A:
        return None
    return alpha, beta


# --- arithmetic mod p -------------------------------------------------------


@dataclass(frozen=True)
class ModularAlgebra:
    p: int
    dim: int
    constants: tuple  # constants[i][j] is a tuple of residues (the product e_i o e_j)

    def mul(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        n, p, c = self.dim, self.p, self.constants
        out = [0] * n
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            ci = c[i]
            for j in range(n):
                yj = y[j]
                if not yj:
                    continue
                f = xi * yj
                for k, v in enumerate(ci[j]):
                    if v:
                        out[k] += f * v
        return [v % p for v in out]

    def square_span(self) -> list[list[int]]:
        n = self.dim
        vecs = [list(self.constants[i][j]) for i in range(n) for j in range(n)]
        return rref_mod_p(vecs, n, self.p)


def reduce_mod_p(A: Algebra, p: int) -> ModularAlgebra:
    n = A.dim
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = []
            for k in range(n):
                x = A.constants[i, j, k]
                if isinstance(x, QuadraticScalar):
                    raise DenominatorDivisibleByP(p, (i, j, k), x)
                x = Fraction(x)
                if x.denominator % p == 0:
                    raise DenominatorDivisibleByP(p, (i, j, k), x)
                prod.append(x.numerator * pow(x.denominator, -1, p) % p)
            row.append(tuple(prod))
        table.append(tuple(row))
    return ModularAlgebra(p, n, tuple(table))


def transport_mod_p(A: ModularAlgebra, M: Sequence[Sequence[int]]) -> ModularAlgebra:
    p, n = A.p, A.dim
    Minv = linalg.inverse_mod_p(M, p)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            v = A.mul(M[i], M[j])
            row.append(tuple(sum(v[a] * Minv[a][k] for a in range(n)) % p for k in range(n)))
        table.append(tuple(row))
    return ModularAlgebra(p, n, tuple(table))


class _PairSpan:
    """Echelon basis of pairs ``(v, w)`` under a partial linear map ``v -> w``.

    ``add`` returns False if the new pair contradicts linearity.
    """

    __slots__ = ("p", "vs", "ws", "pivots")

    def __init__(self, p):
        self.p = p
        self.vs: list = []
        self.ws: list = []
        self.pivots: list = []

    def copy(self):
        out = _PairSpan(self.p)
        out.vs, out.ws, out.pivots = self.vs[:], self.ws[:], self.pivots[:]
        return out

    def reduce(self, v, w):
        p = self.p
        for bv, bw, pc in zip(self.vs, self.ws, self.pivots):
            f = v[pc]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, bv)]
                w = [(a - f * b) % p for a, b in zip(w, bw)]
        return v, w

    def add(self, v, w):
        """Returns ``None`` on contradiction, ``False`` if already spanned, else the new index."""
        v, w = self.reduce(v, w)
        pc = next((k for k, x in enumerate(v) if x), None)
        if pc is None:
            return None if any(w) else False
        inv = pow(v[pc], -1, self.p)
        v = [(x * inv) % self.p for x in v]
        w = [(x * inv) % self.p for x in w]
        self.vs.append(v)
        self.ws.append(w)
        self.pivots.append(pc)
        return len(self.vs) - 1


def _close(span: _PairSpan, start: int, A: ModularAlgebra, B: ModularAlgebra) -> bool:
    """Close the span under products, mapping B-products to A-products; False on contradiction."""
    queue = list(range(start, len(span.vs)))
    while queue:
        idx = queue.pop(0)
        v, w = span.vs[idx], span.ws[idx]
        for other in range(len(span.vs)):
            ov, ow = span.vs[other], span.ws[other]
            for pv, pw in ((B.mul(v, ov), A.mul(w, ow)), (B.mul(ov, v), A.mul(ow, w))):
                res = span.add(pv, pw)
                if res is None:
                    return False
                if res is not False:
                    queue.append(res)
    return True


def _generator_indices(B: ModularAlgebra) -> tuple[list[int], int]:
    """Standard basis indices generating ``B``; the first ``k`` span a complement of ``B^2``."""
    n, p = B.dim, B.p
    sq = B.square_span()
    lead = {next(k for k, x in enumerate(r) if x) for r in sq}
    gens = [i for i in range(n) if i not in lead]
    k = len(gens)
    # non-nilpotent algebras need extra generators
    while True:
        span = _PairSpan(p)
        for g in gens:
            e = [0] * n
            e[g] = 1
            span.add(e, e)
        _close(span, 0, B, B)
        if len(span.vs) == n:
            return gens, k
        for i in range(n):
            e = [0] * n
            e[i] = 1
            if any(span.reduce(e, e)[0]):
                gens.append(i)
                break


def _candidates(n: int, p: int):
    return itertools.product(range(p), repeat=n)


@dataclass
class _SearchStats:
    nodes: int = 0


def _search(A, B, gens, k_free, a_sq_rows, depth, span, chosen, stats, cap):
    n, p = A.dim, A.p
    if depth == len(gens):
        if len(span.vs) < n:
            return None
        # express phi(e_i) for each standard e_i
        M = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            v, w = span.reduce(e, [0] * n)
            # v reduces to 0 because the span is full; phi(e_i) = -w
            M.append([(-x) % p for x in w])
        if linalg.rank_mod_p(M, n, p) != n:
            return None
        if transport_mod_p(A, M) != B:
            return None
        return M
    g = gens[depth]
    e = [0] * n
    e[g] = 1
    for cand in _candidates(n, p):
        stats.nodes += 1
        if stats.nodes > cap:
            raise SearchSpaceTooLarge(f"node cap {cap} exceeded")
        w = list(cand)
        if not any(w):
            continue
        if depth < k_free:
            # images of the B^2-complement generators must stay independent modulo A^2
            if linalg.rank_mod_p(a_sq_rows + chosen + [w], n, p) != len(a_sq_rows) + len(chosen) + 1:
                continue
        new_span = span.copy()
        start = len(new_span.vs)
        res = new_span.add(e, w)
        if res is None:
            continue
        if res is not False and not _close(new_span, start, A, B):
            continue
        found = _search(A, B, gens, k_free, a_sq_rows, depth + 1, new_span, chosen + [w], stats, cap)
        if found is not None:
            return found
    return None


def _search_from_first(args):
    A, B, gens, k_free, a_sq, first, cap = args
    n = A.dim
    stats = _SearchStats()
    span = _PairSpan(A.p)
    e = [0] * n
    e[gens[0]] = 1
    w = list(first)
    if k_free > 0 and linalg.rank_mod_p(a_sq + [w], n, A.p) != len(a_sq) + 1:
        return None
    if not any(w):
        return None
    res = span.add(e, w)
    if res is None or not _close(span, 0, A, B):
        return None
    return _search(A, B, gens, k_free, a_sq, 1, span, [w], stats, cap)


def estimate_nodes(n: int, p: int, generators: int) -> int:
    return p ** (n * generators)


def iso_search_fp(
    A: ModularAlgebra, B: ModularAlgebra, node_cap: int = DEFAULT_NODE_CAP, threads: int = 1
) -> Optional[list[list[int]]]:
    """Complete search for ``M`` over F_p with ``transport_mod_p(A, M) == B``.

    Images of a generating set of ``B`` are enumerated in lexicographic order;
    every partial assignment is closed under products and dropped as soon as it
    contradicts linearity.  ``None`` means no isomorphism exists over F_p.
    """
    if A.p != B.p or A.dim != B.dim:
        raise DimensionMismatch("algebras must share p and dimension")
    n, p = A.dim, A.p
    if n == 0:
        return []
    a_sq = A.square_span()
    if len(a_sq) != len(B.square_span()):
        return None
    gens, k_free = _generator_indices(B)
    est = estimate_nodes(n, p, len(gens))
    if est > node_cap:
        raise SearchSpaceTooLarge(f"estimated {est} nodes exceeds cap {node_cap}")
    if threads > 1 and gens:
        jobs = [(A, B, gens, k_free, a_sq, first, node_cap) for first in _candidates(n, p)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for found in pool.map(_search_from_first, jobs, chunksize=max(1, len(jobs) // (4 * threads))):
                if found is not None:
                    return found
        return None
    return _search(A, B, gens, k_free, a_sq, 0, _PairSpan(p), [], _SearchStats(), node_cap)


# --- direct-sum decompositions mod p ----------------------------------------


def _all_subspaces(n: int, p: int):
    """Every subspace of F_p^n as rref row tuples."""
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
            for vals in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), v in zip(free, vals):
                    rows[r][c] = v
                yield tuple(tuple(r) for r in rows)


def count_subspaces(n: int, p: int) -> int:
    total = 0
    for k in range(n + 1):
        num, den = 1, 1
        for i in range(k):
            num *= p ** (n - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total


def _is_ideal(A: ModularAlgebra, S: Subspace) -> bool:
    n = A.dim
    for v in S.rows:
        for i in range(n):
            e = [0] * n
            e[i] = 1
            if not S.contains(A.mul(e, v)) or not S.contains(A.mul(v, e)):
                return False
    return True


def split_scan_fp(A: Algebra, p: int, subspace_cap: int = 10**6) -> Optional[tuple[Subspace, Subspace]]:
    """Find ideals ``I, J`` with ``A = I + J`` direct and ``I o J = J o I = 0`` over F_p.

    Components of a direct-sum decomposition are ideals, so only ideals are
    paired.  Larger ``I`` first, then lexicographic rref order; ``None`` is
    definitive over F_p only.
    """
    Ap = A if isinstance(A, ModularAlgebra) else reduce_mod_p(A, p)
    n = Ap.dim
    total = count_subspaces(n, p)
    if total > subspace_cap:
        raise SearchSpaceTooLarge(f"{total} subspaces of F_{p}^{n} exceeds cap {subspace_cap}")
    ideals = [
        Subspace(n, rows, p)
        for rows in _all_subspaces(n, p)
        if 0 < len(rows) < n and _is_ideal(Ap, Subspace(n, rows, p))
    ]
    for I in sorted(ideals, key=lambda s: (-s.dim, s.rows)):
        for J in sorted((s for s in ideals if s.dim == n - I.dim), key=lambda s: s.rows):
            if linalg.rank_mod_p(list(I.rows) + list(J.rows), n, p) != n:
                continue
            if all(not any(Ap.mul(u, v)) and not any(Ap.mul(v, u)) for u in I.rows for v in J.rows):
                return I, J
    return None


# --- verdicts ---------------------------------------------------------------


@dataclass(frozen=True)
class NonIsomorphic:
    witness: str
    left: object
    right: object

    kind = "NonIsomorphic"


@dataclass(frozen=True)
class IsomorphicOverQ:
    """Exact isomorphism; ``change`` may carry one adjoined square root."""

    change: BasisChange
    how: str = "identity"

    kind = "IsomorphicOverQ"


@dataclass(frozen=True)
class IsomorphicOverFp:
    """Isomorphism after reduction mod ``p``.  Not a certificate over C."""

    p: int
    matrix: tuple
    notes: tuple = ()

    kind = "IsomorphicOverFp"


@dataclass(frozen=True)
class Inconclusive:
    notes: tuple = ()

    kind = "Inconclusive"


Verdict = Union[NonIsomorphic, IsomorphicOverQ, IsomorphicOverFp, Inconclusive]


@dataclass
class SearchRecord:
    p: int
    outcome: str  # "isomorphic", "none", "skipped", "too-large"
    detail: str = ""
    matrix: Optional[tuple] = None


def _known_changes(A: Algebra, B: Algebra):
    """Exact changes the catalog knows how to build, as ``(label, change)``."""
    n = A.dim
    yield "identity", BasisChange.identity(n)
    pa, pb = adapted_filiform_parameters(A), adapted_filiform_parameters(B)
    if pa is not None and pb is not None:
        ca, Pa = normalize_filiform(n, *pa)
        cb, Pb = normalize_filiform(n, *pb)
        if ca == cb:
            rad_a, rad_b = Pa.radicand(), Pb.radicand()
            if rad_a is None or rad_b is None or rad_a == rad_b:
                # transport(A, Pa) = F = transport(B, Pb)  =>  transport(A, Pb^-1 Pa) = B
                yield "filiform normalizer", Pa.then(Pb.inverse())


def search_records(A: Algebra, B: Algebra, primes=DEFAULT_PRIMES, node_cap=DEFAULT_NODE_CAP, threads=1):
    records = []
    for p in primes:
        try:
            Ap, Bp = reduce_mod_p(A, p), reduce_mod_p(B, p)
        except DenominatorDivisibleByP as exc:
            records.append(SearchRecord(p, "skipped", str(exc)))
            continue
        try:
            M = iso_search_fp(Ap, Bp, node_cap=node_cap, threads=threads)
        except SearchSpaceTooLarge as exc:
            records.append(SearchRecord(p, "too-large", str(exc)))
            continue
        if M is None:
            records.append(SearchRecord(p, "none", f"no isomorphism over F_{p} (exhaustive)"))
        else:
            records.append(SearchRecord(p, "isomorphic", f"isomorphic over F_{p}", tuple(tuple(r) for r in M)))
    return records


def distinguish(A: Algebra, B: Algebra, primes=DEFAULT_PRIMES, node_cap=DEFAULT_NODE_CAP, threads=1):
    """Decide what can be certified about ``A`` versus ``B``.

    1. differing fingerprint component -> ``NonIsomorphic``;
    2. an exact known change verifies -> ``IsomorphicOverQ``;
    3. otherwise search mod each prime -> ``IsomorphicOverFp`` or ``Inconclusive``.
    """
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions differ: {A.dim} vs {B.dim}")
    fa, fb = fingerprint(A), fingerprint(B)
    diffs = fa.differences(fb)
    if diffs:
        name = diffs[0]
        verdict = NonIsomorphic(name, getattr(fa, name), getattr(fb, name))
        assert getattr(fa, name) != getattr(fb, name)
        return verdict
    for label, P in _known_changes(A, B):
        if verify_isomorphism(A, B, P):
            return IsomorphicOverQ(P, label)
    records = search_records(A, B, primes, node_cap, threads)
    notes = tuple(f"p={r.p}: {r.outcome}" + (f" ({r.detail})" if r.detail else "") for r in records)
    for r in records:
        if r.outcome == "isomorphic":
            return IsomorphicOverFp(r.p, r.matrix, notes)
    return Inconclusive(notes)


def verdict_to_json(v) -> dict:
    if isinstance(v, NonIsomorphic):
        def enc(x):
            return list(x) if isinstance(x, tuple) else x

        return {"kind": v.kind, "witness": v.witness, "left": enc(v.left), "right": enc(v.right)}
    if isinstance(v, IsomorphicOverQ):
        return {
            "kind": v.kind,
            "how": v.how,
            "matrix": [[format_scalar(x) for x in row] for row in v.change.matrix],
        }
    if isinstance(v, IsomorphicOverFp):
        return {"kind": v.kind, "p": v.p, "matrix": [list(r) for r in v.matrix], "notes": list(v.notes)}
    return {"kind": "Inconclusive", "notes": list(v.notes)}


def verdict_str(v) -> str:
    if isinstance(v, NonIsomorphic):
        return f"NonIsomorphic (witness: {v.witness} {v.left} vs {v.right})"
    if isinstance(v, IsomorphicOverQ):
        return f"IsomorphicOverQ (via {v.how})"
    if isinstance(v, IsomorphicOverFp):
        return f"IsomorphicOverFp (p={v.p}; not a certificate over C)"
    return "Inconclusive (" + "; ".join(v.notes) + ")"
