"""Line-based text format for multiplication tables (``.zb`` files).

::

    # comment
    algebra A8
    dim 4
    param alpha = 1/2
    table
    e1 * e1 = e3
    e2 * e1 = -alpha e3
    end

A term is ``[-][<rational> | <param>] e<k>``; terms are joined by ``+`` or ``-``.
Omitted products are zero, and ``= 0`` writes an explicit zero product.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Optional, Union

from .algebra import Algebra
from .errors import (
    BadRational,
    DSLError,
    DSLSyntaxError,
    DuplicateProduct,
    ExtensionScalarNotSerializable,
    IndexOutOfRange,
    UnboundParameter,
)
from .linalg import zeros
from .scalars import QuadraticScalar, format_rational, parse_rational


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    k: int
    param: Optional[str] = None  # coeff is then the sign, +1 or -1


@dataclass(frozen=True)
class Product:
    i: int
    j: int
    terms: tuple = ()


@dataclass(frozen=True)
class AlgebraDoc:
    name: str
    dim: int
    params: tuple = ()  # (name, Fraction) pairs
    products: tuple = ()  # Product values, 1-based indices
    lines: dict = field(default_factory=dict, compare=False, repr=False)

    def canonical(self) -> "AlgebraDoc":
        """Same document with products sorted by ``(i, j)`` and terms by ``k``."""
        prods = tuple(
            Product(p.i, p.j, tuple(sorted(p.terms, key=lambda t: t.k)))
            for p in sorted(self.products, key=lambda p: (p.i, p.j))
        )
        return AlgebraDoc(self.name, self.dim, tuple(self.params), prods)


_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_TOKEN_RE = re.compile(r"\s*(?:(e\d+)(?![A-Za-z0-9_])|(\d+(?:/\d*)?)|(" + _IDENT + r")|([+-])|(\S))")
_LHS_RE = re.compile(r"^e(\d+)\s*\*\s*e(\d+)\s*=\s*(.*)$")
_PARAM_RE = re.compile(r"^param\s+(" + _IDENT + r")\s*=\s*(\S+)$")
_BASIS_RE = re.compile(r"^e\d+$")


def _rational(text: str, line: int) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise BadRational(str(exc), line) from None


def _parse_rhs(text: str, dim: int, line: int) -> tuple:
    if text.strip() == "0":
        return ()
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        pos = m.end()
        basis, num, ident, sign, junk = m.groups()
        if junk is not None:
            raise DSLSyntaxError(f"unexpected character {junk!r}", line)
        if basis is None and num is None and ident is None and sign is None:
            break
        if basis is not None:
            tokens.append(("basis", basis))
        elif num is not None:
            tokens.append(("num", num))
        elif ident is not None:
            tokens.append(("ident", ident))
        else:
            tokens.append(("sign", sign))
    terms = []
    idx = 0
    while idx < len(tokens):
        neg = False
        if tokens[idx][0] == "sign":
            neg = tokens[idx][1] == "-"
            idx += 1
        elif terms:
            raise DSLSyntaxError("terms must be separated by '+' or '-'", line)
        coeff, param = Fraction(1), None
        if idx < len(tokens) and tokens[idx][0] == "num":
            coeff = _rational(tokens[idx][1], line)
            idx += 1
        elif idx < len(tokens) and tokens[idx][0] == "ident":
            param = tokens[idx][1]
            idx += 1
        if idx >= len(tokens) or tokens[idx][0] != "basis":
            raise DSLSyntaxError("expected a basis vector e<k>", line)
        k = int(tokens[idx][1][1:])
        idx += 1
        if not 1 <= k <= dim:
            raise IndexOutOfRange(f"e{k} outside 1..{dim}", line)
        terms.append(Term(-coeff if neg else coeff, k, param))
    if not terms:
        raise DSLSyntaxError("empty right-hand side", line)
    return tuple(terms)


def parse_dsl(text: str) -> AlgebraDoc:
    name = None
    dim = None
    params: list = []
    products: list = []
    seen: dict = {}
    state = "header"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if state == "done":
            raise DSLSyntaxError("content after 'end'", lineno)
        if state == "table":
            if line == "end":
                state = "done"
                continue
            m = _LHS_RE.match(line)
            if not m:
                raise DSLSyntaxError(f"expected 'e<i> * e<j> = ...', got {line!r}", lineno)
            i, j = int(m.group(1)), int(m.group(2))
            for idx in (i, j):
                if not 1 <= idx <= dim:
                    raise IndexOutOfRange(f"e{idx} outside 1..{dim}", lineno)
            if (i, j) in seen:
                raise DuplicateProduct(f"e{i} * e{j} already defined on line {seen[(i, j)]}", lineno)
            seen[(i, j)] = lineno
            products.append(Product(i, j, _parse_rhs(m.group(3), dim, lineno)))
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "algebra" and name is None and rest:
            name = rest
        elif keyword == "dim" and dim is None:
            if not re.fullmatch(r"\d+", rest) or int(rest) < 1:
                raise DSLSyntaxError(f"dim must be a positive integer, got {rest!r}", lineno)
            dim = int(rest)
        elif keyword == "param":
            m = _PARAM_RE.match(line)
            if not m:
                raise DSLSyntaxError("expected 'param <ident> = <rational>'", lineno)
            pname = m.group(1)
            if _BASIS_RE.match(pname):
                raise DSLSyntaxError(f"parameter name {pname!r} clashes with a basis vector", lineno)
            if any(pname == p for p, _ in params):
                raise DSLSyntaxError(f"parameter {pname!r} declared twice", lineno)
            params.append((pname, _rational(m.group(2), lineno)))
        elif line == "table":
            if name is None or dim is None:
                raise DSLSyntaxError("'algebra' and 'dim' must precede 'table'", lineno)
            state = "table"
        else:
            raise DSLSyntaxError(f"unexpected line {line!r}", lineno)
    if state != "done":
        raise DSLSyntaxError("missing 'table' ... 'end' block", None)
    return AlgebraDoc(name, dim, tuple(params), tuple(products), lines=dict(seen))


def instantiate(doc: AlgebraDoc, bindings: Optional[Mapping[str, object]] = None) -> Algebra:
    """Substitute parameter values (``bindings`` override the declared defaults)."""
    values = dict(doc.params)
    for key, val in (bindings or {}).items():
        values[key] = Fraction(val) if not isinstance(val, str) else parse_rational(val)
    c = zeros(doc.dim, doc.dim, doc.dim)
    for prod in doc.products:
        for t in prod.terms:
            coeff = t.coeff
            if t.param is not None:
                if t.param not in values:
                    raise UnboundParameter(f"parameter {t.param!r} has no value", doc.lines.get((prod.i, prod.j)))
                coeff = coeff * values[t.param]
            c[prod.i - 1, prod.j - 1, t.k - 1] += coeff
    return Algebra(c)


def _term_text(t: Term) -> tuple[bool, str]:
    """``(negative, magnitude text)``."""
    if t.param is not None:
        return t.coeff < 0, f"{t.param} e{t.k}"
    mag = abs(t.coeff)
    if mag == 1:
        return t.coeff < 0, f"e{t.k}"
    return t.coeff < 0, f"{format_rational(mag)} e{t.k}"


def _rhs_text(terms) -> str:
    if not terms:
        return "0"
    out = []
    for n, t in enumerate(terms):
        neg, body = _term_text(t)
        if n == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def algebra_to_doc(A: Algebra, name: str = "A") -> AlgebraDoc:
    products = []
    n = A.dim
    for i in range(n):
        for j in range(n):
            terms = []
            for k in range(n):
                x = A.constants[i, j, k]
                if x == 0:
                    continue
                if isinstance(x, QuadraticScalar):
                    raise ExtensionScalarNotSerializable(
                        f"e{i + 1} * e{j + 1} has irrational coefficient {x}"
                    )
                terms.append(Term(Fraction(x), k + 1))
            if terms:
                products.append(Product(i + 1, j + 1, tuple(terms)))
    return AlgebraDoc(name, n, (), tuple(products))


def serialize(obj: Union[Algebra, AlgebraDoc], name: Optional[str] = None) -> str:
    """Deterministic text: products sorted by ``(i, j)``, terms by ``k``."""
    doc = algebra_to_doc(obj, name or "A") if isinstance(obj, Algebra) else obj
    if name is not None:
        doc = AlgebraDoc(name, doc.dim, doc.params, doc.products)
    doc = doc.canonical()
    lines = [f"algebra {doc.name}", f"dim {doc.dim}"]
    lines += [f"param {p} = {format_rational(v)}" for p, v in doc.params]
    lines.append("table")
    lines += [f"e{p.i} * e{p.j} = {_rhs_text(p.terms)}" for p in doc.products]
    lines.append("end")
    return "\n".join(lines) + "\n"


def load(path: Union[str, Path], bindings: Optional[Mapping[str, object]] = None) -> Algebra:
    """Parse and instantiate a ``.zb`` file; DSL errors are re-raised with the file name."""
    path = Path(path)
    try:
        doc = parse_dsl(path.read_text(encoding="utf-8"))
        return instantiate(doc, bindings)
    except DSLError as exc:
        exc.path = str(path)
        raise


def load_doc(path: Union[str, Path]) -> AlgebraDoc:
    return parse_dsl(Path(path).read_text(encoding="utf-8"))
