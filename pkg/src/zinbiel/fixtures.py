"""Shipped ``.zb`` fixture files and the catalog-wide verification run."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Optional, Union

from . import catalog
from .algebra import Algebra, zinbiel_check
from .analysis import DIM4_SIGNATURES, classify_shape, fingerprint, power_series, signature
from .dsl import AlgebraDoc, Product, Term, algebra_to_doc, load_doc, instantiate, serialize
from .errors import MissingFixture
from .iso import IsomorphicOverQ, distinguish

DATA_DIR = Path(__file__).resolve().parent / "data"
CATALOG_DIR = DATA_DIR / "catalog"
SCHEMA_DIR = DATA_DIR / "schemas"
MANIFEST = "catalog.json"

_ALPHA_FILES = {Fraction(0): "", Fraction(1, 2): "_half", Fraction(2): "_2"}


def _named(A: Algebra, name: str) -> AlgebraDoc:
    doc = algebra_to_doc(A, name)
    return AlgebraDoc(name, doc.dim, (), doc.products)


def _family_doc(k: int, alpha: Fraction) -> AlgebraDoc:
    name = f"A{k}({catalog.format_rational(alpha)})"
    if k == 15:
        return _named(catalog.make_dim4(15, alpha), name)
    t = lambda c, e, param=None: Term(Fraction(c), e, param)  # noqa: E731
    if k == 8:
        prods = [
            Product(1, 1, (t(1, 3),)),
            Product(1, 2, (t(1, 4),)),
            Product(2, 1, (t(-1, 3, "alpha"),)),
            Product(2, 2, (t(-1, 4),)),
        ]
    else:
        prods = [
            Product(1, 1, (t(1, 4),)),
            Product(1, 2, (t(1, 4, "alpha"),)),
            Product(2, 1, (t(-1, 4, "alpha"),)),
            Product(2, 2, (t(1, 4),)),
            Product(3, 3, (t(1, 4),)),
        ]
    return AlgebraDoc(name, 4, (("alpha", alpha),), tuple(prods))


def fixture_docs() -> dict[str, AlgebraDoc]:
    """Every shipped fixture, keyed by file name, in canonical form."""
    docs: dict[str, AlgebraDoc] = {}
    for n in (4, 5, 6):
        docs[f"nf{n}.zb"] = _named(catalog.make_nf(n), f"NF{n}")
    for n in (5, 6):
        for cls, maker in (("f1", catalog.make_f1), ("f2", catalog.make_f2), ("f3", catalog.make_f3)):
            docs[f"{cls}_{n}.zb"] = _named(maker(n), f"{cls.upper()}({n})")
    for k in range(1, 17):
        if k in catalog.PARAMETRIC:
            for alpha, suffix in _ALPHA_FILES.items():
                docs[f"a{k}{suffix}.zb"] = _family_doc(k, alpha)
        else:
            docs[f"a{k}.zb"] = _named(catalog.make_dim4(k), f"A{k}")
    docs["split4.zb"] = _named(catalog.split_dim4(), "split(NF3+C)")
    return {k: v.canonical() for k, v in docs.items()}


def probe_docs() -> dict[str, AlgebraDoc]:
    """Documents that are not catalog members, e.g. the ``A15`` coefficient exposed as a parameter."""
    t = lambda c, e, param=None: Term(Fraction(c), e, param)  # noqa: E731
    a15 = AlgebraDoc(
        "A15-coefficient",
        4,
        (("c", Fraction(-1)),),
        (Product(1, 2, (t(1, 4),)), Product(2, 1, (t(1, 4, "c"),)), Product(2, 2, (t(1, 3),))),
    )
    return {"a15_coef.zb": a15}


def manifest() -> dict:
    """Expected checks for each shipped fixture."""
    entries = []
    for fname, doc in fixture_docs().items():
        A = instantiate(doc)
        entry = {"file": fname, "name": doc.name, "shape": str(classify_shape(A))}
        if doc.dim == 4:
            entry["signature"] = list(signature(A))
        entries.append(entry)
    return {"fixtures": entries, "same_class": [["nf4.zb", "a1.zb"]]}


def write_fixtures(directory: Union[str, Path] = CATALOG_DIR, probes: Optional[Union[str, Path]] = None) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for fname, doc in fixture_docs().items():
        (directory / fname).write_text(serialize(doc), encoding="utf-8")
    (directory / MANIFEST).write_text(json.dumps(manifest(), indent=2) + "\n", encoding="utf-8")
    if probes is not None:
        probes = Path(probes)
        probes.mkdir(parents=True, exist_ok=True)
        for fname, doc in probe_docs().items():
            (probes / fname).write_text(serialize(doc), encoding="utf-8")


@dataclass
class FixtureResult:
    file: str
    name: str
    dim: int
    identity_holds: bool
    power_dims: tuple
    shape: str
    signature: Optional[tuple]
    fingerprint: dict
    problems: list = field(default_factory=list)


@dataclass
class CatalogReport:
    fixtures: list
    matrix: dict  # (file_a, file_b) -> verdict, for a < b with equal dims
    problems: list

    @property
    def ok(self) -> bool:
        return not self.problems


def _load_fixture_set(directory: Path):
    man_path = directory / MANIFEST
    if man_path.exists():
        man = json.loads(man_path.read_text(encoding="utf-8"))
        entries = man["fixtures"]
        same = {frozenset(pair) for pair in man.get("same_class", [])}
    else:
        entries = [{"file": p.name} for p in sorted(directory.glob("*.zb"))]
        same = set()
    missing = [e["file"] for e in entries if not (directory / e["file"]).exists()]
    if missing:
        raise MissingFixture(f"missing fixtures in {directory}: {', '.join(missing)}")
    return entries, same


def catalog_verify(directory: Union[str, Path, None] = None, threads: int = 1) -> CatalogReport:
    """Identity, power sequence, shape and fingerprint per fixture, plus pairwise verdicts.

    Problems: a failed identity check, a shape or signature that disagrees with
    the manifest, a dimension-4 signature outside the admissible list, and an
    exact isomorphism between two fixtures not declared as the same class.
    """
    directory = Path(directory) if directory is not None else CATALOG_DIR
    entries, same = _load_fixture_set(directory)
    results = []
    algebras = {}
    problems = []
    for e in entries:
        doc = load_doc(directory / e["file"])
        A = instantiate(doc)
        algebras[e["file"]] = A
        ps = power_series(A)
        shape = str(classify_shape(A))
        sig = signature(A) if A.dim == 4 else None
        r = FixtureResult(
            e["file"], doc.name, A.dim, zinbiel_check(A).holds, ps.dims, shape, sig, fingerprint(A).as_dict()
        )
        if not r.identity_holds:
            r.problems.append("Zinbiel identity fails")
        if not ps.nilpotent:
            r.problems.append("not nilpotent")
        if "shape" in e and e["shape"] != shape:
            r.problems.append(f"shape {shape}, expected {e['shape']}")
        if sig is not None:
            if "signature" in e and tuple(e["signature"]) != sig:
                r.problems.append(f"signature {sig}, expected {tuple(e['signature'])}")
            if sig not in DIM4_SIGNATURES:
                r.problems.append(f"signature {sig} not admissible in dimension 4")
        problems += [f"{r.file}: {p}" for p in r.problems]
        results.append(r)
    matrix = {}
    files = [e["file"] for e in entries]
    for a, b in combinations(files, 2):
        A, B = algebras[a], algebras[b]
        if A.dim != B.dim:
            continue
        v = distinguish(A, B, threads=threads)
        matrix[(a, b)] = v
        if isinstance(v, IsomorphicOverQ) and frozenset((a, b)) not in same:
            problems.append(f"{a} and {b} are isomorphic over Q")
    return CatalogReport(results, matrix, problems)
