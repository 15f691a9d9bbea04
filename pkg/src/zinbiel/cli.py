"""Command-line front end.

Exit codes: 0 success, 1 the checked property fails, 2 usage or parse error.
``--json`` prints a single JSON object; rationals are strings ``"p/q"``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, dsl, iso
from .algebra import BasisChange, zinbiel_check
from .analysis import classify_shape, fingerprint, natural_grading, nilindex, power_series
from .errors import DSLError, MissingFixture, NotNilpotent, ZinbielError
from .fixtures import catalog_verify
from .linalg import Subspace
from .scalars import format_scalar, parse_rational, parse_scalar


class UsageError(Exception):
    pass


def _vec(v) -> list[str]:
    return [format_scalar(x) for x in v]


def _sub(S: Subspace) -> list[list]:
    if S.modulus is not None:
        return [list(r) for r in S.rows]
    return [_vec(r) for r in S.rows]


def _load(path):
    return dsl.load(path)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_check(args):
    A = _load(args.file)
    rep = zinbiel_check(A)
    viol = [
        {"i": v.i + 1, "j": v.j + 1, "k": v.k + 1, "residual": _vec(v.residual)} for v in rep.violations
    ]
    lines = ["Zinbiel identity: holds" if rep.holds else f"Zinbiel identity: fails ({len(viol)} violations)"]
    lines += [f"violation at ({d['i']},{d['j']},{d['k']}): residual {' '.join(d['residual'])}" for d in viol]
    _emit(args, {"command": "check", "holds": rep.holds, "violations": viol}, "\n".join(lines))
    return 0 if rep.holds else 1


def cmd_powers(args):
    A = _load(args.file)
    ps = power_series(A)
    lines = ["dims: " + " ".join(map(str, ps.dims))]
    lines += [f"A^{i}: {S}" for i, S in enumerate(ps.subspaces, start=1)]
    payload = {
        "command": "powers",
        "dims": list(ps.dims),
        "subspaces": [_sub(S) for S in ps.subspaces],
        "nilpotent": ps.nilpotent,
    }
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_nilindex(args):
    A = _load(args.file)
    try:
        s = nilindex(A)
    except NotNilpotent as exc:
        _emit(args, {"command": "nilindex", "nilpotent": False, "nilindex": None}, f"not nilpotent ({exc})")
        return 1
    _emit(args, {"command": "nilindex", "nilpotent": True, "nilindex": s}, str(s))
    return 0


def cmd_shape(args):
    A = _load(args.file)
    shape = str(classify_shape(A))
    _emit(args, {"command": "shape", "shape": shape}, shape)
    return 0


def cmd_grade(args):
    A = _load(args.file)
    try:
        G = natural_grading(A)
    except NotNilpotent as exc:
        _emit(args, {"command": "grade", "error": str(exc)}, f"not nilpotent ({exc})")
        return 1
    text = "degrees: " + " ".join(map(str, G.degrees)) + "\n" + dsl.serialize(G.algebra, "graded").rstrip()
    payload = {
        "command": "grade",
        "degrees": list(G.degrees),
        "change": [_vec(r) for r in G.change.matrix],
        "algebra": dsl.serialize(G.algebra, "graded"),
    }
    _emit(args, payload, text)
    return 0


def cmd_fingerprint(args):
    A = _load(args.file)
    fp = fingerprint(A).as_dict()
    text = "\n".join(f"{k}: {' '.join(map(str, v)) if isinstance(v, list) else v}" for k, v in fp.items())
    _emit(args, {"command": "fingerprint", "fingerprint": fp}, text)
    return 0


def _rational_opt(text, flag):
    if text is None:
        return None
    try:
        return parse_rational(text)
    except ValueError:
        raise UsageError(f"{flag}: not a rational: {text!r}")


def cmd_gen(args):
    kind = args.kind.lower()
    alpha = _rational_opt(args.alpha, "--alpha")
    beta = _rational_opt(args.beta, "--beta")
    if kind in ("nf", "f1", "f2", "f3", "fab"):
        if args.n is None:
            raise UsageError(f"gen {kind} needs N")
        n = int(args.n)
        if kind == "nf":
            A, name = catalog.make_nf(n), f"NF{n}"
        elif kind == "fab":
            A = catalog.make_filiform(n, alpha or 0, beta or 0)
            name = str(catalog.CatalogId("FAB", n, alpha or 0, beta or 0))
        else:
            A = {"f1": catalog.make_f1, "f2": catalog.make_f2, "f3": catalog.make_f3}[kind](n)
            name = f"{kind.upper()}({n})"
    elif kind.startswith("a") and kind[1:].isdigit():
        k = int(kind[1:])
        A = catalog.make_dim4(k, alpha)
        name = str(catalog.CatalogId(f"A{k}", alpha=alpha))
    else:
        raise UsageError(f"unknown algebra kind {args.kind!r}")
    text = dsl.serialize(A, name)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    if args.json:
        print(json.dumps({"command": "gen", "name": name, "dsl": text}, sort_keys=True))
    elif not args.output:
        sys.stdout.write(text)
    return 0


def cmd_normalize(args):
    alpha = _rational_opt(args.alpha, "--alpha")
    beta = _rational_opt(args.beta, "--beta")
    cls, P = iso.normalize_filiform(args.n, alpha, beta)
    target = {"F1": catalog.make_f1, "F2": catalog.make_f2, "F3": catalog.make_f3}[cls](args.n)
    ok = iso.verify_isomorphism(catalog.make_filiform(args.n, alpha, beta), target, P)
    field = "Q" if P.is_rational() else f"Q(sqrt({P.radicand()}))"
    payload = {
        "command": "normalize",
        "class": cls,
        "field": field,
        "verified": ok,
        "matrix": [_vec(r) for r in P.matrix],
    }
    text = f"class: {cls}\nfield: {field}\nverified: {ok}\n" + "\n".join(P.rows_str())
    _emit(args, payload, text)
    return 0 if ok else 1


def cmd_iso(args):
    A, B = _load(args.file1), _load(args.file2)
    if A.dim != B.dim:
        v = iso.NonIsomorphic("dim", A.dim, B.dim)
        _emit(args, {"command": "iso", "verdict": iso.verdict_to_json(v)}, iso.verdict_str(v))
        return 0
    primes = (args.mod,) if args.mod is not None else iso.DEFAULT_PRIMES
    if args.search:
        recs = iso.search_records(A, B, primes=primes, threads=args.threads)
        payload = {
            "command": "iso",
            "searches": [
                {
                    "p": r.p,
                    "outcome": r.outcome,
                    "detail": r.detail,
                    "matrix": [list(row) for row in r.matrix] if r.matrix else None,
                }
                for r in recs
            ],
        }
        lines = []
        for r in recs:
            lines.append(f"p={r.p}: {r.outcome}" + (f" ({r.detail})" if r.detail else ""))
            if r.matrix:
                lines += ["  " + " ".join(map(str, row)) for row in r.matrix]
        _emit(args, payload, "\n".join(lines))
        return 0
    v = iso.distinguish(A, B, primes=primes, threads=args.threads)
    _emit(args, {"command": "iso", "verdict": iso.verdict_to_json(v)}, iso.verdict_str(v))
    return 0


def _read_matrix(path) -> BasisChange:
    rows = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([parse_scalar(tok) for tok in line.split()])
        except ValueError as exc:
            raise DSLError(str(exc), lineno) from None
    return BasisChange(rows)


def cmd_verify_change(args):
    A, B = _load(args.file1), _load(args.file2)
    P = _read_matrix(args.matrix)
    ok = iso.verify_isomorphism(A, B, P)
    text = "isomorphism: verified" if ok else "isomorphism: not verified"
    _emit(args, {"command": "verify-change", "isomorphism": ok}, text)
    return 0 if ok else 1


def cmd_split(args):
    A = _load(args.file)
    found = iso.split_scan_fp(A, args.mod)
    if found is None:
        _emit(args, {"command": "split", "p": args.mod, "split": False}, f"no decomposition over F_{args.mod}")
    else:
        I, J = found
        _emit(
            args,
            {"command": "split", "p": args.mod, "split": True, "I": _sub(I), "J": _sub(J)},
            f"split over F_{args.mod}:\nI = {I}\nJ = {J}",
        )
    return 0


def cmd_catalog(args):
    if args.action != "verify":
        raise UsageError(f"unknown catalog action {args.action!r}")
    rep = catalog_verify(args.dir, threads=args.threads)
    files = [r.file for r in rep.fixtures]
    if args.json:
        payload = {
            "command": "catalog-verify",
            "ok": rep.ok,
            "problems": rep.problems,
            "fixtures": [
                {
                    "file": r.file,
                    "name": r.name,
                    "dim": r.dim,
                    "identity_holds": r.identity_holds,
                    "power_dims": list(r.power_dims),
                    "shape": r.shape,
                    "signature": list(r.signature) if r.signature is not None else None,
                    "fingerprint": r.fingerprint,
                }
                for r in rep.fixtures
            ],
            "matrix": [
                {"a": a, "b": b, "verdict": iso.verdict_to_json(v)} for (a, b), v in rep.matrix.items()
            ],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        out = []
        for r in rep.fixtures:
            fp = r.fingerprint
            sig = "" if r.signature is None else f" sig={r.signature}"
            out.append(
                f"{r.file:14} {r.name:16} identity={'ok' if r.identity_holds else 'FAIL'} "
                f"dims={list(r.power_dims)} shape={r.shape}{sig} "
                f"ann=({fp['left_ann']},{fp['right_ann']},{fp['two_sided_ann']}) "
                f"sym={fp['sym_rank']} anti={fp['antisym_rank']} gen={fp['generators']}"
            )
        out.append("")
        out.append("pairwise verdicts (N = NonIsomorphic, Q = IsomorphicOverQ, P = IsomorphicOverFp, ? = Inconclusive, . = other dim):")
        code = {"NonIsomorphic": "N", "IsomorphicOverQ": "Q", "IsomorphicOverFp": "P", "Inconclusive": "?"}
        for a in files:
            cells = []
            for b in files:
                if a == b:
                    cells.append("=")
                    continue
                v = rep.matrix.get((a, b)) or rep.matrix.get((b, a))
                cells.append(code[v.kind] if v is not None else ".")
            out.append(f"{a:14} {''.join(cells)}")
        out.append("")
        for (a, b), v in rep.matrix.items():
            if v.kind != "NonIsomorphic":
                out.append(f"{a} vs {b}: {iso.verdict_str(v)}")
        out.append("")
        out += [f"problem: {p}" for p in rep.problems]
        out.append("catalog verify: " + ("ok" if rep.ok else "FAILED"))
        print("\n".join(out))
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit one JSON object")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes for searches")

    parser = argparse.ArgumentParser(prog="zinbiel", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", default=False, help="emit one JSON object")
    parser.add_argument("--threads", type=int, default=1, help="worker processes for searches")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (
        ("check", cmd_check, "check the Zinbiel identity on all basis triples"),
        ("powers", cmd_powers, "power sequence A^1, A^2, ..."),
        ("nilindex", cmd_nilindex, "index of nilpotency"),
        ("shape", cmd_shape, "NulFiliform / Filiform / Other"),
        ("grade", cmd_grade, "associated graded algebra"),
        ("fingerprint", cmd_fingerprint, "rank invariants"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file")
        p.set_defaults(func=fn)

    p = sub.add_parser("gen", parents=[common], help="write a catalog algebra as DSL")
    p.add_argument("kind", help="nf, f1, f2, f3, fab or a1..a16")
    p.add_argument("n", nargs="?", help="dimension (nf, f1, f2, f3, fab)")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("normalize", parents=[common], help="basis change from F_n(alpha, beta) to its class")
    p.add_argument("n", type=int)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("iso", parents=[common], help="distinguish two algebras")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--mod", type=int)
    p.add_argument("--search", action="store_true")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("verify-change", parents=[common], help="check that a basis change maps FILE1 onto FILE2")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_verify_change)

    p = sub.add_parser("split", parents=[common], help="search a direct-sum decomposition over F_p")
    p.add_argument("file")
    p.add_argument("--mod", type=int, required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("catalog", parents=[common], help="catalog-wide verification")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--dir")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DSLError as exc:
        where = getattr(exc, "path", None)
        prefix = f"{where}:{exc.line}: " if where and exc.line else f"{where}: " if where else ""
        print(f"error: {prefix}{exc.message}", file=sys.stderr)
        return 2
    except (UsageError, MissingFixture, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ZinbielError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
