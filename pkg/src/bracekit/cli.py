"""Command-line entry point: ``bracekit <command> ...``.

Exit codes: 0 all non-vacuous checks pass, 1 some conclusion fails,
2 bad input or validation failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from . import groups as G
from .autstructure import (abelian_invariants_of, aut_cyclic_invariants, aut_order_Z2xZ2n)
from .brace import SkewBrace, check_eq2_eq3, check_lambda_hom, psi_hom
from .enumeration import (BraceCorpus, OrderBoundExceeded, ValidationFailed, build_corpus,
                          corpus_dumps, corpus_from_json, max_order_bound)
from .smallgroups import MAX_ORDER as LIBRARY_MAX, identify
from .verify import STATEMENTS, verify_brace

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 64

_STATEMENT_NAMES = {s.lower(): s for s in STATEMENTS}


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_braces(args) -> list[tuple[str, SkewBrace]]:
    if args.brace:
        data = _read_json(args.brace)
        try:
            return [(Path(args.brace).stem, SkewBrace.from_json(data))]
        except (ValueError, KeyError) as exc:
            raise InputError(f"{args.brace}: {exc}") from exc
    data = _read_json(args.corpus)
    try:
        corpus = corpus_from_json(data)
    except (ValidationFailed, KeyError) as exc:
        raise InputError(f"{args.corpus}: {exc}") from exc
    return [(e.id, e.brace) for e in corpus]


def _jobs(value: int | None) -> int:
    return value if value and value > 0 else (os.cpu_count() or 1)


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    data = _read_json(args.file)
    kind = "group" if "table" in data else "brace"
    try:
        if kind == "group":
            g = G.FiniteGroup.from_json(data)
            result = {"valid": True, "kind": kind, "n": g.order}
        else:
            b = SkewBrace.from_json(data)
            result = {"valid": True, "kind": kind, "n": b.order,
                      "lambda_hom": check_lambda_hom(b).ok, "eq2_eq3": check_eq2_eq3(b).ok}
    except (ValueError, KeyError, TypeError) as exc:
        witness = getattr(exc, "witness", None)
        result = {"valid": False, "kind": kind, "error": type(exc).__name__,
                  "message": str(exc), "witness": list(witness) if witness else None}
        _emit(_dumps(result), args.out)
        return EXIT_INPUT
    _emit(_dumps(result), args.out)
    return EXIT_OK


def _corpus(orders, args) -> BraceCorpus:
    bound = max_order_bound(allow_16=getattr(args, "allow_16", False))
    try:
        return build_corpus(orders, jobs=_jobs(args.jobs), bound=bound)
    except OrderBoundExceeded as exc:
        raise UsageError(str(exc)) from exc


def cmd_enumerate(args) -> int:
    corpus = _corpus([args.order], args)
    _emit(corpus_dumps(corpus), args.out)
    return EXIT_OK


def cmd_corpus(args) -> int:
    orders = args.orders or list(range(1, args.max_order + 1))
    corpus = _corpus(orders, args)
    _emit(corpus_dumps(corpus), args.out)
    print(f"{len(corpus)} skew braces over orders {orders}", file=sys.stderr)
    return EXIT_OK


def analyze_brace(A: SkewBrace) -> dict:
    add, mul = A.add, A.mul
    auts = G.automorphism_group(add)
    char = G.characteristic_subgroups(add, auts)
    psi = psi_hom(A, G.trivial(add), auts)
    out = {
        "n": A.order,
        "add": _group_summary(add),
        "mul": _group_summary(mul),
        "lambda_hom": check_lambda_hom(A).ok,
        "eq2_eq3": check_eq2_eq3(A).ok,
        "trivial_brace": add.table == mul.table,
        "order_aut_add": len(auts),
        "characteristic_subgroup_orders": [len(s) for s in char],
        "lambda_kernel_order": len(psi.kernel),
        "lambda_image_order": len(set(psi.image)),
    }
    return out


def _group_summary(g: G.FiniteGroup) -> dict:
    out = {"abelian": G.is_abelian(g), "nilpotent": G.is_nilpotent(g),
           "derived_length": G.derived_length(g),
           "derived_series_orders": [len(s) for s in G.derived_series(g)],
           "center_order": len(G.center(g))}
    if g.order <= LIBRARY_MAX:
        order, idx, name = identify(g)
        out["class"] = f"{name} [{order},{idx}]"
    return out


def cmd_analyze(args) -> int:
    braces = _load_braces(args)
    if args.id:
        braces = [(i, b) for i, b in braces if i == args.id]
        if not braces:
            raise InputError(f"no brace with id {args.id}")
    report = [{"id": i, **analyze_brace(b)} for i, b in braces]
    _emit(_dumps(report), args.out)
    return EXIT_OK


def cmd_aut(args) -> int:
    if args.cyclic is not None:
        n = args.cyclic
        closed = aut_cyclic_invariants(n)
        brute = abelian_invariants_of(G.automorphism_group(G.cyclic_group(n)).as_group())
        ok = closed == brute
        print(f"Aut(Z{n}) invariants {list(closed.factors)} (order {closed.order})")
    elif args.z2x2n is not None:
        n = args.z2x2n
        g = G.direct_product(G.cyclic_group(2), G.cyclic_group(2 ** n))
        auts = G.automorphism_group(g)
        expected = aut_order_Z2xZ2n(n)
        dl = G.derived_length(auts.as_group())
        ok = len(auts) == expected and dl is not None
        print(f"|Aut(Z2 x Z{2 ** n})| = {expected}, derived length {dl}")
    else:
        data = _read_json(args.group)
        try:
            g = G.FiniteGroup.from_json(data)
        except (ValueError, KeyError) as exc:
            raise InputError(str(exc)) from exc
        auts = G.automorphism_group(g)
        print(f"|Aut| = {len(auts)}, derived length {G.aut_derived_length(auts)}")
        if G.is_abelian(g):
            print(f"group invariants {list(abelian_invariants_of(g).factors)}")
        ok = True
    print(f"brute-force check: {'OK' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_FAILED


def _verify_task(task):
    brace_id, add, mul, statements = task
    A = SkewBrace(G._trusted(add), G._trusted(mul))
    return [r.to_json() for r in verify_brace(A, brace_id, statements)]


def run_verification(braces, statements, jobs: int) -> list[dict]:
    tasks = [(i, b.add.table, b.mul.table, tuple(statements)) for i, b in braces]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_verify_task, tasks, chunksize=4))
    else:
        chunks = [_verify_task(t) for t in tasks]
    # map() keeps task order, so reports follow corpus order whatever the scheduling
    reports = [r for chunk in chunks for r in chunk]
    return reports


def _render(reports: list[dict], fmt: str) -> str:
    if fmt == "json":
        return _dumps(reports)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["brace_id", "statement_id", "hypotheses_hold", "conclusion_holds", "vacuous"])
        for r in reports:
            w.writerow([r["brace_id"], r["statement_id"], r["hypotheses_hold"],
                        r["conclusion_holds"], r["vacuous"]])
        return buf.getvalue()
    lines = []
    for r in reports:
        status = "vacuous" if r["vacuous"] else ("ok" if r["conclusion_holds"] else "FAILED")
        lines.append(f"{r['brace_id']} {r['statement_id']} {status}"
                     + (f" witness={r['witness']}" if r["witness"] else ""))
    return "\n".join(lines) + "\n"


class _Counts:
    def __init__(self, reports):
        self.checked = len(reports)
        self.vacuous = sum(r["vacuous"] for r in reports)
        self.failed = sum((not r["vacuous"]) and not r["conclusion_holds"] for r in reports)
        self.passed = self.checked - self.vacuous - self.failed

    def line(self) -> str:
        return (f"checked/passed/vacuous/failed = "
                f"{self.checked}/{self.passed}/{self.vacuous}/{self.failed}")


def _statements(value: str) -> list[str]:
    if value == "all":
        return list(STATEMENTS)
    out = []
    for part in value.split(","):
        key = part.strip().lower()
        if key not in _STATEMENT_NAMES:
            raise UsageError(f"unknown statement {part!r}; choose from {', '.join(_STATEMENT_NAMES)}")
        out.append(_STATEMENT_NAMES[key])
    return out


def _finish(reports, args) -> int:
    _emit(_render(reports, args.format), args.out)
    counts = _Counts(reports)
    print(counts.line(), file=sys.stderr)
    return EXIT_FAILED if counts.failed else EXIT_OK


def cmd_verify(args) -> int:
    statements = _statements(args.statement)
    braces = _load_braces(args)
    return _finish(run_verification(braces, statements, _jobs(args.jobs)), args)


def cmd_sweep(args) -> int:
    corpus = _corpus(range(1, args.max_order + 1), args)
    if args.corpus_out:
        Path(args.corpus_out).write_text(corpus_dumps(corpus))
    braces = [(e.id, e.brace) for e in corpus]
    return _finish(run_verification(braces, list(STATEMENTS), _jobs(args.jobs)), args)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bracekit", description="Finite skew brace toolkit.")
    p.add_argument("--version", action="version", version=f"bracekit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="validate a brace or group JSON file")
    v.add_argument("file")
    v.add_argument("--out")
    v.set_defaults(func=cmd_validate)

    def add_jobs(q):
        q.add_argument("--jobs", type=int, default=None, help="worker processes (default: all CPUs)")
        q.add_argument("--allow-16", action="store_true", help="permit order 16 enumeration")

    e = sub.add_parser("enumerate", help="all skew braces of one order, up to isomorphism")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--out")
    add_jobs(e)
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("corpus", help="corpus operations")
    csub = c.add_subparsers(dest="corpus_command", required=True, parser_class=_Parser)
    cb = csub.add_parser("build", help="build a corpus file")
    group = cb.add_mutually_exclusive_group(required=True)
    group.add_argument("--max-order", type=int)
    group.add_argument("--orders", type=lambda s: [int(x) for x in s.split(",")])
    cb.add_argument("--out")
    add_jobs(cb)
    cb.set_defaults(func=cmd_corpus)

    a = sub.add_parser("analyze", help="structural invariants of braces")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--brace")
    src.add_argument("--corpus")
    a.add_argument("--id")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    au = sub.add_parser("aut", help="automorphism groups against their closed forms")
    which = au.add_mutually_exclusive_group(required=True)
    which.add_argument("--cyclic", type=int, metavar="N", help="Aut(Z_N)")
    which.add_argument("--z2x2n", type=int, metavar="N", help="Aut(Z_2 x Z_(2^N))")
    which.add_argument("--group", metavar="FILE", help="group JSON file")
    au.set_defaults(func=cmd_aut)

    ve = sub.add_parser("verify", help="check statements over braces")
    ve.add_argument("--statement", default="all",
                    help="all or a comma list of " + ",".join(_STATEMENT_NAMES))
    src = ve.add_mutually_exclusive_group(required=True)
    src.add_argument("--corpus")
    src.add_argument("--brace")
    ve.add_argument("--format", choices=["json", "csv", "text"], default="json")
    ve.add_argument("--out")
    ve.add_argument("--jobs", type=int, default=None)
    ve.set_defaults(func=cmd_verify)

    sw = sub.add_parser("sweep", help="build a corpus and run every check on it")
    sw.add_argument("--max-order", type=int, default=None)
    sw.add_argument("--format", choices=["json", "csv", "text"], default="json")
    sw.add_argument("--out")
    sw.add_argument("--corpus-out")
    add_jobs(sw)
    sw.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_order", None) is None and args.command == "sweep":
        args.max_order = max_order_bound(allow_16=args.allow_16)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bracekit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"bracekit: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (G.GroupError, ValueError) as exc:
        print(f"bracekit: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
