"""Command-line driver.

Exit codes: 0 success, 1 semantic failure (a witness is printed), 2 input or
parse failure, 3 resource cap exceeded or data missing.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
import time
from pathlib import Path

from . import __version__
from .braces import (
    CONVENTIONS,
    IngestionError,
    builtin_catalog,
    export_braces,
    ingest_braces,
    packaged_catalog,
    reflection_census,
)
from .constructions import (
    MatchedSystem,
    SemilatticeSystem,
    TwistedSystem,
    matched_product,
    r_kappa,
    strong_semilattice,
    twisted_union,
)
from .core import FiniteMap, Solution, check_ybe
from .errors import DomainError, ResourceError, StructureError
from .families import FAMILIES, family
from .reflections import (
    ENUM_CAP,
    brute_force_reflections,
    classify_reflection,
    default_workers,
    enumerate_reflections,
    is_reflection,
)
from .reports import CensusReport, diff_against_golden, golden_path, read_table_csv
from .shelves import (
    Shelf,
    automorphisms,
    derived_left_shelf,
    derived_right_shelf,
    endomorphisms,
    multiplication_group,
    solution_from_shelf,
)

log = logging.getLogger("ybreflect")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class InputError(Exception):
    """Unreadable or unparsable input."""


# ---------------------------------------------------------------- input helpers

def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _is_shelf_json(data) -> bool:
    return isinstance(data, dict) and "op" in data


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        out[k] = _parse_value(v)
    return out


def _structure(args):
    """Solution or Shelf from ``--family`` or a JSON file."""
    if getattr(args, "family", None):
        return family(args.family, **_params(args.param))
    if not getattr(args, "input", None):
        raise InputError("give an input file or --family")
    data = _load_json(args.input)
    if _is_shelf_json(data):
        return Shelf.from_json(data)
    return Solution.from_json(data)


def _solution(args) -> Solution:
    obj = _structure(args)
    return solution_from_shelf(obj) if isinstance(obj, Shelf) else obj


def _shelf(args) -> Shelf:
    obj = _structure(args)
    if isinstance(obj, Shelf):
        return obj
    side = getattr(args, "side", "left")
    return derived_left_shelf(obj) if side == "left" else derived_right_shelf(obj)


def _map(text: str, n: int, zero_based: bool = False) -> FiniteMap:
    if zero_based:
        f = FiniteMap(tuple(int(t) for t in text.replace(",", " ").split()) if (" " in text or "," in text)
                      else tuple(int(c) for c in text))
    else:
        f = FiniteMap.from_string(text)
    if f.n != n:
        raise StructureError(f"map {text!r} has {f.n} points, expected {n}")
    return f


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------- commands

def cmd_verify(args) -> int:
    data = _load_json(args.input)
    if _is_shelf_json(data):
        sh = Shelf.from_json(data, check=False)
        w = sh.distributivity_witness()
        if w is not None:
            print(f"INVALID: {sh.side} self-distributivity fails at {w}")
            return EXIT_FAIL
        print(f"valid {sh.side} shelf n={sh.n} rack={sh.is_rack} quandle={sh.is_quandle}")
        return EXIT_OK
    if not isinstance(data, dict) or "lambda" not in data or "rho" not in data:
        raise InputError("expected Solution JSON with 'lambda' and 'rho' (or Shelf JSON with 'op')")
    report = check_ybe(data["lambda"], data["rho"])
    if not report.ok:
        print(f"INVALID: {report.axiom} fails at triple {report.witness}")
        return EXIT_FAIL
    S = Solution.from_json(data, check=False)
    print(f"valid solution n={S.n}")
    for k, v in S.flags.as_dict().items():
        print(f"  {k}: {v}")
    return EXIT_OK


def _reflection_csv(rs, one_based: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    names = ["lambda_centralizing", "rho_invariant", "lambda_invariant", "rho_centralizing",
             "bijective", "involutive", "idempotent"]
    w.writerow(["kappa"] + names)
    for rec in rs:
        flags = rec.flags.as_dict()
        w.writerow([rec.kappa.to_string(one_based)] + [int(flags[k]) for k in names])
    return buf.getvalue()


def cmd_reflect_enum(args) -> int:
    S = _solution(args)
    one_based = args.display == "one-based"
    if args.brute:
        rs = brute_force_reflections(S)
    else:
        rs = enumerate_reflections(S, cap=args.cap, force=args.force, workers=args.workers,
                                   bijective=args.bijective)
    if args.format == "json":
        out = _dump(rs.to_json())
    elif args.format == "csv":
        out = _reflection_csv(rs, one_based)
    else:
        c = rs.counts
        lines = [rec.kappa.to_string(one_based) for rec in rs]
        lines.append(f"# total={c.total} only_lambda_centralizing={c.only_lambda_centralizing} "
                     f"only_rho_invariant={c.only_rho_invariant} both={c.both} "
                     f"only_lambda_invariant={c.only_lambda_invariant} "
                     f"only_rho_centralizing={c.only_rho_centralizing} all_four={c.all_four}")
        out = "\n".join(lines) + "\n"
    _emit(out, args.output)
    return EXIT_OK


def cmd_reflect_check(args) -> int:
    S = _solution(args)
    kappa = _map(args.kappa, S.n, args.zero_based)
    ok = is_reflection(S, kappa)
    print(f"{args.kappa}: {'reflection' if ok else 'not a reflection'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reflect_classify(args) -> int:
    S = _solution(args)
    kappa = _map(args.kappa, S.n, args.zero_based)
    rec = classify_reflection(S, kappa)
    out = {"kappa": args.kappa, "reflection": is_reflection(S, kappa)}
    out.update(rec.flags.as_dict())
    _emit(_dump(out), None)
    return EXIT_OK


def cmd_shelf_derive(args) -> int:
    S = _solution(args)
    sh = derived_left_shelf(S) if args.side == "left" else derived_right_shelf(S)
    _emit(_dump(sh.to_json()), args.output)
    return EXIT_OK


def cmd_shelf_lmlt(args) -> int:
    G = multiplication_group(_shelf(args))
    out = {"order": G.order, "abelian": G.is_abelian()}
    if args.elements:
        out["elements"] = [list(g.img) for g in G]
    _emit(_dump(out), args.output)
    return EXIT_OK


def cmd_shelf_end(args) -> int:
    sh = _shelf(args)
    maps = automorphisms(sh) if args.aut else endomorphisms(sh)
    one_based = args.display == "one-based"
    _emit("".join(m.to_string(one_based) + "\n" for m in maps) + f"# count={len(maps)}\n", args.output)
    return EXIT_OK


def _sol(data) -> Solution:
    if _is_shelf_json(data):
        return solution_from_shelf(Shelf.from_json(data))
    return Solution.from_json(data)


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "family":
        obj = family(args.name, **_params(args.param))
        _emit(_dump(obj.to_json()), args.output)
        return EXIT_OK
    if kind == "rkappa":
        sh = Shelf.from_json(_load_json(args.shelf))
        S = r_kappa(sh, _map(args.kappa, sh.n, args.zero_based))
        _emit(_dump(S.to_json()), args.output)
        return EXIT_OK
    data = _load_json(args.system)
    try:
        if kind == "matched":
            M = MatchedSystem(_sol(data["S"]), _sol(data["T"]),
                              [FiniteMap(tuple(m)) for m in data["alpha"]],
                              [FiniteMap(tuple(m)) for m in data["beta"]])
            S = matched_product(M)
        elif kind == "semilattice":
            phi = {(int(e["from"]), int(e["to"])): tuple(e["img"]) for e in data.get("phi", [])}
            sig = SemilatticeSystem(data["meet"], tuple(_sol(p) for p in data["parts"]), phi)
            S = strong_semilattice(sig)
        else:
            W = TwistedSystem(_sol(data["U"]), _sol(data["V"]),
                              *(FiniteMap(tuple(data[k])) for k in ("f", "alpha", "g", "beta")))
            S = twisted_union(W)
    except (KeyError, TypeError) as exc:
        raise InputError(f"system JSON is missing or malforms {exc}") from None
    _emit(_dump(S.to_json()), args.output)
    return EXIT_OK


def _catalog(order: int, braces_file: str | None):
    if braces_file:
        return ingest_braces(braces_file)
    if order >= 8:
        try:
            return packaged_catalog(order)
        except ResourceError:
            raise ResourceError(f"order {order} needs a brace file: pass --braces FILE "
                                f"(see scripts/make_order8_braces.py)") from None
    return builtin_catalog(order)


def cmd_braces_list(args) -> int:
    entries = _catalog(args.order, args.braces)
    if args.json:
        _emit(_dump(export_braces(entries)), args.output)
    else:
        lines = [f"{e.order} {e.type_index:3d} {e.additive:>9} {e.multiplicative:>9}"
                 f"{'  trivial' if e.brace.is_trivial() else ''}"
                 f"{'  almost-trivial' if e.brace.is_almost_trivial() else ''}" for e in entries]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_braces_ingest(args) -> int:
    entries = ingest_braces(args.file)
    print(f"{len(entries)} entries validated", file=sys.stderr)
    if args.output:
        _emit(_dump(export_braces(entries)), args.output)
    return EXIT_OK


def _census(orders, braces_file, args) -> CensusReport:
    rows = []
    t0 = time.perf_counter()
    for order in orders:
        entries = _catalog(order, braces_file if order >= 8 or braces_file else None)
        rows += reflection_census(entries, convention=args.convention, workers=args.workers,
                                  cap=max(args.cap, order), force=True)
    mode = "analytic+enumerated" if any(r.mode == "analytic" for r in rows) else "enumerated"
    return CensusReport(rows, mode, {"orders": list(orders), "convention": args.convention,
                                     "wall_seconds": round(time.perf_counter() - t0, 3)})


def cmd_braces_census(args) -> int:
    order = args.order
    if args.braces and order is None:
        order = ingest_braces(args.braces)[0].order
    if order is None:
        raise InputError("give --order or --braces")
    report = _census([order], args.braces, args)
    _emit(report.render(args.format), args.output)
    return EXIT_OK


def _orders(spec: str) -> list[int]:
    out = []
    for part in spec.split(","):
        if "-" in part:
            a, b = part.split("-")
            out += range(int(a), int(b) + 1)
        elif part:
            out.append(int(part))
    return out


def cmd_tables(args) -> int:
    try:
        orders = _orders(args.orders)
    except ValueError:
        raise InputError(f"bad --orders {args.orders!r}") from None
    report = _census(orders, args.braces, args)
    _emit(report.render(args.format), args.output)
    if args.diff:
        if args.diff == "builtin":
            golden = read_table_csv(golden_path("small_orders")) + read_table_csv(golden_path("order8"))
        else:
            try:
                golden = read_table_csv(args.diff)
            except (OSError, ValueError) as exc:
                raise InputError(f"cannot read golden file: {exc}") from None
        d = diff_against_golden(report.records(), golden, orders)
        print(d.summary(), file=sys.stderr)
        return EXIT_OK if d.ok else EXIT_FAIL
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .corpus import random_solution

    rng = random.Random(args.seed)
    bad = 0
    for i in range(args.count):
        S = random_solution(rng, rng.randint(1, args.max_n))
        fast = set(enumerate_reflections(S, workers=1).maps)
        slow = set(brute_force_reflections(S).maps)
        if fast != slow:
            bad += 1
            print(f"mismatch on instance {i}: {_dump(S.to_json())}", file=sys.stderr)
    print(f"selftest seed={args.seed}: {args.count - bad}/{args.count} instances agree")
    return EXIT_OK if bad == 0 else EXIT_FAIL


# ---------------------------------------------------------------- parser

def _add_source(p, kappa: bool = False):
    p.add_argument("input", nargs="?", help="Solution or Shelf JSON file ('-' for stdin)")
    if kappa:
        p.add_argument("kappa", help="map in one-based string notation, e.g. 113")
        p.add_argument("--zero-based", action="store_true", help="read kappa as zero-based")
    p.add_argument("--family", choices=sorted(FAMILIES), help="use a built-in family instead of a file")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="family parameter (JSON values)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ybreflect", description="Reflections of finite Yang-Baxter solutions.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="validate a Solution or Shelf JSON file")
    p.add_argument("input")
    p.set_defaults(func=cmd_verify)

    refl = sub.add_parser("reflect", help="reflection tools").add_subparsers(dest="action", required=True)
    p = refl.add_parser("enum", help="enumerate all reflections")
    _add_source(p)
    p.add_argument("--display", choices=["one-based", "zero-based"], default="one-based")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--cap", type=int, default=ENUM_CAP)
    p.add_argument("--force", action="store_true", help="ignore the carrier-size cap")
    p.add_argument("--bijective", action="store_true", help="only bijective reflections")
    p.add_argument("--brute", action="store_true", help="use the n^n scan instead of backtracking")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reflect_enum)
    p = refl.add_parser("check", help="test one map")
    _add_source(p, kappa=True)
    p.set_defaults(func=cmd_reflect_check)
    p = refl.add_parser("classify", help="flags of one map")
    _add_source(p, kappa=True)
    p.set_defaults(func=cmd_reflect_classify)

    shelf = sub.add_parser("shelf", help="shelf tools").add_subparsers(dest="action", required=True)
    p = shelf.add_parser("derive", help="derived shelf of a solution")
    _add_source(p)
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_shelf_derive)
    p = shelf.add_parser("lmlt", help="multiplication group of a rack")
    _add_source(p)
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--elements", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_shelf_lmlt)
    p = shelf.add_parser("end", help="endomorphisms (or automorphisms) of a shelf")
    _add_source(p)
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--aut", action="store_true")
    p.add_argument("--display", choices=["one-based", "zero-based"], default="one-based")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_shelf_end)

    cons = sub.add_parser("construct", help="build solutions").add_subparsers(dest="kind", required=True)
    for kind in ("matched", "semilattice", "twisted"):
        p = cons.add_parser(kind)
        p.add_argument("system", help="system JSON file")
        p.add_argument("-o", "--output")
        p.set_defaults(func=cmd_construct)
    p = cons.add_parser("rkappa")
    p.add_argument("--shelf", required=True, help="left rack JSON")
    p.add_argument("--kappa", required=True)
    p.add_argument("--zero-based", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)
    p = cons.add_parser("family")
    p.add_argument("name", choices=sorted(FAMILIES))
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    br = sub.add_parser("braces", help="skew brace catalogs").add_subparsers(dest="action", required=True)
    p = br.add_parser("list")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--braces", help="brace JSON file")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_braces_list)
    p = br.add_parser("ingest")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="re-export validated entries")
    p.set_defaults(func=cmd_braces_ingest)
    p = br.add_parser("census")
    p.add_argument("--order", type=int)
    p.add_argument("--braces")
    _census_opts(p)
    p.set_defaults(func=cmd_braces_census)

    p = sub.add_parser("tables", help="reproduce the census tables")
    p.add_argument("--orders", default="2-7", help="e.g. 2-7 or 8 or 2,4,6")
    p.add_argument("--braces", help="brace file for order 8 (default: packaged file)")
    p.add_argument("--diff", metavar="GOLDEN", help="golden CSV to compare against, or 'builtin'")
    _census_opts(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("selftest", help="random backtracking-vs-brute-force comparison")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-n", type=int, default=4)
    p.set_defaults(func=cmd_selftest)
    return ap


def _census_opts(p):
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.add_argument("--convention", choices=CONVENTIONS, default="minus_first")
    p.add_argument("--workers", type=int, default=default_workers())
    p.add_argument("--cap", type=int, default=ENUM_CAP)
    p.add_argument("-o", "--output")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, StructureError, IngestionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
