"""Command-line front end.

Subcommands: analyze, convert, verify, simulate, search, compare.
Exit codes: 0 success/PASS, 1 validation failure or FAIL, 2 usage,
3 infeasible-budget refusal. Positions on the command line are 1-based
(the library itself is 0-based).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Dict, List, Optional

from . import catalog as cat
from . import engine
from .breeding import convert_pure
from .codes import CodeConstructionError, FeasibilityError
from .search import SearchQuery, search_codes

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def _load_code(ref: str) -> cat.CatalogEntry:
    """Resolve a --code argument: a builtin entry name or a catalog file path."""
    builtin = cat.builtin_catalog()
    try:
        return cat.find_entry(builtin, ref)
    except cat.CatalogError:
        pass
    if not os.path.exists(ref):
        names = ", ".join(e.name for e in builtin)
        raise cat.CatalogError(f"{ref!r} is neither a builtin code ({names}) nor a file")
    entries = cat.load_catalog_file(ref)
    if len(entries) != 1:
        names = ", ".join(e.name for e in entries)
        raise cat.CatalogError(
            f"{ref} holds {len(entries)} entries ({names}); point --code at a single-entry file"
        )
    return entries[0]


def _parse_puncture(text: Optional[str], n: int) -> frozenset:
    if not text:
        return frozenset()
    positions = set()
    for tok in text.split(","):
        i = int(tok)
        if i < 1 or i > n:
            raise ValueError(f"puncture position {i} out of range 1..{n}")
        positions.add(i - 1)
    return frozenset(positions)


def _emit(records: List[Dict], fmt: str, out) -> None:
    if fmt == "jsonl":
        for rec in records:
            out.write(json.dumps(rec) + "\n")
    elif fmt == "tsv":
        if records:
            keys = list(records[0].keys())
            out.write("\t".join(keys) + "\n")
            for rec in records:
                out.write("\t".join(str(rec[k]) for k in keys) + "\n")
    else:
        for rec in records:
            out.write(" ".join(f"{k}={v}" for k, v in rec.items()) + "\n")


def cmd_analyze(args, out) -> int:
    entry = _load_code(args.code)
    code = entry.code
    rec = {
        "name": entry.name,
        "n": code.n,
        "k": code.k,
        "d": code.distance,
        "pure": "yes" if code.is_pure else "no",
        "dual_dim": code.dual.dim,
        "generators": ",".join(entry.generator_strings),
    }
    _emit([rec], args.format, out)
    return EXIT_OK


def cmd_convert(args, out) -> int:
    entry = _load_code(args.code)
    spec = convert_pure(entry.code, _parse_puncture(args.puncture, entry.code.n))
    params = spec.params
    rec = {
        "name": entry.name,
        "noisy_pairs": params.n,
        "preshared": params.c,
        "gross": params.gross_k,
        "net": params.net_yield,
        "d": params.d,
        "ebit_positions": ",".join(str(i + 1) for i in sorted(spec.ebit_positions)),
    }
    _emit([rec], args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    entry = _load_code(args.code)
    spec = convert_pure(entry.code, _parse_puncture(args.puncture, entry.code.n))
    cert = engine.verify_guarantee(spec, max_patterns=args.budget)
    rec = {
        "name": entry.name,
        "preshared": spec.params.c,
        "d": cert.distance,
        "patterns": cert.patterns,
        "result": "PASS" if cert.passed else "FAIL",
    }
    if cert.counterexample is not None:
        from . import symplectic as sp

        rec["counterexample"] = sp.to_string(cert.counterexample.error)
        rec["counterexample_erased"] = ",".join(
            str(i + 1) for i in sorted(cert.counterexample.erased)
        )
    _emit([rec], args.format, out)
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_simulate(args, out) -> int:
    entry = _load_code(args.code)
    spec = convert_pure(entry.code, _parse_puncture(args.puncture, entry.code.n))
    postselect = engine.PostSelect.parse(args.postselect)
    rates = [float(r) for r in args.rates.split(",")]
    records = []
    for rate in rates:
        channel = engine.Channel(entry.code.p, rate)
        report = engine.simulate(
            spec, channel, args.trials, seed=args.seed, postselect=postselect, workers=args.workers
        )
        records.append(
            {
                "name": entry.name,
                "rate": f"{rate:.6f}",
                "trials": report.trials,
                "discards": report.discards,
                "fidelity": f"{report.fidelity_estimate:.6f}",
                "ci95": f"{report.ci_halfwidth:.6f}",
                "gross": report.gross_k,
                "net": report.net_yield,
                "seed": report.seed,
            }
        )
    _emit(records, args.format, out)
    return EXIT_OK


def cmd_search(args, out) -> int:
    query = SearchQuery(
        p=args.p, n=args.n, k=args.k, d_min=args.dmin, purity_required=args.pure, budget=args.budget
    )
    result = search_codes(query)
    verdict = {
        "exists": "EXISTS",
        "not_exists": "NOT EXISTS (exhaustive)",
        "inconclusive": "INCONCLUSIVE (budget exhausted)",
    }[result.verdict]
    rec = {
        "p": args.p,
        "n": args.n,
        "k": args.k,
        "dmin": args.dmin,
        "verdict": verdict,
        "nodes": result.nodes,
    }
    if result.witness:
        rec["witness"] = ",".join(result.witness)
    _emit([rec], args.format, out)
    return EXIT_OK


def cmd_compare(args, out) -> int:
    entries = cat.load_catalog_file(args.catalog) if args.catalog else cat.builtin_catalog()
    rows = cat.compare_report(entries)
    records = [
        {
            "kind": r.kind,
            "name": r.name,
            "noisy_pairs": r.noisy_pairs,
            "preshared": r.preshared,
            "gross": r.gross,
            "net": r.net,
            "d": r.d,
            "dominant": "yes" if r.dominant else "no",
        }
        for r in rows
    ]
    _emit(records, args.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="breedsim",
        description="Construct, verify, and simulate breeding entanglement-distillation protocols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp_):
        sp_.add_argument("--format", choices=["human", "tsv", "jsonl"], default="human")

    p = sub.add_parser("analyze", help="recompute a code's parameters")
    p.add_argument("--code", required=True)
    add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("convert", help="build a breeding protocol by puncturing a pure code")
    p.add_argument("--code", required=True)
    p.add_argument("--puncture", default="", help="comma-separated 1-based positions")
    add_common(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", help="exhaustively verify the 2t+e<d guarantee")
    p.add_argument("--code", required=True)
    p.add_argument("--puncture", default="")
    p.add_argument("--budget", type=int, default=1_000_000)
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo fidelity over a depolarizing rate grid")
    p.add_argument("--code", required=True)
    p.add_argument("--puncture", default="")
    p.add_argument("--rates", required=True, help="comma-separated depolarizing rates")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--postselect", default="none", help="none | nonzero | weight:<t>")
    p.add_argument("--workers", type=int, default=1)
    add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("search", help="exhaustive code-existence search")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dmin", type=int, required=True)
    p.add_argument("--pure", action="store_true", help="require purity of the witness")
    p.add_argument("--budget", type=int, default=10_000_000)
    add_common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("compare", help="hashing-vs-breeding yield table")
    p.add_argument("--catalog", default=None)
    add_common(p)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except FeasibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (cat.CatalogError, CodeConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
