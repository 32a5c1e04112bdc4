"""Deterministic command-line front end.

Every subcommand writes JSON or aligned text to standard out; for fixed
inputs the bytes are identical across runs.  The EXCESS_CACHE_DIR
environment variable, when set, caches contribution tables as JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import agring, constants, products, strata, verify
from .excess import all_contributions, ExcessError
from .trees import ExtremalTree, TreeError, enumerate_trees


def _cache_dir() -> str | None:
    return os.environ.get("EXCESS_CACHE_DIR") or None


def _print(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj) -> None:
    _print(json.dumps(obj, indent=1))


def cmd_trees(args) -> int:
    max_edges = args.max_edges if args.max_edges is not None else args.genus - 1
    ts = enumerate_trees(args.genus, max_edges)
    if args.format == "json":
        _emit_json([t.to_json() for t in ts])
    else:
        for t in ts:
            print("%-28s edges=%d aut=%d" % (t.code, t.n_edges, t.aut_order))
        print("total: %d" % len(ts))
    return 0


def cmd_contribution(args) -> int:
    g = args.genus
    methods = ["recursion", "pixton"] if args.method == "both" else [args.method]
    tables = {
        method: all_contributions(g, method=method, cache_dir=_cache_dir(),
                                  jobs=args.jobs)
        for method in methods
    }
    if args.tree is None:
        # the full table: tree code -> contribution in canonical text form
        table = tables[methods[0]]
        if args.format == "json":
            _emit_json({code: str(table[code].poly) for code in sorted(table)})
        else:
            for code in sorted(table):
                print("%-28s %s" % (code, table[code].poly))
        return 0
    tree = ExtremalTree.from_code(args.tree)
    values = {}
    for method in methods:
        if tree.code not in tables[method]:
            print("tree %s does not contribute for genus %d" % (tree.code, g),
                  file=sys.stderr)
            return 1
        values[method] = str(tables[method][tree.code].poly)
    match = len(set(values.values())) == 1
    if args.format == "json":
        out = {"tree": tree.code, "genus": g, "contribution": values}
        if args.method == "both":
            out["match"] = match
        _emit_json(out)
    else:
        for method in methods:
            print("%s: %s" % (method, values[method]))
        if args.method == "both":
            print("match=%s" % str(match).lower())
    return 0 if match else 1


def cmd_pullback(args) -> int:
    expr = strata.assemble_pullback(
        args.genus, method=args.method, cache_dir=_cache_dir(), jobs=args.jobs
    )
    fmt = {"json": "json", "admcycles": "admcycles-text"}.get(args.format)
    if fmt is None:
        data = strata.serialize(expr, "admcycles-text")
    else:
        data = strata.serialize(expr, fmt)
    sys.stdout.write(data.decode("utf-8"))
    return 0


def cmd_ring(args) -> int:
    g = args.genus
    D = agring.socle_degree(g)
    dims = [agring.graded_dimension(g, d) for d in range(D + 1)]
    ranks = [agring.matrix_rank(agring.socle_pairing(g, d)) if dims[d] else 0
             for d in range(D + 1)]
    perfect = all(agring.pairing_is_perfect(g, d) for d in range(D + 1))
    socle = "*".join("lam%d" % i for i in range(1, g)) or "1"
    if args.format == "json":
        _emit_json(
            {
                "genus": g,
                "dimension": sum(dims),
                "graded_dimensions": dims,
                "socle_degree": D,
                "socle_generator": socle,
                "pairing_ranks": ranks,
                "gorenstein": perfect,
            }
        )
    else:
        print("genus %d: dim %d = 2^%d, socle degree %d, generator %s"
              % (g, sum(dims), g - 1, D, socle))
        print("degree:    " + " ".join("%4d" % d for d in range(D + 1)))
        print("dim:       " + " ".join("%4d" % d for d in dims))
        print("pair rank: " + " ".join("%4d" % r for r in ranks))
        print("gorenstein: %s" % str(perfect).lower())
    return 0


def cmd_constants(args) -> int:
    g = args.genus
    coeff = constants.product_coefficient(g)
    hc = constants.hodge_constants(g)
    variant = constants.coefficient_discrepancy(g)
    if args.format == "json":
        out = {
            "genus": g,
            "coefficient": str(coeff),
            "tail_integral": str(hc.tail_integral),
            "triple_lambda": str(hc.triple_lambda) if hc.triple_lambda is not None else None,
        }
        if variant is not None:
            out["discrepancy"] = {
                "formula_value": str(coeff),
                "printed_variant": str(variant),
                "note": "digit transposition suspected; the formula value is used",
            }
        _emit_json(out)
    else:
        print(str(coeff))
        print("tail integral: %s" % hc.tail_integral)
        if hc.triple_lambda is not None:
            print("triple lambda integral: %s" % hc.triple_lambda)
        if variant is not None:
            print(
                "warning: a printed value %s disagrees with the formula value %s; "
                "the formula value is used" % (variant, coeff)
            )
    return 0


def _partitions_of(n: int):
    def rec(n, mx):
        if n == 0:
            yield ()
            return
        for p in range(min(n, mx), 0, -1):
            for rest in rec(n - p, p):
                yield (p,) + rest

    return [p for p in rec(n, n)]


def cmd_zeroint(args) -> int:
    g = args.genus
    parts = [p for p in _partitions_of(g) if len(p) >= 2]
    report = []
    all_ok = True
    for p in parts:
        for q in parts:
            if p > q:
                continue
            P, Q = products.Partition.make(p), products.Partition.make(q)
            ok = products.zeroint_check(P, Q)
            all_ok = all_ok and ok
            comps = products.extremal_refinements(P, Q)
            report.append(
                {
                    "first": list(p),
                    "second": list(q),
                    "vanishes": ok,
                    "components": [
                        {
                            "sigma": list(comp.sigma.parts),
                            "excess": [list(ab) for ab in comp.excess_bundle],
                        }
                        for comp in comps
                    ],
                }
            )
    if args.format == "json":
        _emit_json({"genus": g, "all_vanish": all_ok, "pairs": report})
    else:
        for entry in report:
            comps = "; ".join(
                "sigma=%s excess=%s" % (tuple(c["sigma"]), c["excess"])
                for c in entry["components"]
            )
            print(
                "%s x %s -> vanishes=%s  [%s]"
                % (tuple(entry["first"]), tuple(entry["second"]),
                   str(entry["vanishes"]).lower(), comps)
            )
        print("all pairs vanish: %s" % str(all_ok).lower())
    return 0 if all_ok else 1


def cmd_verify(args) -> int:
    results = verify.run_checks()
    failures = 0
    for slug, ok in results:
        print("%-36s %s" % (slug, "PASS" if ok else "FAIL"))
        failures += 0 if ok else 1
    print("%d/%d checks passed" % (len(results) - failures, len(results)))
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torex",
        description="Excess-intersection calculus for pullbacks of "
        "product loci along the Torelli map",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, genus=True, fmt=("json", "text"), jobs=False):
        if genus:
            p.add_argument("--genus", type=int, required=True)
        if fmt:
            p.add_argument("--format", choices=fmt, default=fmt[0])
        if jobs:
            p.add_argument("--jobs", type=int, default=1,
                           help="bound on parallel workers (output unchanged)")

    p = sub.add_parser("trees", help="enumerate contributing trees")
    add_common(p)
    p.add_argument("--max-edges", type=int, default=None)
    p.set_defaults(fn=cmd_trees)

    p = sub.add_parser("contribution", help="excess class of one tree")
    add_common(p, jobs=True)
    p.add_argument("--tree", default=None,
                   help="canonical tree code (omit for the full table)")
    p.add_argument("--method", choices=("recursion", "pixton", "both"),
                   default="recursion")
    p.set_defaults(fn=cmd_contribution)

    p = sub.add_parser("pullback", help="full decorated-strata expression")
    add_common(p, fmt=("json", "text", "admcycles"), jobs=True)
    p.add_argument("--method", choices=("recursion", "pixton"), default="recursion")
    p.set_defaults(fn=cmd_pullback)

    p = sub.add_parser("ring", help="lambda-ring dimensions and pairings")
    add_common(p)
    p.set_defaults(fn=cmd_ring)

    p = sub.add_parser("constants", help="projection coefficient and integrals")
    add_common(p, fmt=("text", "json"))
    p.set_defaults(fn=cmd_constants)

    p = sub.add_parser("zeroint", help="product-locus intersection vanishing")
    add_common(p)
    p.set_defaults(fn=cmd_zeroint)

    p = sub.add_parser("verify-paper", help="replay the bundled reference checks")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (TreeError, ExcessError, products.ProductsError,
            agring.AgRingError, strata.StrataError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
