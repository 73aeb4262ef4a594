"""Command-line surface: tables, verification suites, machine reports.

Every subcommand emits ReportRow records — TSV by default, JSON with
--format json — with columns group, statistic, n, exact, float,
provenance, verdict, paper_ref. Exact rationals are rendered "p/q" so
nothing is lost in serialization. Exit codes: 0 success, 1 a verification
verdict failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import classical, weylstats
from .classical import ActionSpec, GroupSpec
from .series import default_order

COLUMNS = ("group", "statistic", "n", "exact", "float", "provenance", "verdict", "paper_ref")


def _fmt_exact(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    return str(v)


def _fmt_float(v) -> str:
    if v is None:
        return ""
    return f"{float(v):.12g}"


def row(group="", statistic="", n="", exact=None, value=None, provenance="", verdict="n/a", paper_ref=""):
    if value is None and exact is not None:
        value = exact
    return {
        "group": group,
        "statistic": statistic,
        "n": str(n),
        "exact": _fmt_exact(exact),
        "float": _fmt_float(value),
        "provenance": provenance,
        "verdict": verdict,
        "paper_ref": paper_ref,
    }


def _emit(rows, fmt, out=None):
    if out is None:
        out = sys.stdout
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    else:
        out.write("\t".join(COLUMNS) + "\n")
        for r in rows:
            out.write("\t".join(r[c] for c in COLUMNS) + "\n")


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _parse_int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",")]


def _pool_map(fn, items, jobs):
    """Compute table cells, results in input order regardless of jobs."""
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# -- subcommands ------------------------------------------------------------


def cmd_rs(args) -> tuple[list[dict], int]:
    g = GroupSpec(args.family, args.q)
    order = args.order or default_order()
    label = f"{args.family}(q={args.q})"
    rows = []
    ns = _parse_range(args.n) if args.n else []
    if ns:
        series = classical.rs_series(g, args.kind, max(max(ns), order))
        cells = _pool_map(lambda n: series.coefficient(n), ns, args.jobs)
        for n, c in zip(ns, cells):
            rows.append(row(label, args.kind, n, exact=c, provenance="series"))
    if args.limit:
        value, bound = classical.rs_limit(g, args.kind, depth=order)
        rows.append(row(label, f"{args.kind}-limit", "", value=value, provenance="limit"))
        rows.append(row(label, f"{args.kind}-limit-bound", "", value=bound, provenance="limit"))
    if not rows:
        raise SystemExit2("rs needs --n and/or --limit")
    return rows, 0


def cmd_weyl(args) -> tuple[list[dict], int]:
    rows = []
    ns = _parse_range(args.n)
    if args.coset:
        cells = _pool_map(
            lambda n: weylstats.an_coset_derangements(n, args.coset), ns, args.jobs
        )
        for n, v in zip(ns, cells):
            rows.append(
                row(f"a{'n' if args.coset == 'even' else 'n-coset'}", "coset-derangement",
                    n, exact=v, provenance="series")
            )
        return rows, 0
    constraint = weylstats.WeylConstraint(
        group=args.group,
        fix_k=args.fix_kset,
        fix_mode=args.mode,
        max_pos_fixed=args.max_pos_fixed,
        max_neg_fixed=args.max_neg_fixed,
        max_pos_two=args.max_pos_two,
        max_neg_two=args.max_neg_two,
        neg_parity=args.neg_parity,
        all_even=args.all_even,
        all_positive=args.all_positive,
    )
    cells = _pool_map(lambda n: weylstats.proportion(n, constraint), ns, args.jobs)
    stat = "proportion" if args.fix_kset is None else f"fix-{args.fix_kset}set"
    for n, v in zip(ns, cells):
        rows.append(row(args.group, stat, n, exact=v, provenance="series"))
    return rows, 0


def cmd_bound(args) -> tuple[list[dict], int]:
    g = GroupSpec(args.family, args.q)
    label = f"{args.family}(q={args.q})"
    rows = []
    if args.n is not None:
        for n in _parse_range(args.n):
            rep = classical.derangement_lower_bound(
                g, args.action, k=args.k, mode="finite-n", n=n
            )
            rows.append(
                row(label, f"derangement-lb-{args.action}-k{args.k}", n,
                    exact=rep["value"], provenance="series")
            )
    if args.limit:
        rep = classical.derangement_lower_bound(g, args.action, k=args.k, mode="limit")
        rows.append(
            row(label, f"derangement-lb-{args.action}-k{args.k}", "",
                value=rep["value"], provenance="limit", paper_ref=rep.get("route", ""))
        )
    if not rows:
        raise SystemExit2("bound needs --n and/or --limit")
    return rows, 0


def _identity_rows(qs, order, jobs):
    jobs_list = [(name, q) for name in classical.IDENTITIES for q in qs]

    def cell(item):
        name, q = item
        return classical.verify_identity(name, q, order)

    rows = []
    for rep in _pool_map(cell, jobs_list, jobs):
        rows.append(
            row("identity", rep["name"], rep["q"], exact=rep["max_deviation"],
                provenance="series", verdict="pass" if rep["ok"] else "fail",
                paper_ref=rep["name"])
        )
    return rows


def _scenario_rows_cli():
    rows = []
    for rep in classical.all_scenarios():
        rows.append(
            row("scenario", rep["name"], "", value=rep["value"], provenance="scenario",
                verdict="pass" if rep["ok"] else "fail", paper_ref=rep["name"])
        )
    return rows


def _oracle_rows():
    from .oracle.crosscheck import equivalence_rows

    rows = []
    for rep in equivalence_rows():
        label = f"{rep['family']}({rep['n']},{rep['q']})"
        rows.append(
            row(label, rep["stat"], rep["n"], exact=rep["oracle"], provenance="oracle",
                verdict="pass" if rep["ok"] else "fail")
        )
    return rows


def cmd_verify(args) -> tuple[list[dict], int]:
    rows = []
    if args.suite in ("identities", "all"):
        qs = _parse_int_list(args.q) if args.q else [2, 3, 4, 5, 8, 9]
        rows += _identity_rows(qs, args.order or 50, args.jobs)
    if args.suite in ("bounds", "all"):
        rows += _scenario_rows_cli()
    if args.suite in ("oracle", "all"):
        rows += _oracle_rows()
    code = 0 if all(r["verdict"] != "fail" for r in rows) else 1
    return rows, code


def cmd_oracle(args) -> tuple[list[dict], int]:
    from .oracle import (
        GroupKey,
        SubspaceKind,
        class_count_rs,
        derangement_proportion,
        eigenvalue_free_proportion,
        mean_D_bruteforce,
        rs_and_fixing_proportion,
        rs_proportion,
        strongly_rs_proportion,
    )

    key = GroupKey(args.family, args.n, args.q)
    label = f"{args.family}({args.n},{args.q})"
    skind = SubspaceKind(args.k, args.kind, args.space_type)
    stats = {
        "rs": lambda: rs_proportion(key),
        "strongly-rs": lambda: strongly_rs_proportion(key),
        "eigenvalue-free": lambda: eigenvalue_free_proportion(key),
        "mean-d": lambda: mean_D_bruteforce(key),
        "classes": lambda: class_count_rs(key),
        "derangement": lambda: derangement_proportion(key, skind),
        "rs-fixing": lambda: rs_and_fixing_proportion(key, skind),
    }
    value = stats[args.stat]()
    n_col = args.k if args.stat in ("derangement", "rs-fixing") else args.n
    return [row(label, args.stat, n_col, exact=value, provenance="oracle")], 0


def cmd_constants(args) -> tuple[list[dict], int]:
    names = [args.name] if args.name else list(weylstats.constant_names())
    rows = []
    for name in names:
        rows.append(
            row("constant", name, "", value=weylstats.named_constant(name),
                provenance="limit", paper_ref=name)
        )
    return rows, 0


# -- argument parsing -------------------------------------------------------


class SystemExit2(SystemExit):
    def __init__(self, message):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(2)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="derange",
        description="Exact conjugacy-class statistics of finite classical groups.",
    )
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--jobs", type=int, default=1, help="worker pool size (output order is fixed)")
    sub = p.add_subparsers(dest="command", required=True)

    rs = sub.add_parser("rs", help="regular semisimple series and limits")
    rs.add_argument("--family", required=True)
    rs.add_argument("--q", type=int, required=True)
    rs.add_argument("--n", help="rank or range a..b")
    rs.add_argument("--limit", action="store_true")
    rs.add_argument("--kind", default="rs",
                    choices=("rs", "strongly-rs", "eigenvalue-free"))
    rs.add_argument("--order", type=int)
    rs.set_defaults(func=cmd_rs)

    weyl = sub.add_parser("weyl", help="Weyl group cycle-type proportions")
    weyl.add_argument("--group", default="sn", choices=("sn", "bn", "dn", "dn-"))
    weyl.add_argument("--n", required=True, help="degree or range a..b")
    weyl.add_argument("--fix-kset", type=int, dest="fix_kset")
    weyl.add_argument("--mode", default="any",
                      choices=("any", "positive", "even", "neg-even", "neg-odd"))
    weyl.add_argument("--max-pos-fixed", type=int)
    weyl.add_argument("--max-neg-fixed", type=int)
    weyl.add_argument("--max-pos-two", type=int)
    weyl.add_argument("--max-neg-two", type=int)
    weyl.add_argument("--neg-parity", type=int, choices=(0, 1))
    weyl.add_argument("--all-even", action="store_true")
    weyl.add_argument("--all-positive", action="store_true")
    weyl.add_argument("--coset", choices=("even", "odd"),
                      help="alternating-coset derangements instead of a constraint")
    weyl.set_defaults(func=cmd_weyl)

    bound = sub.add_parser("bound", help="derangement lower bounds")
    bound.add_argument("--family", required=True)
    bound.add_argument("--q", type=int, required=True)
    bound.add_argument("--action", required=True,
                       choices=("k-space", "nondegenerate", "totally-singular"))
    bound.add_argument("--k", type=int, default=2)
    bound.add_argument("--n", help="rank or range a..b")
    bound.add_argument("--limit", action="store_true")
    bound.set_defaults(func=cmd_bound)

    verify = sub.add_parser("verify", help="identity / bound / oracle suites")
    verify.add_argument("--suite", required=True,
                        choices=("identities", "bounds", "oracle", "all"))
    verify.add_argument("--q", help="comma-separated q list (identities)")
    verify.add_argument("--order", type=int)
    verify.set_defaults(func=cmd_verify)

    oracle = sub.add_parser("oracle", help="brute-force statistics on small groups")
    oracle.add_argument("--family", required=True)
    oracle.add_argument("--n", type=int, required=True, help="matrix dimension")
    oracle.add_argument("--q", type=int, required=True)
    oracle.add_argument("--stat", default="rs",
                        choices=("rs", "strongly-rs", "eigenvalue-free", "mean-d",
                                 "classes", "derangement", "rs-fixing"))
    oracle.add_argument("--k", type=int, default=1)
    oracle.add_argument("--kind", default="any",
                        choices=("any", "nondegenerate", "totally-singular"))
    oracle.add_argument("--space-type", choices=("+", "-"))
    oracle.set_defaults(func=cmd_oracle)

    constants = sub.add_parser("constants", help="named asymptotic constants")
    constants.add_argument("--name")
    constants.set_defaults(func=cmd_constants)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, code = args.func(args)
    except SystemExit2:
        return 2
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(rows, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
