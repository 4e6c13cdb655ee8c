"""Command-line front end: enumeration, invariant reports, Green's relation
queries, rank verification, and a one-shot verification suite.

Exit codes: 0 success (all rows PASS where applicable), 1 verification
failure, 2 usage error, 3 size guard exceeded (raise --max-n to override).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .families import (
    Family,
    FamilySpec,
    count_idempotents,
    count_lstar_classes,
    count_rstar_classes,
    enumerate_family,
    formula_idempotents,
    formula_rstar_classes,
    schroeder_small,
)
from .green import (
    ZERO,
    abundance_report,
    build_table,
    green,
    starred_characterized,
    starred_definitional,
)
from .rank import (
    closure,
    formula_rank_ideal,
    formula_rank_quotient,
    rank_oracle,
    ss_prime_minimal_generators,
    verify_ss1_witnesses,
    verify_theorem_hq,
)
from .families import binom

ENUM_GUARD = 12
RANK_GUARD = 8
DEFINITIONAL_GUARD = 5

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _fail_guard(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_GUARD


# -- enumerate ----------------------------------------------------------


def cmd_enumerate(args) -> int:
    if args.n < 2:
        return _fail_usage("family enumeration needs n >= 2 (n=1 gives the empty family)")
    guard = args.max_n if args.max_n is not None else ENUM_GUARD
    if args.n > guard:
        return _fail_guard(f"enumeration too large at n={args.n}; raise --max-n")
    try:
        spec = FamilySpec(Family(args.family), args.n, args.p)
        elements = enumerate_family(spec)
    except ValueError as exc:
        return _fail_usage(str(exc))
    if args.format == "text":
        for a in elements:
            print(a.encode())
    elif args.format == "json":
        print(json.dumps({"family": args.family, "n": args.n, "p": args.p,
                          "elements": [a.encode() for a in elements]}))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["element", "height"])
        for a in elements:
            writer.writerow([a.encode(), a.height()])
    return EXIT_OK


# -- invariants ---------------------------------------------------------


def _worker_count() -> int:
    """Worker cap from SCHROEDER_THREADS (default 1; malformed values ignored)."""
    try:
        return max(1, int(os.environ.get("SCHROEDER_THREADS", "1")))
    except ValueError:
        return 1


def _invariant_rows(n: int):
    specs = [
        ("|SS'|", schroeder_small(n),
         lambda: len(enumerate_family(FamilySpec(Family.SS_PRIME, n)))),
        ("idempotents", formula_idempotents(n), lambda: count_idempotents(n)),
    ]
    specs += [
        (f"Rstar-classes p={p}", formula_rstar_classes(n, p),
         lambda p=p: count_rstar_classes(n, p))
        for p in range(n)
    ]
    specs += [
        (f"Lstar-classes p={p}", binom(n, p),
         lambda p=p: count_lstar_classes(n, p))
        for p in range(1, n)
    ]
    specs.append(
        ("class-count identity", formula_idempotents(n),
         lambda: sum(count_rstar_classes(n, p) for p in range(n)))
    )

    def run(spec):
        name, formula_value, oracle = spec
        t0 = time.perf_counter()
        oracle_value = oracle()
        return {
            "name": name,
            "formula_value": formula_value,
            "oracle_value": oracle_value,
            "status": "PASS" if formula_value == oracle_value else "FAIL",
            "runtime_ms": round((time.perf_counter() - t0) * 1000, 3),
        }

    workers = _worker_count()
    if workers == 1:
        return [run(s) for s in specs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, specs))  # ordered assembly


def _emit_rows(rows, n: int, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({"n": n, "rows": rows}))
    elif fmt == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["name", "formula_value", "oracle_value", "status", "runtime_ms"])
        for r in rows:
            writer.writerow([r["name"], r["formula_value"], r["oracle_value"], r["status"], r["runtime_ms"]])
    else:
        width = max(len(r["name"]) for r in rows)
        for r in rows:
            print(f"{r['name']:<{width}}  formula={r['formula_value']}  oracle={r['oracle_value']}  {r['status']}")


def cmd_invariants(args) -> int:
    if args.n < 2:
        return _fail_usage("invariants need n >= 2")
    guard = args.max_n if args.max_n is not None else ENUM_GUARD
    if args.n > guard:
        return _fail_guard(f"n={args.n} exceeds the guard; raise --max-n")
    rows = _invariant_rows(args.n)
    _emit_rows(rows, args.n, args.format)
    return EXIT_OK if all(r["status"] == "PASS" for r in rows) else EXIT_FAIL


# -- green --------------------------------------------------------------


def _build_target(args):
    ss = enumerate_family(FamilySpec(Family.SS_PRIME, args.n))
    if args.target == "ss-prime":
        return build_table(ss, verify=False)
    if args.p is None:
        raise ValueError(f"target {args.target!r} needs --p")
    if args.target == "ideal":
        return build_table([a for a in ss if a.height() <= args.p], verify=False)
    if args.target == "quotient":
        return build_table(
            [a for a in ss if a.height() == args.p], collapse_below=args.p, verify=False
        )
    raise ValueError(f"unknown target {args.target!r}")


def cmd_green(args) -> int:
    classical = args.relation in ("L", "R", "H", "D", "J")
    if args.mode == "definitional" and args.relation not in ("Lstar", "Rstar"):
        return _fail_usage("definitional mode exists only for Lstar and Rstar")
    if args.mode == "definitional":
        guard = args.max_n if args.max_n is not None else DEFINITIONAL_GUARD
        if args.n > guard:
            return _fail_guard(
                f"definitional mode guarded at n={guard}; "
                "use --mode characterized or raise --max-n"
            )
    elif classical:
        guard = args.max_n if args.max_n is not None else RANK_GUARD
        if args.n > guard:
            return _fail_guard(
                f"classical relations need the full product table; guarded at "
                f"n={guard} (raise --max-n)"
            )
    try:
        table = _build_target(args)
    except ValueError as exc:
        return _fail_usage(str(exc))
    if classical:
        part = green(table, args.relation)
    elif args.mode == "definitional":
        part = starred_definitional(table, args.relation, max_size=10**9)
        agrees = part == starred_characterized(table, args.relation)
        print(f"agreement with characterized: {agrees}")
    else:
        part = starred_characterized(table, args.relation)
    print(f"classes: {part.num_classes()}" + (" (all singletons)" if part.is_identity() else ""))
    if args.verbose:
        print(part.to_json(table, args.relation))
    return EXIT_OK


# -- rank ---------------------------------------------------------------


def cmd_rank(args) -> int:
    guard = args.max_n if args.max_n is not None else RANK_GUARD
    if args.n > guard:
        return _fail_guard(f"rank computation guarded at n={guard}; raise --max-n")
    try:
        table = _build_target(args)
    except ValueError as exc:
        return _fail_usage(str(exc))
    result = rank_oracle(table)
    if args.target == "ss-prime":
        formula = 3 * args.n - 4
    elif args.target == "quotient":
        formula = formula_rank_quotient(args.n, args.p)
    elif args.p <= args.n - 2:
        formula = formula_rank_ideal(args.n, args.p)
    else:
        formula = 3 * args.n - 4  # K(n, n-1) is the whole semigroup
    status = (
        "UNCERTIFIED" if not result.certified
        else "PASS" if result.rank == formula
        else "FAIL"
    )
    payload = {
        "target": args.target,
        "n": args.n,
        "p": args.p,
        "rank": result.rank,
        "formula": formula,
        "certified": result.certified,
        "status": status,
        "generating_set": sorted(
            "0" if table.elements[i] is ZERO else table.elements[i].encode()
            for i in result.generating_set
        ),
        "notes": result.notes,
    }
    if args.format == "json":
        print(json.dumps(payload))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(list(payload))
        writer.writerow([json.dumps(v) if isinstance(v, list) else v for v in payload.values()])
    else:
        print(f"rank: {result.rank} (formula {formula}) {status}")
        if result.notes:
            print(f"notes: {result.notes}")
        print("generators:", " ".join(payload["generating_set"]))
    return EXIT_OK if status in ("PASS", "UNCERTIFIED") else EXIT_FAIL


# -- verify-all ---------------------------------------------------------


def _verify_rows(n_max: int, long: bool):
    rows = []

    def add(name: str, check) -> None:
        t0 = time.perf_counter()
        outcome = check() if callable(check) else check
        status = "SKIPPED" if outcome is None else ("PASS" if outcome else "FAIL")
        rows.append({"name": name, "status": status,
                     "runtime_ms": round((time.perf_counter() - t0) * 1000, 3)})

    for n in range(2, n_max + 1):
        ss = enumerate_family(FamilySpec(Family.SS_PRIME, n))
        add(f"order n={n}", len(ss) == schroeder_small(n))
        add(f"idempotents n={n}",
            lambda n=n: count_idempotents(n) == formula_idempotents(n))
        add(
            f"class counts n={n}",
            lambda n=n: all(
                count_rstar_classes(n, p) == formula_rstar_classes(n, p)
                for p in range(n)
            )
            and all(count_lstar_classes(n, p) == binom(n, p) for p in range(1, n)),
        )
        table = build_table(ss, verify=False)
        add(
            f"abundance n={n}",
            lambda table=table: (
                (rep := abundance_report(table)).right_abundant
                and rep.unique_idempotent_per_rstar
                and not rep.left_abundant
            ),
        )
        if n <= 6:
            add(
                f"green structure n={n}",
                lambda table=table: green(table, "R").is_identity()
                and green(table, "H") == green(table, "R")
                and green(table, "D") == green(table, "L") == green(table, "J"),
            )
            add(
                f"quotient ranks n={n}",
                lambda n=n, ss=ss: all(
                    rank_oracle(
                        build_table([a for a in ss if a.height() == p], collapse_below=p)
                    ).rank == formula_rank_quotient(n, p)
                    for p in range(1, n)
                ),
            )
            if n >= 3:
                add(
                    f"ideal ranks n={n}",
                    lambda n=n, ss=ss: all(
                        rank_oracle(
                            build_table([a for a in ss if a.height() <= p])
                        ).rank == formula_rank_ideal(n, p)
                        for p in range(1, n - 1)
                    ),
                )
            add(f"semigroup rank n={n}",
                lambda table=table, n=n: rank_oracle(table).rank == 3 * n - 4)
            add(f"idempotent+requisite generation n={n}",
                lambda n=n: verify_theorem_hq(n))
        else:
            add(f"green structure n={n}", None)
            add(f"quotient ranks n={n}", None)
            add(f"ideal ranks n={n}", None)
            add(f"semigroup rank n={n}", None)
        add(
            f"minimal generators n={n}",
            lambda n=n, ss=ss: (
                len(gens := ss_prime_minimal_generators(n)) == 3 * n - 4
                and closure(gens, universe=set(ss)) == set(ss)
            ),
        )
        if n <= 4 or (n == 5 and long):
            add(
                f"starred agreement n={n}",
                lambda table=table: all(
                    starred_definitional(table, w, max_size=10**9)
                    == starred_characterized(table, w)
                    for w in ("Lstar", "Rstar")
                ),
            )
        else:
            add(f"starred agreement n={n}", None)
        if n >= 4:
            add(f"generator witnesses n={n}", lambda n=n: verify_ss1_witnesses(n))
    return rows


def cmd_verify_all(args) -> int:
    if args.n_max < 2:
        return _fail_usage("need --n-max >= 2")
    if args.n_max > 8:
        return _fail_guard("verify-all guarded at n-max = 8")
    rows = _verify_rows(args.n_max, args.long)
    if args.format == "json":
        print(json.dumps({"n_max": args.n_max, "rows": rows}))
    else:
        width = max(len(r["name"]) for r in rows)
        for r in rows:
            print(f"{r['name']:<{width}}  {r['status']}")
    failed = [r for r in rows if r["status"] == "FAIL"]
    print(f"{sum(r['status'] == 'PASS' for r in rows)} passed, "
          f"{len(failed)} failed, {sum(r['status'] == 'SKIPPED' for r in rows)} skipped")
    return EXIT_FAIL if failed else EXIT_OK


# -- parser -------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schroeder",
        description="Construct and analyze isotone order-decreasing partial "
        "transformations whose domain avoids 1, their ideals and Rees quotients.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_p=True):
        p.add_argument("--n", type=int, required=True)
        if with_p:
            p.add_argument("--p", type=int, default=None)
        p.add_argument("--format", choices=["text", "json", "csv"], default="text")
        p.add_argument("--max-n", type=int, default=None,
                       help="override the size guard for this command")

    p_enum = sub.add_parser("enumerate", help="list a family in canonical order")
    p_enum.add_argument("--family", required=True,
                        choices=[f.value for f in Family])
    common(p_enum)
    p_enum.set_defaults(func=cmd_enumerate)

    p_inv = sub.add_parser("invariants", help="formula-vs-oracle count report")
    common(p_inv, with_p=False)
    p_inv.set_defaults(func=cmd_invariants)

    p_green = sub.add_parser("green", help="Green's or starred Green's classes")
    p_green.add_argument("--relation", required=True,
                         choices=["L", "R", "H", "D", "J", "Lstar", "Rstar", "Hstar", "Dstar"])
    p_green.add_argument("--mode", choices=["characterized", "definitional"],
                         default="characterized")
    p_green.add_argument("--target", choices=["ss-prime", "ideal", "quotient"],
                         default="ss-prime")
    p_green.add_argument("--verbose", action="store_true")
    common(p_green)
    p_green.set_defaults(func=cmd_green)

    p_rank = sub.add_parser("rank", help="certified rank vs closed form")
    p_rank.add_argument("--target", choices=["ss-prime", "ideal", "quotient"],
                        default="ss-prime")
    common(p_rank)
    p_rank.set_defaults(func=cmd_rank)

    p_all = sub.add_parser("verify-all", help="run the whole verification matrix")
    p_all.add_argument("--n-max", type=int, required=True)
    p_all.add_argument("--long", action="store_true")
    p_all.add_argument("--format", choices=["text", "json"], default="text")
    p_all.set_defaults(func=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        return _fail_usage(str(exc))


if __name__ == "__main__":
    sys.exit(main())
