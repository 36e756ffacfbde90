"""Command-line front end.

Commands:
    list                 all 24 lattices with the orbifold-relevance flag
    compute <name>       full pipeline for one lattice
    table1               summary rows for all 14 relevant lattices

Flags: --validate (compare against the shipped golden rows; nonzero exit
listing every mismatch), --json / --markdown (output format), --budget
(search-node budget), --data (data directory override, also settable via
ORBAUT_DATA), --jobs (parallel lattices for table1).  Output is
deterministic: identical invocations print identical bytes.
"""

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import codeaut as ca
from . import groupid as gid
from . import niemeier as nm
from . import orbifold as ob


def _lattices(directory):
    return nm.all_lattices(directory)


def cmd_list(args):
    lattices = _lattices(args.data)
    golden = ob.load_golden_table(args.data)
    records = []
    for name in sorted(lattices):
        N = lattices[name]
        records.append({"name": name,
                        "roots": " ".join(repr(t) for t in N.components)
                                 or "none",
                        "relevant": name in ob.THE_14,
                        "catalog_number": golden[name].number
                        if name in golden else None})
    if args.json:
        print(json.dumps(records, indent=2))
    else:
        for r in records:
            flag = "orbifold" if r["relevant"] else "-"
            print(f"{r['name']:<10} {flag}")
    return 0


def _row_dict(row):
    return {"number": row.number, "name": row.name, "v1_type": row.v1_type,
            "rank": row.rank, "kv_factors": row.kv_factors,
            "out1": row.out1, "out2_order": row.out2_order,
            "out2_name": row.out2_name}


def _row_from_dict(d):
    return ob.Table1Row(d["number"], d["name"], d["v1_type"], d["rank"],
                        d["kv_factors"], d["out1"], d["out2_order"],
                        d["out2_name"])


def _markdown_rows(rows):
    lines = ["| No. | Q | V1 | rank V1 | K(V) | Out1 | Out2 |",
             "|---|---|---|---|---|---|---|"]
    for r in rows:
        kv = gid.abelian_name(r.kv_factors)
        lines.append(f"| {r.number} | {r.name} | {r.v1_type} | {r.rank} "
                     f"| {kv} | {r.out1} | {r.out2_name} |")
    return "\n".join(lines)


def cmd_compute(args):
    lattices = _lattices(args.data)
    if args.name not in lattices:
        print(f"error: unknown lattice {args.name!r}", file=sys.stderr)
        return 2
    N = lattices[args.name]
    try:
        ob.require_one_of_14(N)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    t0 = time.time()
    cond = ob.conditions(N)
    v1 = ob.v1_structure(N, args.data)
    gi = ob.glue_image(N, args.data)
    kv = ob.compute_kv(N, args.data)
    og = ob.out_groups(N, args.data, args.budget)
    row = ob.table1_row(N, args.data, args.budget)
    report = {
        "name": N.name,
        "conditions": {"cond1": cond.cond1, "cond2": cond.cond2,
                       "cond3": cond.cond3,
                       "extra_automorphism": cond.extra_automorphism},
        "v1": {"type": v1.type_string, "rank": v1.rank},
        "glue_code_order": len(N.glue_code),
        "cn_order": gi.code.order,
        "kv": {"order": kv.order, "factors": kv.invariant_factors,
               "index_a": kv.index_a, "factor_f": kv.factor_f},
        "out1": og.out1_name,
        "out2": {"order": og.out2_order, "name": og.out2_name.name,
                 "confidence": og.out2_name.confidence,
                 "source": og.source},
        "row": _row_dict(row),
    }
    print(f"computed {N.name} in {time.time() - t0:.1f}s", file=sys.stderr)
    problems = ob.validate_table1([row], args.data) if args.validate else []
    if args.json:
        report["validation"] = problems
        print(json.dumps(report, indent=2))
    elif args.markdown:
        print(_markdown_rows([row]))
        for p in problems:
            print(f"MISMATCH: {p}")
    else:
        print(f"{N.name}: V1 = {report['v1']['type']} "
              f"(rank {report['v1']['rank']})")
        print(f"  |C_N| = {report['cn_order']}")
        print(f"  K(V) = {gid.abelian_name(kv.invariant_factors)} "
              f"(order {kv.order} = 2·{kv.index_a}·{kv.factor_f})")
        print(f"  Out1 = {og.out1_name}, Out2 = {og.out2_name.name} "
              f"(order {og.out2_order}, {og.out2_name.confidence}, "
              f"via {og.source})")
        for p in problems:
            print(f"MISMATCH: {p}")
        if args.validate and not problems:
            print("  validation: OK")
    return 1 if problems else 0


def _table1_worker(job):
    name, directory, budget = job
    N = nm.all_lattices(directory)[name]
    return _row_dict(ob.table1_row(N, directory, budget))


def cmd_table1(args):
    golden = ob.load_golden_table(args.data)
    names = sorted(golden, key=lambda n: golden[n].number)
    if args.jobs > 1:
        jobs = [(n, args.data, args.budget) for n in names]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = [_row_from_dict(d) for d in pool.map(_table1_worker, jobs)]
    else:
        rows = ob.table1(args.data, args.budget)
    problems = ob.validate_table1(rows, args.data) if args.validate else []
    if args.json:
        print(json.dumps({"rows": [_row_dict(r) for r in rows],
                          "validation": problems}, indent=2))
    else:
        print(_markdown_rows(rows))
        for p in problems:
            print(f"MISMATCH: {p}")
        if args.validate and not problems:
            print("validation: all 14 rows OK")
    return 1 if problems else 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="orbaut",
        description="Automorphism-group data of Niemeier-lattice "
                    "Z2-orbifold vertex operator algebras")
    p.add_argument("--data", default=None,
                   help="data directory (default: packaged data or "
                        "ORBAUT_DATA)")
    p.add_argument("--budget", type=int, default=ca.DEFAULT_BUDGET,
                   help="stabilizer search node budget")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--markdown", action="store_true",
                   help="Markdown output")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list all 24 lattices")
    pc = sub.add_parser("compute", help="full pipeline for one lattice")
    pc.add_argument("name")
    pc.add_argument("--validate", action="store_true",
                    help="compare against the golden summary row")
    pt = sub.add_parser("table1", help="summary rows for the 14 lattices")
    pt.add_argument("--validate", action="store_true",
                    help="compare all rows against the golden data")
    pt.add_argument("--jobs", type=int, default=1,
                    help="parallel worker processes")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "list":
        return cmd_list(args)
    if args.command == "compute":
        return cmd_compute(args)
    return cmd_table1(args)


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
