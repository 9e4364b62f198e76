"""Batch command line interface: search, verify, report.

Exit statuses: 0 success, 2 usage error, 3 parse error, 4 budget
overrun, 5 verification failure.  Reports are deterministic: the same
config and seed produce byte-identical output regardless of the worker
thread count (timing goes to stderr only).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
import warnings

from . import __version__, cubes, gaps, pell, schema, sieve, tuples
from .errors import BudgetError, DomainError, SchemaError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4
EXIT_VERIFY_FAIL = 5

DEFAULT_SEED = 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dioph",
        description="Search, verify and audit shifted-power tuple structures.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("DIOPH_THREADS", "1")),
        help="worker threads (env DIOPH_THREADS); results do not depend on it",
    )
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p_search = sub.add_parser("search", parents=[common], help="run a search")
    p_search.add_argument(
        "--mode", choices=("dkn", "bdkn", "cube", "pell"), required=True
    )
    p_search.add_argument("--k", type=int)
    p_search.add_argument("--n", type=int)
    p_search.add_argument("--max", type=int, help="element / generator limit")
    p_search.add_argument("--min-size", type=int, default=2)
    p_search.add_argument("--size-a", type=int, choices=(2, 3), default=2)
    p_search.add_argument("--a0", type=int, default=1, help="a0 limit (cube mode)")
    p_search.add_argument("--min-dim", type=int, default=2)
    p_search.add_argument("--a", type=int, help="Pell coefficient")
    p_search.add_argument("--u", type=int, help="Pell right-hand side")
    p_search.add_argument("--zmax", type=int, help="Pell enumeration bound")
    p_search.add_argument(
        "--sieve-q",
        type=int,
        default=None,
        help="attach a sieve bound (primes up to Q) to each bipartite result",
    )

    p_verify = sub.add_parser("verify", parents=[common], help="verify an instance file")
    p_verify.add_argument("--file", required=True)

    p_report = sub.add_parser("report", parents=[common], help="aggregate run reports")
    p_report.add_argument("--inputs", nargs="*", default=[])
    return parser


def _require(args, names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise DomainError(f"missing required options for this mode: {missing}")


def run_search(args) -> dict:
    config = {"mode": args.mode, "seed": schema.int_str(args.seed)}
    results = []
    warns = []
    if args.mode == "dkn":
        _require(args, ["k", "n", "max"])
        config.update(
            k=schema.int_str(args.k),
            n=schema.int_str(args.n),
            max=schema.int_str(args.max),
            min_size=schema.int_str(args.min_size),
        )
        found = tuples.search_dkn(
            args.k, args.n, args.max, args.min_size, threads=args.threads
        )
        results = [schema.dump_instance(t) for t in found]
    elif args.mode == "bdkn":
        _require(args, ["k", "n", "max"])
        config.update(
            k=schema.int_str(args.k),
            n=schema.int_str(args.n),
            max=schema.int_str(args.max),
            size_a=schema.int_str(args.size_a),
        )
        if args.sieve_q is not None:
            config.update(sieve_q=schema.int_str(args.sieve_q))
        found = tuples.search_ordered_bipartite(args.k, args.n, args.max, args.size_a)
        for pair in found:
            row = schema.dump_instance(pair)
            row["ordered"] = pair.ordered_flag
            row["overlap"] = [schema.int_str(v) for v in pair.overlap]
            if args.sieve_q is not None:
                rep = sieve.sieve_pipeline(
                    list(pair.A), args.k, args.n, args.max, args.sieve_q
                )
                row["sieve_bound"] = schema.jsonable(rep.bound)
                row["actual_B_size"] = schema.int_str(len(pair.B))
                if rep.note:
                    warns.append(f"sieve note for A={list(pair.A)}: {rep.note}")
            results.append(row)
    elif args.mode == "cube":
        _require(args, ["k", "n", "max"])
        config.update(
            k=schema.int_str(args.k),
            n=schema.int_str(args.n),
            max=schema.int_str(args.max),
            a0=schema.int_str(args.a0),
            min_dim=schema.int_str(args.min_dim),
        )
        found = cubes.search_cubes(
            args.k, args.n, args.max, args.a0, args.min_dim, threads=args.threads
        )
        for cube in found:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                elements = cubes.cube_elements(cube)
            warns.extend(str(w.message) for w in caught)
            results.append(
                {
                    "schema": schema.SCHEMA_VERSION,
                    "type": "cube",
                    "k": schema.int_str(args.k),
                    "n": schema.int_str(args.n),
                    "a0": schema.int_str(cube.a0),
                    "generators": [schema.int_str(g) for g in cube.generators],
                    "elements": [schema.int_str(e) for e in elements],
                }
            )
    elif args.mode == "pell":
        _require(args, ["a", "u", "zmax"])
        config.update(
            a=schema.int_str(args.a),
            u=schema.int_str(args.u),
            zmax=schema.int_str(args.zmax),
        )
        for sol in pell.enumerate_solutions(args.a, args.u, args.zmax):
            results.append(
                {
                    "schema": schema.SCHEMA_VERSION,
                    "type": "pell",
                    "a": schema.int_str(args.a),
                    "u": schema.int_str(args.u),
                    "x": schema.int_str(sol.x),
                    "z": schema.int_str(sol.z),
                    "class_label": schema.int_str(sol.class_ref.residue_label),
                    "scale": schema.int_str(sol.class_ref.scale),
                    "index": schema.int_str(sol.index),
                }
            )
        if not results:
            obstruction = pell.residue_obstruction(args.a, args.u)
            if obstruction is not None:
                warns.append(
                    f"equation unsolvable: residue obstruction mod {obstruction}"
                )
            else:
                warns.append(
                    f"no solutions with z <= {args.zmax}; no small residue "
                    f"obstruction found"
                )
    return _report_body("search", config, results, warns)


def _audits_for_dkn(instance: tuples.TupleInstance) -> dict:
    audits = {}
    els = instance.elements
    if len(els) >= 4:
        a1, a2 = els[0], els[1]
        b1, b2 = els[-2], els[-1]
        holds, quality = gaps.abc_identity_quality(
            a1, a2, b1, b2, instance.k, instance.n
        )
        audits["identity"] = {"holds": holds, "quality": schema.jsonable(quality)}
        if instance.k >= 3:
            audits["gap"] = schema.jsonable(
                gaps.check_gap(instance.k, instance.n, a1, a2, b1, b2)
            )
    if instance.k == 2 and len(els) >= 5:
        audits["antigap"] = schema.jsonable(
            gaps.antigap_audit(els[0], els[1], els[2], els[-2], els[-1], instance.n)
        )
    return audits


def _audits_for_bdkn(pair: tuples.BipartitePair) -> dict:
    audits = {}
    a1, a2 = pair.A[0], pair.A[1]
    b1, b2 = pair.B[0], pair.B[1]
    holds, quality = gaps.abc_identity_quality(a1, a2, b1, b2, pair.k, pair.n)
    audits["identity"] = {"holds": holds, "quality": schema.jsonable(quality)}
    if pair.k >= 3:
        audits["gap"] = schema.jsonable(
            gaps.check_gap(pair.k, pair.n, a1, a2, b1, b2)
        )
    if pair.k == 2 and len(pair.A) >= 3 and len(pair.B) >= 2:
        audits["antigap"] = schema.jsonable(
            gaps.antigap_audit(pair.A[0], pair.A[1], pair.A[2], b1, b2, pair.n)
        )
    return audits


def run_verify(args) -> tuple[dict, bool]:
    instance = schema.load_instance(args.file)
    config = {"file_type": "", "seed": schema.int_str(args.seed)}
    warns: list[str] = []
    audits: dict = {}
    if isinstance(instance, tuples.TupleInstance):
        config["file_type"] = "dkn"
        report = tuples.verify_dkn(instance.elements, instance.k, instance.n)
        valid = report.valid
        payload = schema.dump_instance(instance)
        violations = report.violations
        if valid:
            audits = _audits_for_dkn(instance)
    elif isinstance(instance, tuples.BipartitePair):
        config["file_type"] = "bdkn"
        report = tuples.verify_bdkn(instance.A, instance.B, instance.k, instance.n)
        valid = report.valid
        payload = schema.dump_instance(instance)
        payload["ordered"] = report.ordered_flag
        violations = report.violations
        warns.extend(report.notes)
        if valid:
            audits = _audits_for_bdkn(instance)
    elif isinstance(instance, tuple) and instance[0] == "pell":
        config["file_type"] = "pell"
        _, a, u, pairs = instance
        violations = tuple(
            (x, z, x * x - a * z * z) for x, z in pairs if x * x - a * z * z != u
        )
        valid = not violations
        payload = {
            "schema": schema.SCHEMA_VERSION,
            "type": "pell",
            "a": schema.int_str(a),
            "u": schema.int_str(u),
            "solutions": [[schema.int_str(x), schema.int_str(z)] for x, z in pairs],
        }
        if valid:
            classes = pell.base_solutions(a, u)
            audits["base_classes"] = schema.jsonable(classes)
    else:
        config["file_type"] = "cube"
        k, n, cube = instance
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            verdict = cubes.verify_cube(cube, k, n)
        warns.extend(str(w.message) for w in caught)
        valid = verdict.valid
        violations = verdict.failing_subsets
        payload = {
            "schema": schema.SCHEMA_VERSION,
            "type": "cube",
            "k": schema.int_str(k),
            "n": schema.int_str(n),
            "a0": schema.int_str(cube.a0),
            "generators": [schema.int_str(g) for g in cube.generators],
        }
        if valid:
            audits["dimension_bounds"] = schema.jsonable(
                cubes.dimension_bounds(cube, k, n)
            )
    result = {
        "instance": payload,
        "valid": valid,
        "violations": schema.jsonable(list(violations)),
        "audits": audits,
    }
    return _report_body("verify", config, [result], warns), valid


def run_report(args) -> dict:
    rows = []
    for path in args.inputs:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise SchemaError(f"cannot read report {path}: {e}") from e
        if not isinstance(data, dict) or data.get("schema") != schema.SCHEMA_VERSION:
            raise SchemaError(f"mixed or unknown schema in {path}", "schema")
        if data.get("command") != "search":
            raise SchemaError(f"{path} is not a search report", "command")
        rows.extend(data.get("results", []))
    groups: dict = {}
    for row in rows:
        kind = row.get("type")
        if kind == "pell":
            key = (kind, row.get("a", ""), row.get("u", ""))
            size = 1
            sieve_bound = None
        else:
            key = (kind, row.get("k", ""), row.get("n", ""))
            if kind == "dkn":
                size = len(row.get("elements", []))
            elif kind == "bdkn":
                size = len(row.get("B", []))
            else:
                size = len(row.get("generators", []))
            sieve_bound = row.get("sieve_bound")
        g = groups.setdefault(
            key, {"count": 0, "max_size": 0, "sieve_bounds": []}
        )
        g["count"] += 1
        g["max_size"] = max(g["max_size"], size)
        if sieve_bound is not None:
            g["sieve_bounds"].append(sieve_bound)
    table = []
    for (kind, p1, p2), g in sorted(groups.items()):
        table.append(
            {
                "type": kind,
                "param1": p1,
                "param2": p2,
                "count": schema.int_str(g["count"]),
                "max_size": schema.int_str(g["max_size"]),
                "min_sieve_bound": min(g["sieve_bounds"], default=""),
            }
        )
    config = {"inputs": [os.path.basename(p) for p in args.inputs],
              "seed": schema.int_str(args.seed)}
    return _report_body("report", config, table, [])


def _report_body(command: str, config: dict, results: list, warns: list) -> dict:
    return {
        "schema": schema.SCHEMA_VERSION,
        "tool": "dioph",
        "version": __version__,
        "command": command,
        "config": config,
        "results": results,
        "warnings": sorted(set(warns)),
    }


REPORT_COLUMNS = ("type", "param1", "param2", "count", "max_size", "min_sieve_bound")


def _emit(body: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(body, sort_keys=True, indent=2) + "\n"
    else:
        fixed = REPORT_COLUMNS if body["command"] == "report" else None
        text = _to_csv(body, fixed)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flatten(prefix: str, value, row: dict) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], row)
    elif isinstance(value, list):
        row[prefix] = ";".join(
            json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else str(v)
            for v in value
        )
    else:
        row[prefix] = "" if value is None else str(value)


def _to_csv(body: dict, fixed_columns=None) -> str:
    rows = []
    for result in body["results"]:
        row: dict = {}
        _flatten("", result, row)
        rows.append(row)
    if fixed_columns is not None:
        header = list(fixed_columns)
    else:
        header = sorted({key for row in rows for key in row})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, restval="", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        if args.command == "search":
            body = run_search(args)
            status = EXIT_OK
        elif args.command == "verify":
            body, valid = run_verify(args)
            status = EXIT_OK if valid else EXIT_VERIFY_FAIL
        else:
            body = run_report(args)
            status = EXIT_OK
    except SchemaError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except DomainError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(body, args)
    elapsed = time.monotonic() - started
    print(
        f"dioph {args.command}: {len(body['results'])} result rows in "
        f"{elapsed:.3f}s (threads={args.threads})",
        file=sys.stderr,
    )
    return status


if __name__ == "__main__":
    sys.exit(main())
