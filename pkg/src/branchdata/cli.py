"""
Command-line front end.

Exit codes: 0 affirmative, 1 negative, 2 usage or input error, 3 budget
exhausted. Results are JSON on standard output with sorted keys;
diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

from .counting import COUNT_BUDGET, count_tuples, format_rational, frobenius_disconnected
from .data import (Constellation, DatumError, GeneralDatum, SpecialDatum, belyi_datum, decide_realizable,
                   enumerate_special_data, verify_constellation)
from .perm import PermutationError
from .realizer import ConstructionDefect, NotRealizable, realize
from .search import SearchBudget, SearchExhausted, search_realize

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

# largest degree each sweep mode accepts
SWEEP_BOUNDS = {"check": 9, "realize": 10, "count": 6}


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _emit(obj, out=None):
    (out or sys.stdout).write(_dump(obj) + "\n")


def _read_source(inline, path, what):
    if inline is not None and path is not None:
        raise InputError("give the %s inline or with a file, not both" % what)
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise InputError("cannot read %s: %s" % (path, exc.strerror)) from None
    if inline is None or inline == "-":
        return sys.stdin.read()
    return inline


def _parse_json(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("malformed %s JSON at line %d column %d: %s"
                         % (what, exc.lineno, exc.colno, exc.msg)) from None


def load_datum(text, allow_general=False):
    obj = _parse_json(text, "datum")
    try:
        if allow_general and isinstance(obj, dict) and "partitions" in obj:
            if set(obj) - {"d", "partitions"}:
                raise DatumError("general datum takes only the keys d and partitions")
            if not isinstance(obj.get("d"), int) or not isinstance(obj["partitions"], list):
                raise DatumError("general datum needs an integer d and a list of partitions")
            return GeneralDatum(obj["d"], obj["partitions"])
        return SpecialDatum.from_json(obj)
    except (DatumError, TypeError, ValueError) as exc:
        raise InputError("invalid datum: %s" % exc) from None


def _budget(args):
    base = SearchBudget()
    return SearchBudget(max_degree=args.max_degree or base.max_degree,
                        max_nodes=args.search_budget or base.max_nodes)


# ---------------------------------------------------------------------------
# subcommands


def check_payload(datum: SpecialDatum) -> dict:
    verdict = decide_realizable(datum)
    out = verdict.to_json()
    out["verdict"] = "realizable" if verdict.realizable else "not_realizable"
    out["belyi_datum"] = belyi_datum(datum).to_json()
    return out


def cmd_check(args) -> int:
    datum = load_datum(_read_source(args.datum, args.file, "datum"))
    payload = check_payload(datum)
    _emit(payload)
    return EXIT_OK if payload["realizable"] else EXIT_NO


def cmd_realize(args) -> int:
    datum = load_datum(_read_source(args.datum, args.file, "datum"))
    try:
        c = realize(datum, _budget(args))
    except NotRealizable as exc:
        _emit(exc.verdict.to_json())
        print("not realizable: %s" % exc.verdict.reason.value, file=sys.stderr)
        return EXIT_NO
    except SearchExhausted as exc:
        print("search budget exhausted: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    if not verify_constellation(datum, c):
        raise ConstructionDefect("realized constellation failed verification")
    if args.format == "cycles":
        sys.stdout.write(c.cycle_text() + "\n")
    else:
        _emit(c.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    datum = load_datum(_read_source(args.datum, args.file, "datum"))
    if args.constellation is None and args.constellation_file is None:
        raise InputError("a constellation is required (inline or --constellation-file)")
    text = _read_source(args.constellation, args.constellation_file, "constellation")
    try:
        c = Constellation.from_json(_parse_json(text, "constellation"))
    except (DatumError, PermutationError) as exc:
        raise InputError("invalid constellation: %s" % exc) from None
    if c.d != datum.d:
        raise InputError("constellation degree %d does not match datum degree %d" % (c.d, datum.d))
    result = verify_constellation(datum, c)
    _emit(result.to_json())
    return EXIT_OK if result else EXIT_NO


def count_payload(datum, budget, oracle, workers=1) -> tuple:
    report = count_tuples(datum, budget, workers=workers)
    out = report.to_json()
    agree = True
    if oracle:
        total = frobenius_disconnected(datum)
        agree = total * math.factorial(datum.d) == report.tuple_count
        out["oracle"] = format_rational(total)
        out["oracle_agrees"] = agree
    return out, agree


def cmd_count(args) -> int:
    datum = load_datum(_read_source(args.datum, args.file, "datum"), allow_general=True)
    budget = SearchBudget(max_degree=args.max_degree or COUNT_BUDGET.max_degree,
                          max_nodes=args.search_budget or COUNT_BUDGET.max_nodes)
    try:
        payload, agree = count_payload(datum, budget, args.oracle, args.threads)
    except SearchExhausted as exc:
        print("counting budget exhausted: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    _emit(payload)
    if not agree:
        print("DEFECT: enumeration and character formula disagree", file=sys.stderr)
        return EXIT_NO
    return EXIT_OK


def sweep_line(job) -> dict:
    """One sweep record; ``status`` is ``ok``, ``negative``, ``budget`` or ``defect``."""
    mode, djson, max_nodes = job
    datum = SpecialDatum.from_json(djson)
    line = {"datum": djson}
    try:
        if mode == "check":
            line.update(check_payload(datum))
            line.pop("belyi_datum")
            line["status"] = "ok"
            if line["v"] == 2 * datum.d - 2:
                found = search_realize(datum, SearchBudget(max_nodes=max_nodes)) is not None
                line["search_found"] = found
                if found != line["realizable"]:
                    line["status"] = "defect"
        elif mode == "realize":
            try:
                c = realize(datum, SearchBudget(max_nodes=max_nodes))
            except NotRealizable as exc:
                line.update(exc.verdict.to_json())
                line["status"] = "negative"
            else:
                check = verify_constellation(datum, c)
                line["genus"] = decide_realizable(datum).genus
                line["cycles"] = c.cycle_text()
                line["status"] = "ok" if check else "defect"
        else:
            payload, agree = count_payload(datum, SearchBudget(max_degree=COUNT_BUDGET.max_degree,
                                                               max_nodes=max_nodes), True)
            line.update(payload)
            realizable = decide_realizable(datum).realizable
            consistent = realizable == (payload["transitive_count"] > 0)
            line["status"] = "ok" if agree and consistent else "defect"
    except SearchExhausted as exc:
        line["status"] = "budget"
        line["detail"] = str(exc)
    except (ConstructionDefect, AssertionError) as exc:
        line["status"] = "defect"
        line["detail"] = str(exc)
    return line


def sweep_jobs(d_min, d_max, genus_min, genus_max, mode, max_nodes):
    for d in range(d_min, d_max + 1):
        for datum in enumerate_special_data(d, genus_min, genus_max):
            yield (mode, datum.to_json(), max_nodes)


def cmd_sweep(args) -> int:
    d_min = args.d_min if args.d_min is not None else 2
    if d_min < 2 or args.d < d_min:
        raise InputError("need 2 <= --d-min <= --d")
    if args.d > SWEEP_BOUNDS[args.mode]:
        raise InputError("--d %d exceeds the bound %d for mode %s" % (args.d, SWEEP_BOUNDS[args.mode], args.mode))
    if args.genus_min < 0:
        raise InputError("--genus-min must be nonnegative")
    max_nodes = args.search_budget or (COUNT_BUDGET.max_nodes if args.mode == "count" else SearchBudget().max_nodes)
    jobs = sweep_jobs(d_min, args.d, args.genus_min, args.genus_max, args.mode, max_nodes)
    counts = {"ok": 0, "negative": 0, "budget": 0, "defect": 0}
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as ex:
            lines = ex.map(sweep_line, jobs, chunksize=8)
            for line in lines:
                counts[line["status"]] += 1
                _emit(line)
    else:
        for line in map(sweep_line, jobs):
            counts[line["status"]] += 1
            _emit(line)
    total = sum(counts.values())
    _emit({"summary": {"mode": args.mode, "d_min": d_min, "d_max": args.d, "genus_min": args.genus_min,
                       "genus_max": args.genus_max, "lines": total, "ok": counts["ok"],
                       "negative": counts["negative"], "budget": counts["budget"],
                       "defects": counts["defect"]}})
    if counts["defect"]:
        return EXIT_NO
    if counts["budget"]:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_examples
    failures = 0
    for name, ok, detail in run_examples():
        if ok:
            print("PASS %s" % name)
        else:
            failures += 1
            print("FAIL %s: %s" % (name, detail))
    print("%d failure(s)" % failures)
    return EXIT_OK if failures == 0 else EXIT_NO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="branchdata",
        description="Realizability, construction and counting for special branch data.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def datum_args(p):
        p.add_argument("datum", nargs="?", help='datum JSON, e.g. \'{"d":3,"A":[3],"B":[3],"M":[2]}\'; '
                                               "read from standard input when omitted")
        p.add_argument("--file", help="read the datum from this file")

    p = sub.add_parser("check", help="decide realizability and report the genus")
    datum_args(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("realize", help="construct and verify a constellation")
    datum_args(p)
    p.add_argument("--format", choices=("json", "cycles"), default="json")
    p.add_argument("--search-budget", type=int, metavar="NODES", help="node budget for genus-zero search")
    p.add_argument("--max-degree", type=int, help="largest degree the search will attempt")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", help="check a constellation against a datum")
    datum_args(p)
    p.add_argument("constellation", nargs="?", help='constellation JSON {"d":..., "perms":[[...], ...]}')
    p.add_argument("--constellation-file", help="read the constellation from this file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="count tuples, transitive tuples and strong Hurwitz classes")
    datum_args(p)
    p.add_argument("--max-degree", type=int, help="largest degree to enumerate (default %d)"
                   % COUNT_BUDGET.max_degree)
    p.add_argument("--search-budget", type=int, metavar="NODES", help="node budget for the enumeration")
    p.add_argument("--oracle", action="store_true", help="cross-check against the character formula")
    p.add_argument("--threads", type=int, default=1, help="worker processes for the enumeration")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sweep", help="run a mode over every datum in a degree and genus range (JSON Lines)")
    p.add_argument("--d", type=int, required=True, help="largest degree")
    p.add_argument("--d-min", type=int, help="smallest degree (default 2)")
    p.add_argument("--genus-min", type=int, default=1)
    p.add_argument("--genus-max", type=int, default=5)
    p.add_argument("--mode", choices=("check", "realize", "count"), default="check")
    p.add_argument("--threads", type=int, default=1, help="worker processes; output order is fixed")
    p.add_argument("--search-budget", type=int, metavar="NODES", help="node budget per datum")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("selftest", help="run the built-in example table")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except ConstructionDefect as exc:
        print("DEFECT: %s" % exc, file=sys.stderr)
        return EXIT_NO


if __name__ == "__main__":
    sys.exit(main())
