"""Command-line front end.

Exit codes: 0 success, 1 bad input (parse errors, axiom violations, bad
arguments), 2 a budget was exceeded, 3 a checked statement failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time

from . import census as census_mod
from .algebra import FiniteSemiring, Partition, parse_partition
from .classify import classify
from .commutator import (
    DIMENSION_BUDGET,
    TUPLE_BUDGET,
    binary_commutator_tc,
    centralizes,
    higher_commutator,
)
from .congruence import LATTICE_ORDER_BOUND, all_congruences
from .enumeration import ENUMERATION_BOUND, EnumerationTask, enumerate_semirings
from .errors import FalsificationError, InternalError, SemicommError, SizeError
from .fixtures import BUILTINS
from .formats import dump_json, dump_text, parse_semiring, to_record
from .ideals import all_ideals, rho_of_ideal
from .terms import evaluate_at, parse_term

log = logging.getLogger("semicomm")

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_FALSIFIED = 0, 1, 2, 3
FORMATS = ("text", "csv", "jsonl")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--tuple-budget", type=_positive, default=TUPLE_BUDGET)
    common.add_argument("--dimension-budget", type=_positive, default=DIMENSION_BUDGET)
    common.add_argument("--order-bound", type=_positive, default=None,
                        help="largest carrier accepted by lattice and enumeration commands")
    common.add_argument("-v", "--verbose", action="store_true")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("input", nargs="?", help="semiring file ('-' for stdin)")
    source.add_argument("--builtin", choices=sorted(BUILTINS), help="use a named fixture instead of a file")

    p = argparse.ArgumentParser(prog="semicomm", description="Commutators and ideals of finite semirings.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common, source], help="check the semiring laws and re-emit canonically")

    c = sub.add_parser("classify", parents=[common, source], help="nilpotency, solvability and ring report")
    c.add_argument("--max-n", type=_positive, default=None)

    c = sub.add_parser("commutator", parents=[common, source], help="higher commutator of congruences")
    c.add_argument("--args", required=True,
                   help="congruences separated by ';' (or ',' when every one is 0 or 1), "
                        "each 0, 1 or classes like '0,2|1,3'")
    c.add_argument("--witness", action="store_true", help="show a cube violating the condition modulo 0")
    c.add_argument("--binary", action="store_true", help="use the two-argument matrix route")

    sub.add_parser("congruences", parents=[common, source], help="list the congruence lattice")
    sub.add_parser("ideals", parents=[common, source], help="list ideals with their induced congruences")

    c = sub.add_parser("eval", parents=[common, source], help="evaluate a polynomial")
    c.add_argument("--term", required=True)
    c.add_argument("--assign", default="", help="group tuples separated by ';', components by ','")

    for name, helptext in (("enumerate", "list all semirings of an order"),
                           ("census", "enumerate and verify every semiring of an order")):
        c = sub.add_parser(name, parents=[common], help=helptext)
        c.add_argument("--order", type=_positive, required=True)
        c.add_argument("--labelled", action="store_true", help="keep isomorphic copies")
        c.add_argument("--cancellative-only", action="store_true")
        c.add_argument("--with-identity-only", action="store_true")
        if name == "census":
            c.add_argument("--full", action="store_true", help="commutator checks even above order 3")
            c.add_argument("--structure-only", action="store_true")
            c.add_argument("--jobs", type=_positive, default=1)

    c = sub.add_parser("verify-paper", parents=[common],
                       help="check every statement on the built-in fixtures and seeded random instances")
    c.add_argument("--seed", type=int, default=census_mod.PARITY_SEED)
    c.add_argument("--count", type=_positive, default=1000)
    c.add_argument("--census-order", type=int, default=2, help="also run the census up to this order")
    return p


def _load(args) -> FiniteSemiring:
    if args.builtin:
        if args.input:
            raise ValueError("give either a file or --builtin, not both")
        return BUILTINS[args.builtin]()
    if not args.input:
        raise ValueError("no input: give a file, '-' or --builtin")
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    return parse_semiring(text, name=args.input)


def _budgets(args):
    return {"budget": args.tuple_budget, "dimension_budget": args.dimension_budget}


def _warn_identity(s):
    e = s.multiplicative_identity()
    if e is not None:
        log.warning("element %d is a multiplicative identity; every commutator of 1 with itself is 1", e)


def _render(records, fmt, text_lines=None):
    """Records as CSV / JSON lines, or ``text_lines`` (default: key=value lines)."""
    if fmt == "jsonl":
        return "".join(json.dumps(r, sort_keys=False) + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        fields = []
        for r in records:
            fields.extend(k for k in r if k not in fields)
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        return buf.getvalue()
    if text_lines is None:
        text_lines = [" ".join(f"{k}={_fmt(v)}" for k, v in r.items()) for r in records]
    return "".join(line + "\n" for line in text_lines)


def _fmt(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _parse_congruence_list(order, text):
    parts = text.split(";") if ";" in text else text.split(",")
    parts = [x.strip() for x in parts if x.strip()]
    if ";" not in text and any(x not in ("0", "1") for x in parts):
        raise ValueError("separate congruences with ';' when giving class lists")
    return [parse_partition(order, x) for x in parts]


def cmd_validate(args):
    s = _load(args)
    if args.format == "jsonl":
        return dump_json(s) + "\n"
    if args.format == "csv":
        return _render([to_record(s)], "csv")
    return dump_text(s)


def cmd_classify(args):
    s = _load(args)
    _warn_identity(s)
    report = classify(s, id=args.builtin or args.input, max_n=args.max_n, **_budgets(args))
    return _render([report.to_record()], args.format)


def cmd_commutator(args):
    s = _load(args)
    _warn_identity(s)
    cons = _parse_congruence_list(s.order, args.args)
    if args.binary:
        if len(cons) != 2:
            raise ValueError("--binary needs exactly two congruences")
        result = binary_commutator_tc(s, *cons)
    else:
        result = higher_commutator(s, cons, **_budgets(args))
    rec = {"args": [str(c) for c in cons], "commutator": str(result),
           "is_zero": result.is_identity, "is_full": result.is_full}
    if args.witness and not result.is_identity:
        cube = centralizes(s, cons, Partition.identity(s.order), **_budgets(args))
        rec["witness"] = {"cube": list(cube.values), "premises": cube.premises, "conclusion": cube.conclusion}
    return _render([rec], args.format)


def cmd_congruences(args):
    s = _load(args)
    cons = all_congruences(s, bound=args.order_bound or LATTICE_ORDER_BOUND)
    recs = [{"index": i, "congruence": str(c), "classes": c.classes()} for i, c in enumerate(cons)]
    return _render(recs, args.format, [str(c) for c in cons])


def cmd_ideals(args):
    s = _load(args)
    recs = [{"ideal": sorted(I.elems), "rho": str(rho_of_ideal(s, I))} for I in all_ideals(s)]
    lines = ["{" + ",".join(map(str, r["ideal"])) + "} rho=" + r["rho"] for r in recs]
    return _render(recs, args.format, lines)


def cmd_eval(args):
    s = _load(args)
    groups = [tuple(int(x) for x in g.split(",") if x.strip()) for g in args.assign.split(";")] if args.assign else []
    t = parse_term(args.term, arities=[len(g) for g in groups])
    value = evaluate_at(t, groups, s)
    return _render([{"term": str(t), "value": value}], args.format, [str(value)])


def _task(args):
    return EnumerationTask(args.order, up_to_iso=not args.labelled,
                           cancellative_only=args.cancellative_only,
                           with_identity_only=args.with_identity_only)


def cmd_enumerate(args):
    bound = args.order_bound or ENUMERATION_BOUND
    recs = [dict(id=s.name, **to_record(s)) for s in enumerate_semirings(_task(args), bound=bound)]
    return _render(recs, "jsonl" if args.format == "text" else args.format)


def cmd_census(args):
    task = _task(args)
    full = True if args.full else False if args.structure_only else None
    t0 = time.perf_counter()
    records, summary = census_mod.run_census(task, full=full, jobs=args.jobs)
    summary["seconds"] = round(time.perf_counter() - t0, 3)
    recs = [r.to_record() for r in records] + [summary]
    if args.format == "text":
        return _render(recs, "jsonl")
    if args.format == "csv":
        flat = [dict(id=r.id, **(r.report.to_record() if r.report else {}), **r.flags) for r in records]
        return _render(flat, "csv")
    return _render(recs, "jsonl")


def cmd_verify_paper(args):
    out = [{"check": "parity_sums", "seed": args.seed, "instances": census_mod.run_parity_property(args.seed, args.count)}]
    print(f"parity property seed={args.seed}", file=sys.stderr)
    for name, make in BUILTINS.items():
        rec = census_mod.verify_semiring(make(), name, full=True)
        out.append({"check": "fixture", "id": name, "flags_passed": sum(rec.flags.values()), "flags": len(rec.flags)})
    for order in range(1, args.census_order + 1):
        _, summary = census_mod.run_census(EnumerationTask(order))
        out.append({"check": "census", "order": order, "algebras": summary["algebras"],
                    "all_flags_pass": summary["all_flags_pass"]})
    return _render(out, args.format)


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "commutator": cmd_commutator,
    "congruences": cmd_congruences,
    "ideals": cmd_ideals,
    "eval": cmd_eval,
    "enumerate": cmd_enumerate,
    "census": cmd_census,
    "verify-paper": cmd_verify_paper,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        text = COMMANDS[args.command](args)
    except (FalsificationError, InternalError) as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except SizeError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SemicommError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
