"""Command-line interface.

Every subcommand writes JSON lines (or csv / a plain table) and reports its
outcome through the exit status:

    0   success
    2   a proven statement was contradicted
    3   nothing found (no witness, no preimage, input not separating, ...)
    64  usage error or malformed input
    65  refused: exceeds an enumeration or recovery limit
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from importlib import resources
from pathlib import Path

from .errors import NoPreimage, NotSeparating, ScaleError, SepsymError, TheoremViolation
from .gf import field_of_order
from .multisym import (
    DEFAULT_MULTI_CAP,
    FAMILIES,
    family,
    is_separating_multi,
    multi_bounds,
    multi_orbit_count,
)
from .orbits import DEFAULT_CAP, orbit_count, orbit_from_vector, scale_by_p
from .separating import (
    WitnessPair,
    bounds_report,
    index_set,
    irreplaceable_witness,
    is_separating,
    lacunary_check,
    minimal_subsets,
    reconstruct,
)

EXIT_OK = 0
EXIT_FALSIFIED = 2
EXIT_NOT_FOUND = 3
EXIT_USAGE = 64
EXIT_SCALE = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _int_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return [int(text)]
        return list(range(int(lo), int(hi) + 1))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _render(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in records)
    keys: list[str] = []
    for r in records:
        keys.extend(k for k in r if k not in keys)

    def cell(value):
        return json.dumps(value) if isinstance(value, (list, dict)) else ("" if value is None else str(value))

    rows = [[cell(r.get(k)) for k in keys] for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        writer.writerows(rows)
        return buf.getvalue()
    widths = [max([len(k)] + [len(row[i]) for row in rows]) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


# --- subcommands -------------------------------------------------------------

def cmd_verify_main(args) -> tuple[int, list[dict]]:
    field = field_of_order(args.q)
    degrees = index_set(args.q, args.n)
    result = is_separating(field, args.n, degrees, cap=args.cap, workers=args.workers)
    record = {
        "q": args.q,
        "n": args.n,
        "indexSet": list(degrees),
        "orbitCount": str(orbit_count(args.q, args.n)),
        "separating": bool(result),
    }
    if result:
        return EXIT_OK, [record]
    record["witness"] = result.witness.to_json()
    return EXIT_FALSIFIED, [record]


def _read_values(path: str) -> dict[int, int]:
    try:
        raw = json.loads(Path(path).read_text())
        if not isinstance(raw, dict):
            raise ValueError("values file must hold a JSON object")
        return {int(k): int(v) for k, v in raw.items()}
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed values file {path}: {exc}")


def cmd_reconstruct(args) -> tuple[int, list[dict]]:
    field = field_of_order(args.q)
    values = _read_values(args.values)
    try:
        orbit = reconstruct(field, args.n, values, allow_extended=args.allow_q9)
    except NoPreimage:
        return EXIT_NOT_FOUND, [{"q": args.q, "n": args.n, "orbit": "NO_PREIMAGE"}]
    except ScaleError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc))
    return EXIT_OK, [{"q": args.q, "n": args.n, "orbit": orbit.literal()}]


def cmd_search(args) -> tuple[int, list[dict]]:
    field = field_of_order(args.q)
    ks = range(1, args.n + 1) if args.all_k else [args.k]
    records = []
    found = False
    for k in ks:
        if not 1 <= k <= args.n:
            raise UsageError(f"need 1 <= k <= n, got k={k}")
        pair = irreplaceable_witness(field, args.n, k, cap=args.cap, workers=args.workers)
        if pair is None:
            records.append({"q": args.q, "n": args.n, "k": k, "kind": None, "v": None, "w": None})
        else:
            found = True
            records.append(pair.to_json())
    if args.all_k or found:
        return EXIT_OK, records
    return EXIT_NOT_FOUND, records


def cmd_minimal(args) -> tuple[int, list[dict]]:
    field = field_of_order(args.q)
    degrees = args.degrees if args.degrees is not None else list(index_set(args.q, args.n))
    try:
        subsets = minimal_subsets(
            field, args.n, degrees, args.mode, cap=args.cap, workers=args.workers
        )
    except NotSeparating:
        return EXIT_NOT_FOUND, [{"q": args.q, "n": args.n, "degrees": degrees, "separating": False}]
    return EXIT_OK, [
        {"q": args.q, "n": args.n, "mode": args.mode, "minimal": list(s)} for s in subsets
    ]


def cmd_bounds(args) -> tuple[int, list[dict]]:
    records = []
    status = EXIT_OK
    field = field_of_order(args.q)
    for n in args.n:
        report = bounds_report(args.q, n)
        if report.defect is not None and report.defect > field.p - 2 and n >= 1:
            status = EXIT_FALSIFIED
        records.append(report.to_json())
    return status, records


def cmd_multisym(args) -> tuple[int, list[dict]]:
    field = field_of_order(args.q)
    records = [multi_bounds(field, args.m, args.n).to_json()]
    if args.count_only:
        return EXIT_OK, records
    cap = args.cap if args.cap is not None else DEFAULT_MULTI_CAP
    if multi_orbit_count(args.q, args.m, args.n) > cap:
        records.append({"verification": "skipped", "reason": f"orbit count exceeds cap {cap}"})
        return EXIT_SCALE, records
    names = FAMILIES if args.family == "all" else [args.family]
    status = EXIT_OK
    for name in names:
        members = family(name, field, args.m, args.n)
        result = is_separating_multi(field, args.m, args.n, members, cap=cap)
        record = {"family": name, "members": len(members), "separating": bool(result)}
        if not result:
            record["witness"] = result.witness.to_json()
            status = EXIT_FALSIFIED
        records.append(record)
    return status, records


def cmd_lacunary(args) -> tuple[int, list[dict]]:
    field = field_of_order(args.q)
    if any(not 0 <= c < field.q for c in args.f + args.g):
        raise UsageError("coefficients must be field-element indices")
    result = lacunary_check(field, args.f, args.g)
    record = {"q": args.q, "n": len(args.f) - 1, **result.to_json()}
    return (EXIT_NOT_FOUND if result.status == "not_split" else EXIT_OK), [record]


def load_fixtures(path: str | None = None) -> list[dict]:
    if path is None:
        text = resources.files("sepsym").joinpath("data/witness_table.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


def cmd_witness_table(args) -> tuple[int, list[dict]]:
    try:
        rows = load_fixtures(args.fixtures)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read fixtures: {exc}")
    records = []
    status = EXIT_OK
    for row in rows:
        field = field_of_order(row["q"])
        v = orbit_from_vector(field, row["v"])
        w = orbit_from_vector(field, row["w"])
        if v.n != row["n"] or w.n != row["n"]:
            raise UsageError(f"fixture row {row} has vectors of the wrong length")
        pair = WitnessPair(v, w, row["k"], "irreplaceable")
        if args.lift:
            m = field.p**args.lift * row["n"]
            pair = WitnessPair(
                scale_by_p(v, args.lift, m), scale_by_p(w, args.lift, m),
                field.p**args.lift * row["k"], "irreplaceable",
            )
        ok = pair.satisfies_vw()
        status = status if ok else EXIT_FALSIFIED
        records.append({**pair.to_json(), "ok": ok})
    return status, records


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--cap", type=_positive, default=None, help="enumeration cap")
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = _Parser(prog="sepsym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-main", parents=[common], help="check [n]_q separates exhaustively")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify_main)

    p = sub.add_parser("reconstruct", parents=[common], help="recover an orbit from its values")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--values", required=True, help='JSON object {"degree": element, ...}')
    p.add_argument("--allow-q9", action="store_true", help="permit q = 9 digit recovery")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("search", parents=[common], help="search irreplaceability witnesses")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int)
    group.add_argument("--all-k", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("minimal", parents=[common], help="minimal separating subsets")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degrees", type=_int_list, default=None, help="default: [n]_q")
    p.add_argument("--mode", choices=("all", "one_greedy"), default="all")
    p.set_defaults(func=cmd_minimal)

    p = sub.add_parser("bounds", parents=[common], help="set size against the lower bound ceil(log_q #orbits)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_int_range, required=True, help="N or A..B")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("multisym", parents=[common], help="multisymmetric families")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=(*FAMILIES, "all"), default="all")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_multisym)

    p = sub.add_parser("lacunary", parents=[common], help="compare split monic polynomials")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--f", type=_int_list, required=True, help="coefficients, low to high")
    p.add_argument("--g", type=_int_list, required=True, help="coefficients, low to high")
    p.set_defaults(func=cmd_lacunary)

    p = sub.add_parser("witness-table", parents=[common], help="replay the witness fixtures")
    p.add_argument("--fixtures", default=None)
    p.add_argument("--lift", type=int, default=0, help="also scale each witness by p^LIFT")
    p.set_defaults(func=cmd_witness_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.cap is None and args.command != "multisym":
        args.cap = DEFAULT_CAP
    try:
        if isinstance(getattr(args, "n", None), int) and args.n < 0:
            raise UsageError("n must be non-negative")
        status, records = args.func(args)
    except UsageError as exc:
        print(f"sepsym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScaleError as exc:
        print(f"sepsym: refused: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except TheoremViolation as exc:
        print(f"sepsym: FALSIFIED: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (SepsymError, ValueError) as exc:
        print(f"sepsym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = _render(records, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
