"""Command-line interface: ``vobs solve | predict | analyze | validate``."""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

from .catalog import BUILTINS, CatalogError, builtin
from .equilibrium import InvariantViolation, SolverError
from .gamespec import GameSpecError, load_game
from .model import GameValidationError, validate
from .rational import NumberFormatError
from .solve import CONCEPTS, solve

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3

FAMILIES = {
    "td": ("td_sim", "td_seq"),
    "trust": ("trust_if", "trust_tf"),
    "weak_pd": ("weak_pd",),
}


class InputError(Exception):
    """Bad user input; reported on stderr with exit status 2."""


def _overrides(pairs: list[str]) -> dict[str, str]:
    out = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise InputError(f"--set expects key=value, got {pair!r}")
        out[key.strip()] = value.strip()
    return out


def _resolve_game(args):
    if bool(args.builtin) == bool(args.game):
        raise InputError("give exactly one of --builtin or --game")
    if args.builtin:
        return builtin(args.builtin, _overrides(args.set))
    if args.set:
        raise InputError("--set only applies to --builtin games")
    if not os.path.exists(args.game):
        raise InputError(f"{args.game}: no such file")
    game = load_game(args.game)
    violations = validate(game)
    if violations:
        raise GameValidationError(violations)
    return game


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_rows(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_solve(args) -> int:
    game = _resolve_game(args)
    result = solve(game, args.concept)
    if args.format == "json":
        text = result.to_json()
    elif args.format == "text":
        text = result.to_text()
    else:
        text = _csv_rows(["p1", "p2", "u1", "u2"],
                         [o["actions"] + o["payoffs"] for o in result.outcomes])
    _emit(text, args.out)
    return EXIT_OK


def predictions(family: str) -> list[dict]:
    """Nash, refinement and GVO predictions for each timing variant of a family."""
    rows = []
    for name in FAMILIES[family]:
        game = builtin(name)
        sequential = game.timing.value != "simultaneous"
        concepts = ["nash", "vo", "gvo"] if sequential else ["nash", "gvo"]
        for concept in concepts:
            res = solve(game, concept)
            pred = res.verdict if concept == "vo" else None
            outcomes = ["(" + ", ".join(o["actions"]) + ")" for o in res.outcomes]
            rows.append({
                "game": name,
                "timing": game.timing.value,
                "concept": concept,
                "prediction": pred or " ".join(outcomes),
                "hypothesis": _hypothesis_tag(family, concept),
            })
    return rows


def _hypothesis_tag(family: str, concept: str) -> str:
    if family == "weak_pd":
        return "-"
    base = "1" if family == "td" else "2"
    return base + "'" if concept == "gvo" else base


def cmd_predict(args) -> int:
    family = args.builtin
    for fam, names in FAMILIES.items():
        if family in names:
            family = fam
    if family not in FAMILIES:
        raise InputError(f"unknown game family {args.builtin!r}; "
                         f"choose from {', '.join(list(FAMILIES) + list(BUILTINS))}")
    rows = predictions(family)
    if args.format == "json":
        import json
        text = json.dumps({"family": family, "rows": rows}, indent=2) + "\n"
    elif args.format == "csv":
        keys = ["game", "timing", "concept", "prediction", "hypothesis"]
        text = _csv_rows(keys, [[r[k] for k in keys] for r in rows])
    else:
        lines = [f"{'game':<10}{'timing':<14}{'concept':<9}{'hypothesis':<12}prediction"]
        lines += [f"{r['game']:<10}{r['timing']:<14}{r['concept']:<9}{r['hypothesis']:<12}"
                  f"{r['prediction']}" for r in rows]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    from .stats.data import ingest_csv
    from .stats.report import (deltas_csv, ecdf_csv, ecdf_series, hypothesis_report,
                               report_json, report_text)

    if not args.data or not os.path.exists(args.data):
        raise InputError(f"{args.data}: no such file")
    ds = ingest_csv(args.data)
    report = hypothesis_report(ds, args.alpha, directional_tail=args.tail == "directional")
    if args.out:
        os.makedirs(os.path.join(args.out, "ecdf"), exist_ok=True)
        files = {"report.json": report_json(report), "report.txt": report_text(report),
                 "deltas.csv": deltas_csv(ds)}
        for name, points in ecdf_series(ds).items():
            files[os.path.join("ecdf", f"{name}.csv")] = ecdf_csv(points)
        for name, text in files.items():
            with open(os.path.join(args.out, name), "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        return EXIT_OK
    if args.format == "json":
        sys.stdout.write(report_json(report))
    elif args.format == "text":
        sys.stdout.write(report_text(report))
    else:
        rows = [[name, v, f] for name, points in ecdf_series(ds).items()
                for v, f in (line.split(",") for line in ecdf_csv(points).splitlines()[1:])]
        sys.stdout.write(_csv_rows(["series", "value", "cumulative_fraction"], rows))
    return EXIT_OK


def cmd_validate(args) -> int:
    if not args.game or not os.path.exists(args.game):
        raise InputError(f"{args.game}: no such file")
    game = load_game(args.game)
    violations = validate(game)
    if violations:
        raise GameValidationError(violations)
    print(f"{args.game}: ok ({game.shape[0]}x{game.shape[1]}, {game.timing.value})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vobs", description="Solve and analyze games with unobservable sequential moves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def game_source(p):
        p.add_argument("--builtin", choices=BUILTINS, help="catalog game")
        p.add_argument("--game", metavar="PATH", help=".game file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a builtin parameter (repeatable)")

    p = sub.add_parser("solve", help="run one solution concept on a game")
    game_source(p)
    p.add_argument("--concept", choices=CONCEPTS, required=True)
    p.add_argument("--format", choices=("json", "text", "csv"), default="json")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("predict", help="compare concept predictions across timings")
    p.add_argument("--builtin", required=True, metavar="FAMILY",
                   help="td, trust, weak_pd, or any builtin name")
    p.add_argument("--format", choices=("json", "text", "csv"), default="text")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("analyze", help="run the timing-effect analysis on a choice CSV")
    p.add_argument("--data", required=True, metavar="CSV")
    p.add_argument("--out", metavar="DIR", help="write report files into this directory")
    p.add_argument("--format", choices=("json", "text", "csv"), default="json")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--tail", choices=("directional", "two_sided"), default="directional",
                   help="tail policy for the directional hypotheses")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("validate", help="parse and validate a .game file")
    p.add_argument("--game", required=True, metavar="PATH")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except GameSpecError as exc:
        where = getattr(args, "game", None) or "<input>"
        print(f"{where}:{exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, CatalogError, GameValidationError, SolverError,
            NumberFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        # DatasetError, IncompleteDesign and other input-shaped failures
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
