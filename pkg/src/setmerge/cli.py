"""Command-line front end: ``setmerge simplify|render|stats``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from setmerge.datasets import BUILTIN
from setmerge.dual import DualGraphError
from setmerge.pipeline import STAGES, RunStats, aggregate, render, run_stats, simplify, summary_line
from setmerge.sets import SetSystem, SetSystemError, parse_set_system

log = logging.getLogger("setmerge")
INPUT_SUFFIXES = {".txt", ".sets", ".json"}


def load_input(source: str, fmt: str | None) -> tuple[SetSystem, dict[str, str] | None]:
    """Read a set system from a path, ``-`` for stdin, or ``builtin:<name>``."""
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in BUILTIN:
            raise SetSystemError(f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTIN))}")
        make, titles = BUILTIN[name]
        return make(), titles()
    text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    return parse_set_system(text, fmt), None


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("lines", "structured"), default=None,
                   help="input format (default: detect)")
    p.add_argument("--genus-removal", action="store_true", help="also merge sets until no set has holes")
    p.add_argument("--stage", choices=STAGES, default="final", help="which dual graph to output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="setmerge", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simplify", help="merge sets until an Euler diagram exists")
    p.add_argument("input")
    _add_common(p)
    p.add_argument("--out", help="directory for dual.json and merges.json (default: print the merge table)")

    p = sub.add_parser("render", help="draw the simplified system as SVG")
    p.add_argument("input")
    _add_common(p)
    p.add_argument("--out", required=True, help="SVG output path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width", type=float, default=800.0)
    p.add_argument("--refine-iterations", type=int, default=500)
    p.add_argument("--smooth-iterations", type=int, default=100)
    p.add_argument("--show-dual", action="store_true", help="overlay the dual graph")
    p.add_argument("--coords", help="also write zone and curve coordinates as JSON")

    p = sub.add_parser("stats", help="merge statistics for a directory of set systems")
    p.add_argument("directory")
    p.add_argument("--format", choices=("lines", "structured"), default=None)
    p.add_argument("--genus-removal", action="store_true")
    p.add_argument("--csv", help="CSV output path (default: stdout)")
    return parser


def cmd_simplify(args) -> int:
    system, _ = load_input(args.input, args.format)
    result = simplify(system, genus=args.genus_removal)
    graph = result.stage(args.stage)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "dual.json").write_text(graph.to_json(), encoding="utf-8")
        (out / "merges.json").write_text(result.log.to_json(), encoding="utf-8")
    else:
        sys.stdout.write(result.log.to_table())
    print(summary_line(result))
    return 0


def cmd_render(args) -> int:
    from setmerge.pipeline import draw
    from setmerge.svg import coordinates_json, emit_svg

    system, titles = load_input(args.input, args.format)
    result = simplify(system, genus=args.genus_removal)
    graph = result.stage(args.stage)
    if args.coords:
        diagram = draw(graph, args.seed, args.refine_iterations, args.smooth_iterations)
        svg = emit_svg(diagram, titles=titles, show_dual=args.show_dual, width=args.width)
        Path(args.coords).write_text(coordinates_json(diagram), encoding="utf-8")
    else:
        svg = render(graph, seed=args.seed, titles=titles, show_dual=args.show_dual, width=args.width,
                     refine_iterations=args.refine_iterations, smooth_iterations=args.smooth_iterations)
    Path(args.out).write_text(svg, encoding="utf-8")
    print(summary_line(result))
    return 0


def cmd_stats(args) -> int:
    directory = Path(args.directory)
    files = sorted(p for p in directory.iterdir() if p.is_file() and p.suffix in INPUT_SUFFIXES)
    rows: list[RunStats] = []
    failures = 0
    for path in files:
        try:
            system = parse_set_system(path.read_text(encoding="utf-8"), args.format)
            rows.append(run_stats(path.name, system, genus=args.genus_removal))
        except (OSError, SetSystemError, DualGraphError) as exc:
            failures += 1
            log.error("%s: %s", path.name, exc)
    handle = open(args.csv, "w", newline="", encoding="utf-8") if args.csv else sys.stdout
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(RunStats.header())
        for r in rows:
            writer.writerow(r.row())
        writer.writerow(_aggregate_row(rows))
    finally:
        if args.csv:
            handle.close()
    means = aggregate(rows)
    print(" ".join(f"{k}={v:.3f}" for k, v in means.items()), file=sys.stderr)
    if failures:
        log.warning("%d of %d files failed", failures, len(files))
    return 0


def _aggregate_row(rows: list[RunStats]) -> list:
    out = []
    for name in RunStats.header():
        if name == "name":
            out.append("mean")
        elif rows:
            out.append(f"{sum(getattr(r, name) for r in rows) / len(rows):.4f}")
        else:
            out.append("")
    return out


COMMANDS = {"simplify": cmd_simplify, "render": cmd_render, "stats": cmd_stats}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (OSError, SetSystemError, DualGraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
