"""Command line entry point: ``gridshell {homology|shelling|flowcat|verify} GRID ...``.

``GRID`` is a grid file, the name of a corpus entry, or ``corpus`` for all
of them.  Exit codes: 0 ok, 1 bad input, 2 a cap or budget was exceeded,
3 an invariant failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .checks import (
    comparability_report,
    decomposition_report,
    differential_report,
    dumps,
    flowcat_sweep,
    grading_report,
    presentation_report,
    shelling_sweep,
    thinness_sweep,
)
from .corpus import grid_from_text, grid_hash, load_corpus, resolve
from .errors import CapExceeded, GridError
from .homology import dims_to_rows, minus_homology_truncated, minus_sectors, tilde_homology
from .shelling import CutLine

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_INVARIANT = 0, 1, 2, 3

VERIFY_SAMPLES = 2000


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _nonneg(value: str) -> int:
    k = int(value)
    if k < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return k


def _positive(value: str) -> int:
    k = int(value)
    if k < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return k


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gridshell", description="Grid-state posets: homology, EL-shellings, flow categories.")
    p.add_argument("--version", action="version", version=f"gridshell {__version__}")
    p.add_argument("command", choices=["homology", "shelling", "flowcat", "verify"])
    p.add_argument("grid", help="grid file, corpus name, or 'corpus'")
    p.add_argument("--flavor", choices=["tilde", "minus"], default="tilde")
    p.add_argument("--floor", type=int, help="Maslov floor of the truncated minus complex")
    p.add_argument("--sector", type=int, help="only this Alexander grading")
    p.add_argument("--line-pos", default="all", help="cut line x-coordinate (half-integer) or 'all'")
    p.add_argument("--interval-cap", type=_nonneg, default=4, help="longest interval swept (elements on a chain)")
    p.add_argument("--gap-cap", type=_nonneg, default=4, help="largest Maslov gap of a morphism space")
    p.add_argument("--budget", type=_positive, help="chain budget (shelling) or shelling-search budget (flowcat)")
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--export-dir", help="flowcat: write facet lists and certificates here")
    return p


def _targets(spec: str) -> list[tuple[str, str]]:
    if spec == "corpus":
        return load_corpus()
    try:
        return [resolve(spec)]
    except (FileNotFoundError, OSError) as exc:
        raise InputError(str(exc)) from None


def _line_positions(arg: str, n: int) -> list[Fraction] | None:
    if arg == "all":
        return None
    try:
        return [CutLine.at(Fraction(arg)).position]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad --line-pos {arg!r}: {exc}") from None


def homology_report(text: str, flavor: str, floor: int | None = None, sector: int | None = None) -> dict:
    G = grid_from_text(text)
    if flavor == "tilde":
        dims = tilde_homology(G)
        if sector is not None:
            dims = {k: v for k, v in dims.items() if k[1] == sector}
        valid_above = None
    else:
        if floor is None:
            raise InputError("--flavor minus needs --floor")
        sectors = [sector] if sector is not None else minus_sectors(G, floor)
        dims = {}
        for a in sectors:
            d, valid_above = minus_homology_truncated(G, a, floor)
            dims.update(d)
        valid_above = floor + 1  # also when no sector was computed
    return {"version": flavor, "grid": grid_hash(text), "dims": dims_to_rows(dims), "valid_above": valid_above}


def _verify(text: str, threads: int) -> dict:
    """Invariant checks that fit the grid's size; thinness first so its dump wins."""
    G = grid_from_text(text)
    out = {}
    if G.n <= 5:
        out["thinness"] = thinness_sweep(text, threads)
    out["differential"] = differential_report(text, threads=threads)
    if G.n <= 5:
        out["gradings"] = grading_report(text, threads)
    if G.n <= 3:
        out["comparability"] = comparability_report(text, 4, threads)
    if G.n <= 4:
        out["decomposition"] = decomposition_report([text], VERIFY_SAMPLES, seed=0, threads=threads)
    out["skipped"] = sorted({"thinness", "gradings", "comparability", "decomposition"} - set(out))
    return out


def _passed(rep) -> bool:
    if isinstance(rep, dict):
        if rep.get("passed") is False:
            return False
        return all(_passed(v) for v in rep.values())
    return True


def _first_failure(rep):
    """The first listed failure, depth first, for the counterexample dump."""
    if isinstance(rep, dict):
        if rep.get("passed") is False and rep.get("failures"):
            return rep["failures"][0]
        for v in rep.values():
            f = _first_failure(v)
            if f is not None:
                return f
    return None


def _render_text(rep, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in rep.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_render_text(v, indent + 1))
        elif k == "dims":
            lines.append(f"{pad}{'M':>4} {'A':>4} {'dim':>5}")
            lines.extend(f"{pad}{m:>4} {a:>4} {d:>5}" for m, a, d in v)
        elif k == "grid" and isinstance(v, str) and len(v) == 64:
            lines.append(f"{pad}{k}: {v[:12]}")
        else:
            lines.append(f"{pad}{k}: {json.dumps(v)}")
    return "\n".join(l for l in lines if l)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        targets = _targets(args.grid)
        reports = {}
        for name, text in targets:
            G = grid_from_text(text)
            if args.command == "homology":
                reports[name] = homology_report(text, args.flavor, args.floor, args.sector)
            elif args.command == "shelling":
                kw = {} if args.budget is None else {"budget": args.budget}
                reports[name] = shelling_sweep(
                    text, args.interval_cap, _line_positions(args.line_pos, G.n), args.threads, **kw
                )
            elif args.command == "flowcat":
                kw = {} if args.budget is None else {"budget": args.budget}
                export = None
                if args.export_dir:
                    export = args.export_dir if len(targets) == 1 else f"{args.export_dir}/{name}"
                reports[name] = flowcat_sweep(text, args.gap_cap, args.threads, export_dir=export, **kw)
            else:
                reports[name] = _verify(text, args.threads)
        if args.command == "verify" and args.grid == "corpus":
            reports["presentations"] = presentation_report(dict(targets))
    except InputError as exc:
        print(f"gridshell: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GridError as exc:
        print(f"gridshell: invalid grid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"gridshell: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP

    report = reports[targets[0][0]] if len(targets) == 1 else reports
    if args.json:
        sys.stdout.write(dumps(report))
    else:
        print(_render_text(report))
    if args.command in ("shelling", "flowcat", "verify") and not _passed(report):
        bad = _first_failure(report)
        print("gridshell: invariant failure", file=sys.stderr)
        if bad is not None:
            print(json.dumps(bad, indent=2, sort_keys=True), file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
