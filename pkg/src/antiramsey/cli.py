"""Command-line front end.

Exit codes: 0 success, 1 domain error (precondition, verification failure,
dead end, malformed graph), 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Callable, Sequence

from . import __version__, experiments
from .colouring import (
    ColouringError,
    DeadEnd,
    EdgeColouring,
    PreconditionError,
    colour_c4_rainbow_free,
    colour_rainbow_free,
    forces_rainbow_bruteforce,
    parse_certificate,
    verify_certificate,
)
from .cycles import cl_components, enumerate_cycles
from .density import DensityWitness, format_rational, max_2_density, max_density
from .graph import GraphError, parse_edge_list, sample_gnp, serialize_edge_list

logger = logging.getLogger("antiramsey")

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# -- io helpers ---------------------------------------------------------------------

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_graph(path: str):
    return parse_edge_list(_read_text(path))


def _write(args, text: str) -> None:
    if args.output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {args.output}: {exc.strerror}") from None


def _json(obj) -> str:
    return json.dumps(obj) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _witness_out(args, w: DensityWitness) -> str:
    if args.format == "csv":
        return _csv(["value", "vertices"], [[format_rational(w.value), " ".join(map(str, w.witness_vertices))]])
    return _json(w.to_json())


def _parse_list(text: str, kind: Callable, name: str) -> list:
    try:
        out = [kind(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{name}: expected a comma-separated list, got {text!r}") from None
    if not out:
        raise UsageError(f"{name}: empty list")
    return out


# -- subcommands ----------------------------------------------------------------------

def cmd_density(args) -> int:
    g = _read_graph(args.input)
    _write(args, _witness_out(args, max_density(g)))
    return EXIT_OK


def cmd_m2(args) -> int:
    g = _read_graph(args.input)
    _write(args, _witness_out(args, max_2_density(g)))
    return EXIT_OK


def cmd_cycles(args) -> int:
    g = _read_graph(args.input)
    cycles = enumerate_cycles(g, args.ell)
    if args.format == "csv":
        _write(args, _csv(["cycle"], [[" ".join(map(str, c.vertices))] for c in cycles]))
    else:
        _write(args, _json({"ell": args.ell, "count": len(cycles), "cycles": [list(c.vertices) for c in cycles]}))
    return EXIT_OK


def cmd_components(args) -> int:
    g = _read_graph(args.input)
    comps = cl_components(g, args.ell)
    if args.format == "csv":
        rows = [[i, " ".join(map(str, c.vertices))] for i, comp in enumerate(comps) for c in comp.member_cycles]
        _write(args, _csv(["component", "cycle"], rows))
    else:
        _write(args, _json({"ell": args.ell, "components": [c.to_json() for c in comps]}))
    return EXIT_OK


def _colour_rows(g, col: EdgeColouring) -> list[list[int]]:
    return [[u, v, col.assignment[(u, v)]] for u, v in g.sorted_edges()]


def cmd_colour(args) -> int:
    g = _read_graph(args.input)
    try:
        col = colour_c4_rainbow_free(g) if args.ell == 4 else colour_rainbow_free(g, args.ell)
    except PreconditionError as exc:
        detail = {"error": "precondition", "message": str(exc)}
        if exc.witness is not None:
            detail["witness"] = exc.witness.to_json()
        sys.stderr.write(_json(detail))
        return EXIT_DOMAIN
    except DeadEnd as exc:
        sys.stderr.write(_json({"error": "dead_end", "message": str(exc), "component": exc.component,
                                "reasons": exc.reasons}))
        return EXIT_DOMAIN
    cert = verify_certificate(g, args.ell, col)
    if args.format == "csv":
        _write(args, _csv(["u", "v", "colour"], _colour_rows(g, col)))
    else:
        _write(args, cert.dumps())
    return EXIT_OK if cert.ok else EXIT_DOMAIN


def cmd_verify(args) -> int:
    g, ell, col = parse_certificate(_read_text(args.input))
    if args.ell is not None and args.ell != ell:
        raise UsageError(f"--ell {args.ell} disagrees with the certificate's ell = {ell}")
    cert = verify_certificate(g, ell, col)
    if args.format == "csv":
        rainbow = "" if cert.rainbow_cycle is None else " ".join(map(str, cert.rainbow_cycle.vertices))
        _write(args, _csv(["proper", "rainbow"], [[str(cert.proper).lower(), rainbow]]))
    else:
        _write(args, cert.dumps())
    return EXIT_OK if cert.ok else EXIT_DOMAIN


def cmd_force_check(args) -> int:
    g = _read_graph(args.input)
    forced = forces_rainbow_bruteforce(g, args.ell)
    if args.format == "csv":
        _write(args, _csv(["forces_rainbow"], [[str(forced).lower()]]))
    else:
        _write(args, _json({"forces_rainbow": forced}))
    return EXIT_OK


def cmd_gnp(args) -> int:
    if (args.p is None) == (args.c is None):
        raise UsageError("give exactly one of --p and --c")
    if args.p is not None:
        p = args.p
    else:
        exponent = experiments.K24_EXPONENT if args.ell is None else experiments.scan_exponent(args.ell)
        p = experiments.edge_probability(args.c, args.n, exponent)
    g = sample_gnp(args.n, p, args.seed)
    if args.format == "json":
        _write(args, _json({"n": g.vertex_count, "p": p, "seed": args.seed,
                            "edges": [list(e) for e in g.sorted_edges()]}))
    elif args.format == "csv":
        _write(args, _csv(["u", "v"], g.sorted_edges()))
    else:
        _write(args, serialize_edge_list(g))
    return EXIT_OK


def _scan_out(args, records) -> str:
    if args.format == "json":
        cols = experiments.csv_columns(args.timing)
        rows = list(csv.DictReader(io.StringIO(experiments.emit_csv(records, args.timing))))
        return _json({"columns": cols, "records": rows})
    return experiments.emit_csv(records, args.timing)


def _scan_grid(args) -> dict:
    return {
        "n_list": _parse_list(args.n, int, "--n"),
        "c_list": _parse_list(args.c_grid, float, "--c-grid"),
        "trials": args.trials,
        "seed": args.seed,
        "workers": args.workers,
    }


def _finish_scan(args, records) -> int:
    _write(args, _scan_out(args, records))
    for cell in experiments.summarise(records):
        logger.info("n=%d c=%g: %d/%d", cell.n, cell.c, cell.hits, cell.trials)
    dead = experiments.dead_end_count(records)
    if dead:
        logger.error("%d dead ends", dead)
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_scan_k24(args) -> int:
    return _finish_scan(args, experiments.k24_presence_scan(**_scan_grid(args)))


def cmd_scan_obstruction(args) -> int:
    return _finish_scan(args, experiments.obstruction_scan(args.ell, **_scan_grid(args)))


def cmd_scan_colour(args) -> int:
    return _finish_scan(args, experiments.colourability_scan(args.ell, **_scan_grid(args)))


# -- parser ------------------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _ell(text: str) -> int:
    v = _positive(text)
    if v < 3:
        raise argparse.ArgumentTypeError("cycle length must be at least 3")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antiramsey", description="Rainbow cycles in proper edge colourings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-q", "--quiet", action="store_true", help="no progress output on standard error")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, func: Callable, help: str, fmt: str = "json") -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, description=help)
        p.set_defaults(func=func)
        p.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS,
                       help="no progress output on standard error")
        p.add_argument("--format", choices=("json", "csv"), default=fmt)
        p.add_argument("--output", help="write here instead of standard output")
        return p

    def with_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="edge-list file, or - for standard input")

    p = add("density", cmd_density, "maximum density m(G) with a witness set")
    with_input(p)
    p = add("m2", cmd_m2, "maximum 2-density m_2(H) with a witness set")
    with_input(p)
    for name, func, help in (
        ("cycles", cmd_cycles, "list the ell-cycles"),
        ("components", cmd_components, "C_ell-components with construction sequences"),
        ("colour", cmd_colour, "proper colouring without a rainbow ell-cycle, as a certificate"),
        ("force-check", cmd_force_check, "does every proper colouring contain a rainbow ell-cycle"),
    ):
        p = add(name, func, help)
        with_input(p)
        p.add_argument("--ell", type=_ell, required=True)
    p = add("verify", cmd_verify, "check a colouring certificate")
    p.add_argument("--input", required=True, help="certificate JSON, or - for standard input")
    p.add_argument("--ell", type=_ell, help="expected cycle length")

    p = add("gnp", cmd_gnp, "sample G(n, p); the edge-list format unless --format is given", fmt=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--c", type=float, help="use p = c * n^(-1/m_2(C_ell)), or n^(-3/4) without --ell")
    p.add_argument("--ell", type=_ell)
    p.add_argument("--seed", type=int, required=True)

    for name, func, help, needs_ell in (
        ("scan-k24", cmd_scan_k24, "K_{2,4} presence in G(n, c n^(-3/4))", False),
        ("scan-obstruction", cmd_scan_obstruction, "small dense subgraphs in G(n, c n^(-1/m_2(C_ell)))", True),
        ("scan-colour", cmd_scan_colour, "colour samples below the density bound and verify", True),
    ):
        p = add(name, func, help, fmt="csv")
        if needs_ell:
            p.add_argument("--ell", type=_ell, required=True)
        default_n = "20,40,60" if name == "scan-colour" else ",".join(map(str, experiments.DEFAULT_N))
        p.add_argument("--n", default=default_n, help="comma-separated sizes")
        p.add_argument("--c-grid", default=",".join(f"{c:g}" for c in experiments.DEFAULT_C))
        p.add_argument("--trials", type=_positive, default=experiments.DEFAULT_TRIALS)
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--workers", type=_positive, default=1)
        p.add_argument("--timing", action="store_true", help="add the elapsed_ms column")
    return parser


def _configure_logging(quiet: bool) -> None:
    for h in list(logger.handlers):
        logger.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.WARNING if quiet else logging.INFO)
    logger.propagate = False


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    _configure_logging(args.quiet)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"antiramsey: error: {exc}\n")
        return EXIT_USAGE
    except (GraphError, ColouringError, experiments.ExperimentError) as exc:
        sys.stderr.write(f"antiramsey: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
