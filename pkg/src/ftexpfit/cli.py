"""The ``ftexpfit`` command line: smooth, fit, eval, run, verify-paper.

Orchestration only; all behavior lives in the library modules.  Exit
codes follow one contract everywhere: 0 success, 1 numeric failure
(iteration stalled, singular system, residual out of tolerance), 2
input failure (unreadable or malformed files, inadmissible series, bad
flags).  Diagnostics go to stderr through logging, controlled by the
FT_EXPFIT_LOG environment variable (off, warn, debug); results and
summaries go to stdout; artifacts go to the paths the caller named.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import warnings

from .errors import (
    ConjugateClosureError,
    ConvergenceError,
    DimensionMismatchError,
    DomainError,
    DuplicateAbscissaError,
    FitResidualError,
    InsufficientDataError,
    ParseError,
    RootAtZeroError,
    SchemaError,
    SingularMatrixError,
    TooShortError,
    ValidationError,
)
from .expfit import Estimate, Given, evaluate, evaluate_grid, fit, solve_coefficients
from .fixtures import fixture_path
from .io import (
    read_exponents,
    read_model,
    read_nodes_csv,
    read_series_csv,
    write_grid_csv,
    write_model,
    write_nodes_csv,
)
from .series import smooth

__all__ = ["main"]

logger = logging.getLogger("ftexpfit")

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_INPUT = 2

_INPUT_ERRORS = (
    ValidationError,
    TooShortError,
    ParseError,
    SchemaError,
    DuplicateAbscissaError,
    DimensionMismatchError,
    InsufficientDataError,
    OSError,
    ValueError,
)
_NUMERIC_ERRORS = (
    ConvergenceError,
    SingularMatrixError,
    RootAtZeroError,
    ConjugateClosureError,
    FitResidualError,
    DomainError,
    OverflowError,
)

# verify-paper tolerances: published digits are 8 decimal places, so
# 1e-6 is binding for node values; coefficient digits may carry
# transcription error, so 1e-4 relative is advisory only.
_NODE_TOL = 1e-6
_COEFF_REL_TOL = 1e-4

_FIXTURE_NAMES = ("czech_inflation.csv", "table2_nine.csv", "table2_ten.csv", "eq2_model.json")


def _configure_logging() -> None:
    level_name = os.environ.get("FT_EXPFIT_LOG", "warn").strip().lower()
    levels = {"off": logging.CRITICAL + 10, "warn": logging.WARNING, "debug": logging.DEBUG}
    level = levels.get(level_name)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    root = logging.getLogger("ftexpfit")
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(level if level is not None else logging.WARNING)
    if level is None and level_name:
        logger.warning("unknown FT_EXPFIT_LOG value %r, using 'warn'", level_name)


def _log_warning(message, category, filename, lineno, file=None, line=None):
    logger.warning("%s: %s", category.__name__, message)


def _grid_spec(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be START:STOP:STEP, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid components must be numbers, got {text!r}")
    return start, stop, step


def _add_exponent_flags(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--exponents", metavar="F",
                       help="JSON file with exponents (a saved model or a bare list)")
    group.add_argument("--estimate", metavar="M", type=int,
                       help="estimate M exponents from the nodes by linear prediction")
    sub.add_argument("--symmetrize", action="store_true",
                     help="estimate M/2 exponents and mirror them through negation")
    sub.add_argument("--resample", metavar="N", type=int, default=None,
                     help="uniform resample count for estimation (default max(4M, 32))")


def _exponent_spec(args) -> Given | Estimate:
    if args.exponents is not None:
        if args.symmetrize or args.resample is not None:
            raise ValueError("--symmetrize/--resample only apply with --estimate")
        return Given(exponents=tuple(read_exponents(args.exponents)))
    return Estimate(m=args.estimate, symmetrize=args.symmetrize, resample_count=args.resample)


def _render(path: str, series=None, nodes=None, curve=None, title=None) -> None:
    # imported lazily so data-only usage never touches matplotlib
    from .plotting import render_figure

    render_figure(path, series=series, nodes=nodes, curve=curve, title=title)
    print(f"rendered figure {path}")


def cmd_smooth(args) -> int:
    series = read_series_csv(args.input)
    smoothed = smooth(series)
    write_nodes_csv(args.output, smoothed)
    print(f"smoothed {len(series)} samples into {len(smoothed)} nodes: {args.output}")
    if args.plot:
        _render(args.plot, series=series, nodes=smoothed.nodes, title="geometric-median smoothing")
    return EXIT_OK


def cmd_fit(args) -> int:
    nodes = read_nodes_csv(args.input)
    model = fit(nodes, _exponent_spec(args), tol=args.tol)
    write_model(args.output, model)
    print(f"fitted {len(model.terms)} terms to {len(nodes)} nodes: {args.output}")
    print(f"fit residual {model.fit_residual!r}")
    return EXIT_OK


def cmd_eval(args) -> int:
    model = read_model(args.model)
    start, stop, step = args.grid
    rows = evaluate_grid(model, start, stop, step)
    write_grid_csv(args.output, rows)
    worst_imag = max((row[2] for row in rows), default=0.0)
    print(f"evaluated {len(rows)} grid points: {args.output}")
    print(f"max imag residual {worst_imag!r}")
    if args.plot:
        _render(args.plot, nodes=model.nodes, curve=rows, title="exponential-sum interpolation")
    return EXIT_OK


def cmd_run(args) -> int:
    os.makedirs(args.output_dir, exist_ok=True)
    series = None
    if args.nodes is not None:
        nodes = read_nodes_csv(args.nodes)
        print(f"using {len(nodes)} nodes from {args.nodes}")
        if args.input is not None:
            # series is plotted for context but takes no part in the fit
            series = read_series_csv(args.input)
    else:
        if args.input is None:
            raise ValueError("run needs --input (series to smooth) or --nodes (ready nodes)")
        series = read_series_csv(args.input)
        smoothed = smooth(series)
        nodes_path = os.path.join(args.output_dir, "nodes.csv")
        write_nodes_csv(nodes_path, smoothed)
        nodes = list(smoothed.nodes)
        print(f"smoothed {len(series)} samples into {len(nodes)} nodes: {nodes_path}")

    model = fit(nodes, _exponent_spec(args), tol=args.tol)
    model_path = os.path.join(args.output_dir, "model.json")
    write_model(model_path, model)
    print(f"fitted {len(model.terms)} terms: {model_path}")
    print(f"fit residual {model.fit_residual!r}")

    if args.grid is not None:
        start, stop, step = args.grid
    else:
        ts = [n.x for n in nodes]
        start, stop = min(ts), max(ts)
        step = (stop - start) / 100 if stop > start else 1.0
    rows = evaluate_grid(model, start, stop, step)
    grid_path = os.path.join(args.output_dir, "grid.csv")
    write_grid_csv(grid_path, rows)
    print(f"evaluated {len(rows)} grid points: {grid_path}")
    if args.plot:
        _render(args.plot, series=series, nodes=nodes, curve=rows, title="smoothing and interpolation")
    return EXIT_OK


def _verify_fixture_paths(data_dir: str | None) -> dict[str, str]:
    if data_dir is None:
        return {name: fixture_path(name) for name in _FIXTURE_NAMES}
    return {name: os.path.join(data_dir, name) for name in _FIXTURE_NAMES}


def cmd_verify_paper(args) -> int:
    paths = _verify_fixture_paths(args.data_dir)
    series = read_series_csv(paths["czech_inflation.csv"])
    nine = read_nodes_csv(paths["table2_nine.csv"])
    ten = read_nodes_csv(paths["table2_ten.csv"])
    reference = read_model(paths["eq2_model.json"])

    ok = True

    smoothed = smooth(series)
    if len(smoothed.nodes) != len(nine):
        ok = False
        print(f"BINDING FAIL: smoother produced {len(smoothed.nodes)} nodes, published table has {len(nine)}")
    else:
        worst = 0.0
        for k, (got, want) in enumerate(zip(smoothed.nodes, nine)):
            err = max(abs(got.x - want.x), abs(got.y - want.y))
            worst = max(worst, err)
            if err > _NODE_TOL:
                ok = False
                print(
                    f"BINDING FAIL: smoothed node {k} = ({got.x!r}, {got.y!r}), "
                    f"published ({want.x!r}, {want.y!r}), error {err:.3e}"
                )
        if worst <= _NODE_TOL:
            print(f"BINDING PASS: all {len(nine)} smoothed nodes match the published table "
                  f"(worst error {worst:.3e}, tolerance {_NODE_TOL:g})")

    refit = solve_coefficients(ten, reference.exponents)
    worst = 0.0
    for k, node in enumerate(ten):
        value, _ = evaluate(refit, node.x)
        err = abs(value - node.y)
        worst = max(worst, err)
        if err > _NODE_TOL:
            ok = False
            print(
                f"BINDING FAIL: refitted model at node {k} (t={node.x!r}) gives {value!r}, "
                f"published {node.y!r}, error {err:.3e}"
            )
    if worst <= _NODE_TOL:
        print(f"BINDING PASS: refitted coefficients reproduce all {len(ten)} node values "
              f"(worst error {worst:.3e}, tolerance {_NODE_TOL:g})")

    worst_rel = 0.0
    for k, (got, printed) in enumerate(zip(refit.coefficients, reference.coefficients)):
        rel = abs(got - printed) / max(abs(printed), 1e-30)
        worst_rel = max(worst_rel, rel)
        if rel > _COEFF_REL_TOL:
            print(f"ADVISORY: coefficient {k} differs from the published digits by {rel:.3e} relative")
    if worst_rel <= _COEFF_REL_TOL:
        print(f"ADVISORY PASS: published coefficients recovered "
              f"(worst relative difference {worst_rel:.3e}, tolerance {_COEFF_REL_TOL:g})")
    else:
        print("ADVISORY: coefficient differences are reported, not fatal; "
              "node reproduction above is the binding check")

    print("KNOWN DISCREPANCY: the published node table lists 10 nodes, but 11 samples "
          "give 9 sliding windows; the extra final node is carried as data only")
    print("KNOWN DISCREPANCY: the final published node lies above every value of its "
          "only candidate window, so it cannot be that window's geometric median")

    if args.plot:
        curve = evaluate_grid(reference, min(n.x for n in ten), max(n.x for n in ten),
                              (max(n.x for n in ten) - min(n.x for n in ten)) / 200)
        _render(args.plot, series=series, nodes=ten, curve=curve, title="published-example verification")

    print("verify-paper:", "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_NUMERIC


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftexpfit",
        description="Smooth a series with sliding-triple geometric medians and "
                    "interpolate the nodes exactly by a sum of complex exponentials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_smooth = sub.add_parser("smooth", help="replace sliding sample triples by their median points")
    p_smooth.add_argument("--input", metavar="F", required=True, help="series CSV (t,value or year,value)")
    p_smooth.add_argument("--output", metavar="F", required=True, help="nodes CSV to write")
    p_smooth.add_argument("--plot", metavar="F", help="also render a figure to this path")
    p_smooth.set_defaults(handler=cmd_smooth)

    p_fit = sub.add_parser("fit", help="interpolate nodes exactly by an exponential sum")
    p_fit.add_argument("--input", metavar="F", required=True, help="nodes CSV")
    p_fit.add_argument("--output", metavar="F", required=True, help="model JSON to write")
    _add_exponent_flags(p_fit)
    p_fit.add_argument("--tol", metavar="R", type=float, default=None,
                       help="override the interpolation residual tolerance")
    p_fit.set_defaults(handler=cmd_fit)

    p_eval = sub.add_parser("eval", help="evaluate a model on a uniform grid")
    p_eval.add_argument("--model", metavar="F", required=True, help="model JSON")
    p_eval.add_argument("--grid", metavar="START:STOP:STEP", type=_grid_spec, required=True)
    p_eval.add_argument("--output", metavar="F", required=True, help="grid CSV to write")
    p_eval.add_argument("--plot", metavar="F", help="also render a figure to this path")
    p_eval.set_defaults(handler=cmd_eval)

    p_run = sub.add_parser("run", help="smooth, fit, and evaluate in one pass")
    p_run.add_argument("--input", metavar="F", help="series CSV to smooth")
    p_run.add_argument("--nodes", metavar="F", help="skip smoothing and fit these nodes")
    p_run.add_argument("--output-dir", metavar="D", required=True,
                       help="directory for nodes.csv, model.json, grid.csv")
    _add_exponent_flags(p_run)
    p_run.add_argument("--grid", metavar="START:STOP:STEP", type=_grid_spec, default=None,
                       help="evaluation grid (default: node span in 100 steps)")
    p_run.add_argument("--tol", metavar="R", type=float, default=None,
                       help="override the interpolation residual tolerance")
    p_run.add_argument("--plot", metavar="F", help="also render a figure to this path")
    p_run.set_defaults(handler=cmd_run)

    p_verify = sub.add_parser("verify-paper",
                              help="check the bundled published example end to end")
    p_verify.add_argument("--data-dir", metavar="D", default=None,
                          help="read fixtures from this directory instead of the bundled ones")
    p_verify.add_argument("--plot", metavar="F", help="also render a figure to this path")
    p_verify.set_defaults(handler=cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    _configure_logging()
    previous_showwarning = warnings.showwarning
    warnings.showwarning = _log_warning
    try:
        return args.handler(args)
    except _NUMERIC_ERRORS as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except _INPUT_ERRORS as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        warnings.showwarning = previous_showwarning


if __name__ == "__main__":
    sys.exit(main())
