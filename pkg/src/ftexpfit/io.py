"""Delimited and JSON persistence for series, nodes, models, and grids.

All writers are atomic (temp file in the destination directory, then
rename) and deterministic: floats are rendered with Python's shortest
round-trip repr and lines end with LF, so identical inputs give
byte-identical files.  The model document is JSON with an explicit
``format_version`` so future schema changes stay detectable.
"""
from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from typing import Iterable, Sequence

from .errors import ParseError, SchemaError
from .expfit import ExpModel, ExpTerm
from .geometry import Point2
from .series import SmoothedSeries, TimeSeries, validate, year_to_t

__all__ = [
    "MODEL_FORMAT_VERSION",
    "read_series_csv",
    "read_nodes_csv",
    "write_nodes_csv",
    "write_grid_csv",
    "read_model",
    "write_model",
    "read_exponents",
    "model_to_dict",
    "model_from_dict",
]

MODEL_FORMAT_VERSION = 1


def _atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_float(cell: str, line: int, what: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise ParseError(f"line {line}: {what} {cell!r} is not a number", line=line)


def _read_rows(path: str) -> tuple[list[str], list[tuple[int, list[str]]]]:
    """Header names and (line number, cells) data rows, blanks skipped."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header: list[str] | None = None
        rows: list[tuple[int, list[str]]] = []
        for cells in reader:
            if not cells or all(c.strip() == "" for c in cells):
                continue
            if header is None:
                header = [c.strip().lower() for c in cells]
            else:
                rows.append((reader.line_num, [c.strip() for c in cells]))
    if header is None:
        raise ParseError(f"{path}: no header row", line=1)
    return header, rows


def _abscissa_column(header: list[str], path: str) -> tuple[int, int, bool]:
    """Indexes of the abscissa and value columns, plus whether it is a year."""
    if "t" in header:
        t_col, is_year = header.index("t"), False
    elif "year" in header:
        t_col, is_year = header.index("year"), True
    else:
        raise ParseError(f"{path}: header must name a 't' or 'year' column", line=1)
    if "value" not in header:
        raise ParseError(f"{path}: header must name a 'value' column", line=1)
    return t_col, header.index("value"), is_year


def read_series_csv(path: str) -> TimeSeries:
    """Read and validate a series from CSV with header t,value or year,value.

    Year abscissae are converted through year_to_t.  Extra columns are
    ignored.  Raises ParseError with the offending line number for
    malformed cells and ValidationError for inadmissible series.
    """
    header, rows = _read_rows(path)
    t_col, v_col, is_year = _abscissa_column(header, path)
    samples = []
    for line, cells in rows:
        if len(cells) <= max(t_col, v_col):
            raise ParseError(f"line {line}: expected at least {max(t_col, v_col) + 1} columns", line=line)
        t = _parse_float(cells[t_col], line, "abscissa")
        if is_year:
            t = year_to_t(t)
        samples.append((t, _parse_float(cells[v_col], line, "value")))
    return validate(samples)


def read_nodes_csv(path: str) -> list[Point2]:
    """Read interpolation nodes from CSV (same header rules as series).

    Unlike read_series_csv this does not require increasing abscissae:
    smoothed node order is meaningful and may be non-monotone.  Columns
    beyond t and value (such as source_first_index) are ignored.
    """
    header, rows = _read_rows(path)
    t_col, v_col, is_year = _abscissa_column(header, path)
    nodes = []
    for line, cells in rows:
        if len(cells) <= max(t_col, v_col):
            raise ParseError(f"line {line}: expected at least {max(t_col, v_col) + 1} columns", line=line)
        t = _parse_float(cells[t_col], line, "abscissa")
        if is_year:
            t = year_to_t(t)
        value = _parse_float(cells[v_col], line, "value")
        if not (math.isfinite(t) and math.isfinite(value)):
            raise ParseError(f"line {line}: non-finite node ({t}, {value})", line=line)
        nodes.append(Point2(t, value))
    if not nodes:
        raise ParseError(f"{path}: no node rows", line=1)
    return nodes


def write_nodes_csv(path: str, smoothed: SmoothedSeries) -> None:
    """Write smoothed nodes as t,value,source_first_index."""
    lines = ["t,value,source_first_index"]
    for node, (first, _last) in zip(smoothed.nodes, smoothed.source_window):
        lines.append(f"{node.x!r},{node.y!r},{first}")
    _atomic_write_text(path, "\n".join(lines) + "\n")


def write_grid_csv(path: str, rows: Iterable[tuple[float, float, float]]) -> None:
    """Write evaluation output as t,value,imag_residual."""
    lines = ["t,value,imag_residual"]
    for t, value, imag in rows:
        lines.append(f"{t!r},{value!r},{imag!r}")
    _atomic_write_text(path, "\n".join(lines) + "\n")


def _complex_to_dict(z: complex) -> dict[str, float]:
    return {"re": z.real, "im": z.imag}


def _complex_from_dict(d, what: str) -> complex:
    if not isinstance(d, dict) or set(d) != {"re", "im"}:
        raise SchemaError(f"{what} must be an object with 're' and 'im'")
    re, im = d["re"], d["im"]
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
        raise SchemaError(f"{what} components must be numbers")
    if not (math.isfinite(re) and math.isfinite(im)):
        raise SchemaError(f"{what} components must be finite")
    return complex(re, im)


def model_to_dict(model: ExpModel) -> dict:
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "nodes": [[node.x, node.y] for node in model.nodes],
        "terms": [
            {
                "coefficient": _complex_to_dict(term.coefficient),
                "exponent": _complex_to_dict(term.exponent),
            }
            for term in model.terms
        ],
        "fit_residual": model.fit_residual,
        "warnings": list(model.warnings),
    }


def model_from_dict(doc) -> ExpModel:
    if not isinstance(doc, dict):
        raise SchemaError("model document must be a JSON object")
    version = doc.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {version!r} (expected {MODEL_FORMAT_VERSION})")
    for field in ("nodes", "terms", "fit_residual", "warnings"):
        if field not in doc:
            raise SchemaError(f"missing field {field!r}")
    nodes = []
    for i, pair in enumerate(doc["nodes"]):
        if (
            not isinstance(pair, Sequence)
            or len(pair) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in pair)
        ):
            raise SchemaError(f"node {i} must be a [t, value] number pair")
        try:
            nodes.append(Point2(float(pair[0]), float(pair[1])))
        except ValueError as exc:
            raise SchemaError(f"node {i}: {exc}")
    terms = []
    for i, term in enumerate(doc["terms"]):
        if not isinstance(term, dict):
            raise SchemaError(f"term {i} must be an object")
        terms.append(
            ExpTerm(
                coefficient=_complex_from_dict(term.get("coefficient"), f"term {i} coefficient"),
                exponent=_complex_from_dict(term.get("exponent"), f"term {i} exponent"),
            )
        )
    residual = doc["fit_residual"]
    if isinstance(residual, bool) or not isinstance(residual, (int, float)) or not math.isfinite(residual):
        raise SchemaError("fit_residual must be a finite number")
    warnings_field = doc["warnings"]
    if not isinstance(warnings_field, list) or any(not isinstance(w, str) for w in warnings_field):
        raise SchemaError("warnings must be a list of strings")
    return ExpModel(
        terms=tuple(terms),
        nodes=tuple(nodes),
        fit_residual=float(residual),
        warnings=tuple(warnings_field),
    )


def write_model(path: str, model: ExpModel) -> None:
    """Serialize the model as versioned JSON (lossless at 17 significant digits)."""
    _atomic_write_text(path, json.dumps(model_to_dict(model), indent=2) + "\n")


def read_model(path: str) -> ExpModel:
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON ({exc})")
    return model_from_dict(doc)


def read_exponents(path: str) -> list[complex]:
    """Exponents from a model JSON or from a bare JSON list.

    List entries may be numbers, [re, im] pairs, or {re, im} objects, so
    a saved model and a hand-written exponent list both work.
    """
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON ({exc})")
    if isinstance(doc, dict):
        return [term.exponent for term in model_from_dict(doc).terms]
    if not isinstance(doc, list) or not doc:
        raise SchemaError(f"{path}: expected a model object or a nonempty exponent list")
    out = []
    for i, item in enumerate(doc):
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            out.append(complex(item))
        elif isinstance(item, Sequence) and not isinstance(item, str) and len(item) == 2:
            re, im = item
            if any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in (re, im)):
                raise SchemaError(f"exponent {i}: pair components must be numbers")
            out.append(complex(re, im))
        elif isinstance(item, dict):
            out.append(_complex_from_dict(item, f"exponent {i}"))
        else:
            raise SchemaError(f"exponent {i}: expected number, [re, im] pair, or re/im object")
    return out
