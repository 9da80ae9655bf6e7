"""Bundled reference data: the worked inflation example and its model.

Four files ship inside the package:

* ``czech_inflation.csv``: the raw eleven annual samples, year numbers
  1..11 (2011..2021 via the year offset);
* ``table2_nine.csv``: the nine smoothed nodes this package reproduces
  algorithmically from the raw series;
* ``table2_ten.csv``: the published ten-node set, which adds a final
  node that is not a geometric median of any sample triple (it lies
  above every value of its only candidate window); kept verbatim
  because the ten-term reference model interpolates it;
* ``eq2_model.json``: the ten-term exponential-sum reference model with
  its published coefficient and exponent digits.

Each file carries a pinned SHA-256 so drift from the published constants
fails loudly.  The reference exponents are asserted to be closed under
both negation and conjugation, exactly, on the bundled constants.
"""
from __future__ import annotations

import hashlib
from importlib import resources

from .expfit import ExpModel
from .geometry import Point2
from .io import read_model, read_nodes_csv, read_series_csv
from .series import TimeSeries

__all__ = [
    "FIXTURE_SHA256",
    "fixture_path",
    "verify_checksums",
    "czech_inflation",
    "table2_nine",
    "table2_ten",
    "reference_model",
    "reference_exponents",
]

FIXTURE_SHA256 = {
    "czech_inflation.csv": "ca4443851cebcb301051d9bebe697ea8e82b7736b433c1680e9ff8ab447165b1",
    "table2_nine.csv": "9520ae49abaabe4ea1278de53846e308c1a9be329728db4ae01cb4c3851b0e4e",
    "table2_ten.csv": "81c4f9d0e0f34f9295f7982761713ec08c393d3d36d582ff45b3a60e6ea8734c",
    "eq2_model.json": "87767eca0930945cb03390d313eb883c8f6a73128743bc9877fe36c8f50db449",
}


def fixture_path(name: str) -> str:
    """Filesystem path of a bundled fixture. Raises KeyError for unknown names."""
    if name not in FIXTURE_SHA256:
        raise KeyError(f"unknown fixture {name!r}")
    return str(resources.files("ftexpfit.data") / name)


def verify_checksums() -> None:
    """Raise RuntimeError if any bundled fixture drifted from its pinned hash."""
    for name, expected in FIXTURE_SHA256.items():
        with open(fixture_path(name), "rb") as handle:
            actual = hashlib.sha256(handle.read()).hexdigest()
        if actual != expected:
            raise RuntimeError(
                f"fixture {name} checksum mismatch: expected {expected}, got {actual}"
            )


def czech_inflation() -> TimeSeries:
    return read_series_csv(fixture_path("czech_inflation.csv"))


def table2_nine() -> list[Point2]:
    return read_nodes_csv(fixture_path("table2_nine.csv"))


def table2_ten() -> list[Point2]:
    return read_nodes_csv(fixture_path("table2_ten.csv"))


def reference_model() -> ExpModel:
    """The bundled ten-term model, with its exponent symmetries asserted."""
    model = read_model(fixture_path("eq2_model.json"))
    exponents = set(model.exponents)
    for lam in exponents:
        if -lam not in exponents:
            raise RuntimeError(f"reference exponents are not closed under negation at {lam!r}")
        if lam.conjugate() not in exponents:
            raise RuntimeError(f"reference exponents are not closed under conjugation at {lam!r}")
    return model


def reference_exponents() -> list[complex]:
    return list(reference_model().exponents)
