"""Acceptance gate: ten criteria, summarized per criterion at the end of the run.

Each test states its tolerance inline.  Published reference values come
from the bundled fixtures; randomized criteria use fixed seeds so a
failure is reproducible bit for bit.
"""
import csv
import warnings

import numpy as np
import pytest

from _support import random_interior_triangles, random_obtuse_triangles, unit_pull
from ftexpfit import (
    Estimate,
    Given,
    Point2,
    Triangle,
    estimate_exponents,
    evaluate,
    evaluate_grid,
    fit,
    fixture_path,
    reference_model,
    solve_coefficients,
    table2_ten,
)
from ftexpfit.cli import main
from ftexpfit.geometry import ObtuseVertex, classify, fermat_point, weiszfeld
from ftexpfit.io import read_series_csv
from ftexpfit.series import smooth

# Published check values at the ten node abscissae, in node order.
CHECK_VALUES = (2.466101588, 1.4, 0.4, 0.3, 0.6, 2.10452453, 2.0, 2.6, 3.3, 3.571931564)

INTERIOR_SEED = 20260823
OBTUSE_SEED = 77031


@pytest.fixture(scope="module")
def interior_results():
    batch = random_interior_triangles(INTERIOR_SEED, 1000)
    return [(tri, fermat_point(tri)) for tri in batch]


def test_criterion_01_reference_triangles_both_routes():
    cases = [
        (Triangle(Point2(1, 2.2), Point2(2, 3.5), Point2(3, 1.4)), (1.79128927, 2.46610159)),
        (Triangle(Point2(6, 0.6), Point2(7, 2.4), Point2(8, 2)), (7.12649666, 2.10452453)),
    ]
    for tri, (ex, ey) in cases:
        closed = fermat_point(tri)
        iterated = weiszfeld(list(tri.vertices))
        for point in (closed, iterated):
            assert point.x == pytest.approx(ex, abs=1e-6)
            assert point.y == pytest.approx(ey, abs=1e-6)


def test_criterion_02_wide_angle_windows_keep_raw_samples():
    series = read_series_csv(fixture_path("czech_inflation.csv"))
    nodes = smooth(series).nodes
    assert len(nodes) == 9
    # node k smooths the window starting at sample k; at these windows the
    # middle sample is the median point, so it passes through unchanged
    expected = {1: (3, 1.4), 2: (4, 0.4), 3: (5, 0.3), 4: (6, 0.6),
                6: (8, 2), 7: (9, 2.6), 8: (10, 3.3)}
    for k, (ex, ey) in expected.items():
        assert abs(nodes[k].x - ex) <= 1e-12
        assert abs(nodes[k].y - ey) <= 1e-12


def test_criterion_03_bundled_model_reproduces_check_values():
    model = reference_model()
    for node, expected in zip(table2_ten(), CHECK_VALUES):
        value, _ = evaluate(model, node.x)
        assert value == pytest.approx(expected, abs=1e-6)


def test_criterion_04_coefficient_recovery():
    reference = reference_model()
    recovered = solve_coefficients(table2_ten(), reference.exponents)
    # binding: the recovered model must still reproduce the check values
    for node, expected in zip(table2_ten(), CHECK_VALUES):
        value, _ = evaluate(recovered, node.x)
        assert value == pytest.approx(expected, abs=1e-6)
    # advisory: printed coefficients carry fewer digits, so mismatches are
    # reported as warnings rather than failures
    for k, (got, printed) in enumerate(zip(recovered.coefficients, reference.coefficients)):
        rel = abs(got - printed) / max(abs(printed), 1e-30)
        if rel > 1e-4:
            warnings.warn(
                f"coefficient {k} relative difference {rel:.3e} exceeds 1e-4 "
                f"(got {got!r}, published {printed!r})"
            )


def test_criterion_05_dual_route_on_seeded_triangles(interior_results):
    for tri, closed in interior_results:
        iterated = weiszfeld(list(tri.vertices))
        assert abs(closed.x - iterated.x) <= 1e-9
        assert abs(closed.y - iterated.y) <= 1e-9
    for tri in random_obtuse_triangles(OBTUSE_SEED, 1000):
        cls = classify(tri)
        assert isinstance(cls, ObtuseVertex)
        vertex = tri.vertices[cls.index]
        point = fermat_point(tri)
        assert (point.x, point.y) == (vertex.x, vertex.y)
        iterated = weiszfeld(list(tri.vertices))
        assert abs(iterated.x - vertex.x) <= 1e-6
        assert abs(iterated.y - vertex.y) <= 1e-6


def test_criterion_06_stationarity_of_interior_points(interior_results):
    for tri, closed in interior_results:
        assert unit_pull(tri.vertices, closed) <= 1e-7


def _random_instance(rng, m):
    """Conjugate-closed exponents with |Re| <= 0.3 and real node values on [0, 12]."""
    while True:
        lams, coeffs = [], []
        while len(lams) < m:
            if m - len(lams) >= 2 and rng.random() < 0.7:
                a = rng.uniform(-0.3, 0.3)
                b = rng.uniform(0.3, 2.5)
                c = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
                lams += [complex(a, b), complex(a, -b)]
                coeffs += [c, c.conjugate()]
            else:
                lams.append(complex(rng.uniform(-0.3, 0.3), 0.0))
                coeffs.append(complex(rng.uniform(-2.0, 2.0), 0.0))
        arr = np.array(lams)
        sep = min(abs(arr[i] - arr[j]) for i in range(m) for j in range(i + 1, m))
        if sep >= 0.15:
            break
    while True:
        t = np.sort(rng.uniform(0.0, 12.0, size=m))
        if np.diff(t).min() >= 0.25:
            break
    values = [complex(sum(c * np.exp(l * tt) for c, l in zip(coeffs, lams))).real for tt in t]
    return [Point2(float(a), float(b)) for a, b in zip(t, values)], lams


def test_criterion_07_exact_interpolation_property():
    rng = np.random.default_rng(42)
    for k in range(200):
        m = 2 + (k % 11)
        nodes, lams = _random_instance(rng, m)
        with warnings.catch_warnings():
            # conditioning warnings are allowed; the residual bound is not waived
            warnings.simplefilter("ignore")
            # fit enforces max node residual <= 1e-8 * max(1, max|y|) itself
            model = fit(nodes, Given(exponents=tuple(lams)))
            rows = evaluate_grid(model, 0.0, 12.0, 0.5)
        ymax = max(abs(p.y) for p in nodes)
        assert max(r[2] for r in rows) <= 1e-6 * max(ymax, 1e-30)


def test_criterion_08_linear_prediction_round_trip():
    cases = {
        1: ([0.2 + 0j], [1.5 + 0j], 0.5),
        2: ([0.1 + 1.3j, 0.1 - 1.3j], [0.8 - 0.4j, 0.8 + 0.4j], 0.4),
        # growth/decay pair with one oscillation: the full +/- quadruple
        4: ([0.08 + 2.5j, 0.08 - 2.5j, -0.08 + 2.5j, -0.08 - 2.5j],
            [0.6 - 0.3j, 0.6 + 0.3j, -0.2 + 0.5j, -0.2 - 0.5j], 0.3),
    }
    for m, (lams, coeffs, delta) in cases.items():
        count = 4 * m
        t = np.arange(count) * delta
        values = [complex(sum(c * np.exp(l * tt) for c, l in zip(coeffs, lams))).real for tt in t]
        nodes = [Point2(float(a), float(b)) for a, b in zip(t, values)]
        estimated = list(estimate_exponents(nodes, Estimate(m=m, resample_count=count)))
        worst = 0.0
        for true_lam in lams:
            j = min(range(len(estimated)), key=lambda i: abs(estimated[i] - true_lam))
            worst = max(worst, abs(estimated.pop(j) - true_lam))
        assert worst <= 1e-6


def test_criterion_09_pipeline_smoke(tmp_path, capsys):
    assert main(["verify-paper"]) == 0
    capsys.readouterr()
    outdir = tmp_path / "out"
    rc = main(["run", "--nodes", fixture_path("table2_ten.csv"),
               "--output-dir", str(outdir),
               "--exponents", fixture_path("eq2_model.json"),
               "--grid", "1:11:0.125"])
    assert rc == 0
    assert (outdir / "model.json").exists()
    with open(outdir / "grid.csv", newline="") as fh:
        by_t = {float(row["t"]): float(row["value"]) for row in csv.DictReader(fh)}
    # integer abscissae among the published rows (7 is not one of them)
    published = {3.0: 1.4, 4.0: 0.4, 5.0: 0.3, 6.0: 0.6, 8.0: 2.0, 9.0: 2.6, 10.0: 3.3}
    for t, expected in published.items():
        assert by_t[t] == pytest.approx(expected, abs=1e-6)


def test_criterion_10_exponents_closed_under_negation_and_conjugation():
    exponents = reference_model().exponents
    as_pairs = {(z.real, z.imag) for z in exponents}
    assert len(as_pairs) == len(exponents)
    for z in exponents:
        assert (-z.real, -z.imag) in as_pairs
        assert (z.real, -z.imag) in as_pairs
