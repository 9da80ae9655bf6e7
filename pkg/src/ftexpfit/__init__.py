"""Geometric-median smoothing of 1-D series and exact exponential-sum interpolation.

The package has two halves that meet in the middle:

* ``geometry`` and ``series`` replace each sliding triple of samples by
  its Fermat-Torricelli point, turning a jagged series into a short list
  of smoothed nodes;
* ``numerics`` and ``expfit`` interpolate those nodes exactly by a finite
  sum of complex exponentials c_j * exp(lambda_j * t), with the exponents
  either supplied or estimated by linear prediction.

``cli`` wires both halves into the ``ftexpfit`` command line together
with delimited input/output, a JSON model format, and optional figure
rendering.
"""
from .errors import (
    ConjugateClosureError,
    ConvergenceError,
    DimensionMismatchError,
    DomainError,
    DuplicateAbscissaError,
    FitResidualError,
    FtexpfitError,
    IllConditionedWarning,
    InsufficientDataError,
    MonotonicityWarning,
    ParseError,
    RootAtZeroError,
    SchemaError,
    SingularMatrixError,
    TooShortError,
    ValidationError,
)
from .expfit import (
    Estimate,
    ExpModel,
    ExpTerm,
    Given,
    basis_matrix,
    estimate_exponents,
    evaluate,
    evaluate_grid,
    fit,
    fit_least_squares,
    solve_coefficients,
)
from .fixtures import (
    czech_inflation,
    fixture_path,
    reference_exponents,
    reference_model,
    table2_nine,
    table2_ten,
    verify_checksums,
)
from .geometry import (
    Degenerate,
    DegenerateKind,
    InteriorCase,
    ObtuseVertex,
    Point2,
    SideLengths,
    Triangle,
    TriangleClass,
    classify,
    fermat_point,
    fermat_point_closed_form,
    objective,
    side_lengths,
    signed_area_2x,
    weiszfeld,
)
from .io import (
    read_exponents,
    read_model,
    read_nodes_csv,
    read_series_csv,
    write_grid_csv,
    write_model,
    write_nodes_csv,
)
from .numerics import (
    SolveDiagnostics,
    hankel_system,
    least_squares,
    poly_roots,
    solve_linear,
)
from .series import (
    SmoothedSeries,
    TimeSeries,
    sliding_triangles,
    smooth,
    t_to_year,
    validate,
    year_to_t,
)

__version__ = "0.1.0"
