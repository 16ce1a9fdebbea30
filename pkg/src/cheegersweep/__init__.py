"""Cheeger constants, spectral bounds and eigenvector sweeps for simple graphs."""

from .graph import (
    Graph,
    GraphError,
    ParseError,
    InvalidParameterError,
    as_mask,
    parse_edge_list,
    read_edge_list,
    generate,
    disjoint_union,
    edges_between,
    volume,
    connected_components,
    is_connected,
)
from .spectral import (
    ConvergenceError,
    SpectralData,
    normalized_laplacian,
    eig_sym,
    spectrum,
    quadratic_form_edges,
)
from .cheeger import (
    Cut,
    BoundsReport,
    cut_ratio,
    exact_cheeger,
    classical_bounds,
    linear_bounds,
    bounds_report,
)
from .sweep import (
    SweepResult,
    ProbabilityVector,
    ArbitraryVectorSpec,
    NoValidCutError,
    theorem_delta,
    classical_sweep,
    bernoulli_probabilities,
    random_sweep,
    arbitrary_vector_sweep,
    expected_quadratic_form,
)

__version__ = "0.1.0"
