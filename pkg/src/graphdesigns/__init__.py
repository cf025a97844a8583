"""Graphical designs: vertex subsets that average the low-frequency
eigenvectors of a graph's random-walk Laplacian exactly."""
from .bounds import (
    BoundCertificate,
    SearchResult,
    cheeger_certificate,
    cheeger_ratio,
    cheeger_sharp,
    exhaustive_design_search,
    hoffman_bound,
    hoffman_certificate,
    is_stable_set,
    max_stable_set,
    via_hoffman_optimality,
)
from .codes import (
    BinaryLinearCode,
    BinaryMatrix,
    dual,
    double_lift,
    hamming,
    lift,
    orthogonal_array_strength,
    parse_code,
    project,
)
from .cube import CubeGraph, cube_decomposition, cube_design_report, cube_graph, simple_design
from .designs import Design, DesignReport, design_report, is_extremal, make_design, rebase
from .errors import GraphDesignError
from .graph import (
    Eigenspace,
    Graph,
    SpectralDecomposition,
    build_graph,
    fixture,
    spectral_decomposition,
)
from .schemes import (
    AssociationScheme,
    BlockFamily,
    classical_t_design,
    hamming_scheme,
    johnson_scheme,
    scheme_decomposition,
    t_design_strength,
    union_graph,
)

__version__ = "0.1.0"
