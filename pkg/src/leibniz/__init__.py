"""Generalized Leibniz centroid identity and the formulas derived from it."""

from .bounds import (
    BoundCertificate,
    BoundName,
    KantorovichInput,
    all_bounds,
    check_cbs_bound,
    check_harmonic_sq_bound,
    check_reciprocal_bound,
    check_sum_sq_bound,
    kantorovich_bounds,
)
from .core import (
    IdentityReport,
    PointSystem,
    centroid,
    general_median_sq,
    leibniz_sides,
    median_ratio_check,
    pairwise_sq_sum,
    stewart_check,
    stewart_residual,
    sub_centroid,
    verify_identity,
)
from .errors import (
    CoincidentPoints,
    DegenerateConfiguration,
    DegenerateMedian,
    DimensionMismatch,
    GeometryError,
    InvalidSimplex,
    NotCospherical,
    NotOnSegment,
)
from .search import SearchConfig, SearchResult, maximize_sum_sq, objective_and_gradient, project_to_sphere
from .simplex import (
    TetrahedronEdges,
    TriangleEdges,
    edges_from_points,
    tetra_bimedians,
    tetra_medians,
    triangle_medians,
)
from .sphere import CenterTriple, Sphere, fit_circumsphere, og_squared, oh_gh_squared, orthocenter, regularity_check

__version__ = "0.1.0"
