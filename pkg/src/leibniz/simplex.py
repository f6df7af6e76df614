"""Median and bimedian formulas for triangles and tetrahedra from edge lengths.

Tetrahedron ABCD labels its edges

    a = AB, b = AC, c = AD, d = BD, e = BC, f = CD

so (a, f), (b, d) and (c, e) are the three pairs of opposite edges, and
a, b, c meet at A while d, e, f bound the opposite face BCD.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import BoundCertificate, BoundName
from .core import PointSystem
from .errors import GeometryError, InvalidSimplex
from .sphere import DEFAULT_SPHERE_TOL, Sphere

CM_TOL = 1e-12


def _positive(*values):
    for v in values:
        if not (math.isfinite(v) and v > 0):
            raise InvalidSimplex(f"edge lengths must be positive and finite, got {v}")


@dataclass(frozen=True)
class TriangleEdges:
    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        _positive(a, b, c)
        if not (a < b + c and b < a + c and c < a + b):
            raise InvalidSimplex(f"({a}, {b}, {c}) violates the triangle inequality")

    def as_tuple(self):
        return (self.a, self.b, self.c)


def _cayley_menger(sq: np.ndarray) -> float:
    k = sq.shape[0]
    cm = np.ones((k + 1, k + 1))
    cm[0, 0] = 0.0
    cm[1:, 1:] = sq
    return float(np.linalg.det(cm))


@dataclass(frozen=True)
class TetrahedronEdges:
    a: float  # AB
    b: float  # AC
    c: float  # AD
    d: float  # BD
    e: float  # BC
    f: float  # CD

    def __post_init__(self):
        _positive(*self.as_tuple())
        for face in ((self.a, self.e, self.b), (self.a, self.d, self.c),
                     (self.b, self.f, self.c), (self.e, self.f, self.d)):
            TriangleEdges(*face)
        # 288 V^2, made scale free by the sixth power of the longest edge.
        normalized = _cayley_menger(self.sq_distance_matrix()) / max(self.as_tuple()) ** 6
        if not normalized > CM_TOL:
            raise InvalidSimplex(f"edge lengths do not span a tetrahedron (normalized CM = {normalized:.3g})")

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def sq_distance_matrix(self) -> np.ndarray:
        a, b, c, d, e, f = (x * x for x in self.as_tuple())
        return np.array([
            [0, a, b, c],
            [a, 0, e, d],
            [b, e, 0, f],
            [c, d, f, 0],
        ], dtype=float)


def circumradius(edges) -> float:
    """Circumradius of a triangle or tetrahedron from its edge lengths.

    Uses ``R^2 = -det(D) / (2 det(CM))`` with D the squared-distance matrix.
    """
    if isinstance(edges, TriangleEdges):
        a, b, c = edges.as_tuple()
        sq = np.array([[0, c * c, b * b], [c * c, 0, a * a], [b * b, a * a, 0]], dtype=float)
    else:
        sq = edges.sq_distance_matrix()
    return math.sqrt(-np.linalg.det(sq) / (2 * _cayley_menger(sq)))


def edges_from_points(ps: PointSystem):
    """Labeled edges of a triangle (n=3) or tetrahedron (n=4), vertex order kept.

    For a triangle ABC, ``a = BC`` is opposite A, ``b = CA`` and ``c = AB``.
    """
    sq = ps.sq_distance_matrix()
    dist = np.sqrt(sq).tolist()
    if ps.n == 3:
        if ps.dim < 2:
            raise GeometryError("a triangle needs dimension >= 2")
        return TriangleEdges(dist[1][2], dist[2][0], dist[0][1])
    if ps.n == 4:
        if ps.dim < 3:
            raise GeometryError("a tetrahedron needs dimension >= 3")
        return TetrahedronEdges(dist[0][1], dist[0][2], dist[0][3], dist[1][3], dist[1][2], dist[2][3])
    raise GeometryError(f"edge labeling is defined for 3 or 4 points, got {ps.n}")


def triangle_medians(t: TriangleEdges) -> tuple[float, float, float]:
    a2, b2, c2 = t.a**2, t.b**2, t.c**2
    sq = ((2 * (b2 + c2) - a2) / 4, (2 * (a2 + c2) - b2) / 4, (2 * (a2 + b2) - c2) / 4)
    return tuple(math.sqrt(v) for v in sq)


def tetra_medians(t: TetrahedronEdges) -> tuple[float, float, float, float]:
    """Vertex-to-opposite-face-centroid lengths for A, B, C, D."""
    a2, b2, c2, d2, e2, f2 = (x * x for x in t.as_tuple())
    sq = (
        (3 * (a2 + b2 + c2) - (d2 + e2 + f2)) / 9,  # A: AB, AC, AD | BCD
        (3 * (a2 + e2 + d2) - (b2 + c2 + f2)) / 9,  # B: BA, BC, BD | ACD
        (3 * (b2 + e2 + f2) - (a2 + c2 + d2)) / 9,  # C: CA, CB, CD | ABD
        (3 * (c2 + d2 + f2) - (a2 + b2 + e2)) / 9,  # D: DA, DB, DC | ABC
    )
    return tuple(math.sqrt(v) for v in sq)


def tetra_bimedians(t: TetrahedronEdges) -> tuple[float, float, float]:
    """Midpoint-to-midpoint lengths for the opposite pairs (a,f), (b,d), (c,e)."""
    a2, b2, c2, d2, e2, f2 = (x * x for x in t.as_tuple())
    total = a2 + b2 + c2 + d2 + e2 + f2
    sq = (
        (total - 2 * (a2 + f2)) / 4,
        (total - 2 * (b2 + d2)) / 4,
        (total - 2 * (c2 + e2)) / 4,
    )
    return tuple(math.sqrt(v) for v in sq)


def _radius_for(edges, s: Sphere, sphere_tol: float) -> float:
    # A sphere carrying the vertices is at least as large as the circumsphere;
    # it is larger when the simplex lives in a higher-dimensional space.
    r_edges = circumradius(edges)
    if s.radius < r_edges * (1 - sphere_tol):
        raise GeometryError(
            f"sphere radius {s.radius:.17g} is below the circumradius {r_edges:.17g} of the edges"
        )
    return s.radius


def triangle_median_bounds(t: TriangleEdges, s: Sphere, sphere_tol=DEFAULT_SPHERE_TOL) -> list[BoundCertificate]:
    """``sum m^2 <= 27 R^2 / 4`` and ``sum m <= 9 R / 2``."""
    r = _radius_for(t, s, sphere_tol)
    m = triangle_medians(t)
    return [
        BoundCertificate.upper_bound(BoundName.TRIANGLE_MEDIAN_SQ, sum(x * x for x in m), 27 * r * r / 4),
        BoundCertificate.upper_bound(BoundName.TRIANGLE_MEDIAN_SUM, sum(m), 9 * r / 2),
    ]


def tetra_median_bounds(t: TetrahedronEdges, s: Sphere, sphere_tol=DEFAULT_SPHERE_TOL) -> list[BoundCertificate]:
    """``sum m^2 <= 64 R^2 / 9`` and ``sum m <= 16 R / 3``."""
    r = _radius_for(t, s, sphere_tol)
    m = tetra_medians(t)
    return [
        BoundCertificate.upper_bound(BoundName.TETRA_MEDIAN_SQ, sum(x * x for x in m), 64 * r * r / 9),
        BoundCertificate.upper_bound(BoundName.TETRA_MEDIAN_SUM, sum(m), 16 * r / 3),
    ]


def tetra_bimedian_bounds(t: TetrahedronEdges, s: Sphere, sphere_tol=DEFAULT_SPHERE_TOL) -> list[BoundCertificate]:
    """``sum m^2 <= 4 R^2`` and ``sum m <= 2 sqrt(3) R``."""
    r = _radius_for(t, s, sphere_tol)
    m = tetra_bimedians(t)
    return [
        BoundCertificate.upper_bound(BoundName.BIMEDIAN_SQ, sum(x * x for x in m), 4 * r * r),
        BoundCertificate.upper_bound(BoundName.BIMEDIAN_SUM, sum(m), 2 * math.sqrt(3) * r),
    ]
