"""Point systems, centroids and the generalized Leibniz identity.

For points A_1..A_n with centroid G and any point M::

    sum_i |M A_i|^2 = (1/n) sum_{i<j} |A_i A_j|^2 + n |M G|^2

Besides the identity itself this module exposes the relations used to
establish it by induction: sub-centroids (the centroid with one point
removed), the 1:(n-1) split of each generalized median by G, and Stewart's
relation for a point on a segment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMedian, DimensionMismatch, GeometryError, NotOnSegment

DEFAULT_TOL = 1e-9


def as_point(coords, dim: int | None = None) -> np.ndarray:
    """Validate ``coords`` as a finite 1-D coordinate vector."""
    p = np.asarray(coords, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise GeometryError(f"a point needs a non-empty 1-D coordinate list, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise GeometryError("point coordinates must be finite")
    if dim is not None and p.size != dim:
        raise DimensionMismatch(f"point has dimension {p.size}, expected {dim}")
    return p


class PointSystem:
    """An ordered list of n >= 2 points sharing one dimension.

    The coordinates are stored as a read-only ``(n, d)`` float array.
    """

    __slots__ = ("_points",)

    def __init__(self, points):
        if isinstance(points, PointSystem):
            arr = points.points
        else:
            try:
                arr = np.array(points, dtype=float)
            except ValueError as exc:
                raise DimensionMismatch("all points must have the same dimension") from exc
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-D array of points, got shape {arr.shape}")
        if arr.shape[0] < 2:
            raise GeometryError(f"a point system needs at least 2 points, got {arr.shape[0]}")
        if arr.shape[1] < 1:
            raise GeometryError("dimension must be at least 1")
        if not np.all(np.isfinite(arr)):
            raise GeometryError("point coordinates must be finite")
        arr.setflags(write=False)
        self._points = arr

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def n(self) -> int:
        return self._points.shape[0]

    @property
    def dim(self) -> int:
        return self._points.shape[1]

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return self._points[i]

    def __iter__(self):
        return iter(self._points)

    def __repr__(self):
        return f"PointSystem(n={self.n}, dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, PointSystem):
            return NotImplemented
        return np.array_equal(self._points, other._points)

    __hash__ = None

    def sq_distance_matrix(self) -> np.ndarray:
        diff = self._points[:, None, :] - self._points[None, :, :]
        return np.einsum("ijk,ijk->ij", diff, diff)

    def pair_sq_distances(self) -> np.ndarray:
        """Squared distances over unordered pairs i < j, row-major order."""
        iu = np.triu_indices(self.n, k=1)
        return self.sq_distance_matrix()[iu]

    def pair_distances(self) -> np.ndarray:
        return np.sqrt(self.pair_sq_distances())

    def without(self, i: int) -> "PointSystem":
        idx = _check_index(self, i)
        return PointSystem(np.delete(self._points, idx, axis=0))

    def transformed(self, matrix=None, shift=None, scale: float = 1.0) -> "PointSystem":
        """Return ``scale * points @ matrix.T + shift``."""
        pts = self._points * scale
        if matrix is not None:
            pts = pts @ np.asarray(matrix, dtype=float).T
        if shift is not None:
            pts = pts + np.asarray(shift, dtype=float)
        return PointSystem(pts)


@dataclass(frozen=True)
class IdentityReport:
    lhs: float
    rhs: float
    residual: float
    scale: float
    passed: bool

    @classmethod
    def compare(cls, lhs: float, rhs: float, tol: float = DEFAULT_TOL, scale: float | None = None):
        if scale is None:
            scale = max(1.0, abs(lhs), abs(rhs))
        residual = abs(lhs - rhs)
        return cls(float(lhs), float(rhs), float(residual), float(scale), bool(residual <= tol * scale))


def _check_index(ps: PointSystem, i: int) -> int:
    if not isinstance(i, (int, np.integer)) or isinstance(i, bool):
        raise TypeError(f"index must be an integer, got {type(i).__name__}")
    if not 0 <= i < ps.n:
        raise IndexError(f"index {i} out of range for {ps.n} points")
    return int(i)


def _sq_norm(v) -> float:
    return float(np.dot(v, v))


def centroid(ps: PointSystem) -> np.ndarray:
    return ps.points.sum(axis=0) / ps.n


def pairwise_sq_sum(ps: PointSystem) -> float:
    """Sum of squared distances over all unordered pairs, accumulated row by row."""
    pts = ps.points
    total = 0.0
    for i in range(ps.n - 1):
        diff = pts[i + 1 :] - pts[i]
        total += float(np.einsum("ij,ij->", diff, diff))
    return total


def leibniz_sides(ps: PointSystem, m) -> tuple[float, float]:
    """Both sides of the Leibniz identity for the query point ``m``.

    Returns ``(sum |m - A_i|^2, pairwise_sq_sum / n + n |m - G|^2)``.
    """
    m = as_point(m, ps.dim)
    diff = ps.points - m
    lhs = float(np.einsum("ij,ij->", diff, diff))
    rhs = pairwise_sq_sum(ps) / ps.n + ps.n * _sq_norm(m - centroid(ps))
    return lhs, rhs


def verify_identity(ps: PointSystem, m, tol: float = DEFAULT_TOL) -> IdentityReport:
    if not tol > 0:
        raise ValueError("tol must be positive")
    lhs, rhs = leibniz_sides(ps, m)
    return IdentityReport.compare(lhs, rhs, tol)


def sub_centroid(ps: PointSystem, i: int) -> np.ndarray:
    """Centroid of every point except ``A_i``."""
    if ps.n < 3:
        raise GeometryError("sub-centroids need at least 3 points")
    i = _check_index(ps, i)
    return (ps.points.sum(axis=0) - ps.points[i]) / (ps.n - 1)


def _segment_position(p, q, x) -> tuple[float, float, float]:
    """Project ``x`` onto the line pq: (parameter t, off-line distance, |pq|)."""
    pq = q - p
    length = np.sqrt(_sq_norm(pq))
    t = float(np.dot(x - p, pq)) / (length * length)
    off = float(np.sqrt(_sq_norm(x - (p + t * pq))))
    return t, off, float(length)


def median_ratio_check(ps: PointSystem, i: int, tol: float = DEFAULT_TOL) -> IdentityReport:
    """Check that G splits the median A_i G_i in ratio (n-1):1 from the vertex.

    Since ``G = (A_i + (n-1) G_i) / n`` the report compares ``|A_i G|``
    against ``(n-1)|G G_i|`` (2:1 for a triangle). ``passed`` additionally
    requires G to lie on the segment within ``tol * scale``.
    """
    g_i = sub_centroid(ps, i)
    a_i = ps.points[i]
    g = centroid(ps)
    coord_scale = max(1.0, float(np.max(np.abs(ps.points))))
    if np.sqrt(_sq_norm(a_i - g_i)) <= 1e-12 * coord_scale:
        raise DegenerateMedian(f"point {i} coincides with the centroid of the others")

    t, off, length = _segment_position(a_i, g_i, g)
    scale = max(1.0, length)
    on_segment = off <= tol * scale and -tol <= t <= 1 + tol
    report = IdentityReport.compare(
        float(np.sqrt(_sq_norm(g - a_i))),
        (ps.n - 1) * float(np.sqrt(_sq_norm(g_i - g))),
        tol,
        scale=scale,
    )
    if not on_segment:
        report = IdentityReport(report.lhs, report.rhs, report.residual, report.scale, False)
    return report


def _stewart_terms(m, p, q, x):
    mp2, mq2, mx2 = _sq_norm(m - p), _sq_norm(m - q), _sq_norm(m - x)
    xp = np.sqrt(_sq_norm(x - p))
    xq = np.sqrt(_sq_norm(x - q))
    pq = np.sqrt(_sq_norm(q - p))
    return mp2 * xq, mq2 * xp, mx2 * pq, xq * xp * pq


def _require_on_segment(p, q, x, tol):
    if _sq_norm(q - p) == 0.0:
        raise NotOnSegment("segment endpoints coincide")
    t, off, length = _segment_position(p, q, x)
    if off > tol * max(1.0, length) or not -tol <= t <= 1 + tol:
        raise NotOnSegment(f"point is not on the segment (t={t:.3g}, offset={off:.3g})")


def stewart_residual(m, p, q, x, tol: float = DEFAULT_TOL) -> float:
    """Absolute defect of Stewart's relation for ``x`` on segment ``pq``.

    ``|Mp^2*xq + Mq^2*xp - Mx^2*pq - xq*xp*pq|`` with unsigned lengths;
    zero in exact arithmetic.
    """
    m = as_point(m)
    p, q, x = (as_point(v, m.size) for v in (p, q, x))
    _require_on_segment(p, q, x, tol)
    a, b, c, d = _stewart_terms(m, p, q, x)
    return float(abs(a + b - c - d))


def stewart_check(m, p, q, x, tol: float = DEFAULT_TOL) -> IdentityReport:
    """Stewart's relation as a report, scaled by its largest term."""
    m = as_point(m)
    p, q, x = (as_point(v, m.size) for v in (p, q, x))
    _require_on_segment(p, q, x, tol)
    a, b, c, d = _stewart_terms(m, p, q, x)
    return IdentityReport.compare(a + b, c + d, tol, scale=max(1.0, a, b, c, d))


def general_median_sq(ps: PointSystem, i: int) -> float:
    """Squared length from ``A_i`` to the centroid of the other points.

    Evaluated purely from pairwise distances::

        (1/(n-1)) sum_{k != i} |A_i A_k|^2 - (1/(n-1)^2) sum_{u<v; u,v != i} |A_u A_v|^2
    """
    if ps.n < 3:
        raise GeometryError("generalized medians need at least 3 points")
    i = _check_index(ps, i)
    sq = ps.sq_distance_matrix()
    to_i = float(sq[i].sum())
    rest = np.delete(np.delete(sq, i, axis=0), i, axis=1)
    among_rest = float(np.triu(rest, k=1).sum())
    k = ps.n - 1
    return to_i / k - among_rest / (k * k)
