"""Circumsphere fitting and the centroid/orthocenter relations on a sphere."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, PointSystem, as_point, centroid, pairwise_sq_sum
from .errors import DegenerateConfiguration, GeometryError, NotCospherical

DEFAULT_SPHERE_TOL = 1e-6

# Relative singular-value cutoff used to find the affine hull of a point set.
_RANK_RTOL = 1e-10


@dataclass(frozen=True)
class Sphere:
    center: np.ndarray
    radius: float
    fit_residual: float = 0.0

    def __post_init__(self):
        center = as_point(self.center)
        center.setflags(write=False)
        object.__setattr__(self, "center", center)
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise GeometryError(f"sphere radius must be positive, got {self.radius}")
        if not self.fit_residual >= 0:
            raise GeometryError("fit_residual must be non-negative")

    @property
    def dim(self) -> int:
        return self.center.size


@dataclass(frozen=True)
class CenterTriple:
    circumcenter: np.ndarray
    centroid: np.ndarray
    orthocenter: np.ndarray
    collinearity_residual: float
    ratio_residual: float


def _radial_residual(ps: PointSystem, center, radius) -> float:
    dist = np.linalg.norm(ps.points - center, axis=1)
    return float(np.max(np.abs(dist - radius)))


def sphere_through(ps: PointSystem, center, radius: float) -> Sphere:
    """A known sphere with its radial residual against ``ps`` filled in."""
    center = as_point(center, ps.dim)
    return Sphere(center, float(radius), _radial_residual(ps, center, radius))


def require_cospherical(ps: PointSystem, s: Sphere, tol: float = DEFAULT_SPHERE_TOL) -> None:
    if s.dim != ps.dim:
        raise GeometryError(f"sphere dimension {s.dim} does not match points ({ps.dim})")
    residual = _radial_residual(ps, s.center, s.radius)
    if residual > tol * s.radius:
        raise NotCospherical(
            f"points are off the sphere by up to {residual:.3g} (allowed {tol * s.radius:.3g})", s
        )


def fit_circumsphere(ps: PointSystem, tol: float = DEFAULT_SPHERE_TOL) -> Sphere:
    """Least-squares sphere through ``ps``.

    The center solves ``2 (A_j - A_1) . (O - A_1) = |A_j - A_1|^2`` restricted
    to the affine hull of the points, so a triangle in 3-D gets its
    circumcircle's center rather than an arbitrary point on the normal line.
    The radius is the mean distance to the center.

    Raises ``NotCospherical`` when any point is further than ``tol * R``
    from the fitted sphere and ``DegenerateConfiguration`` when all points
    coincide.
    """
    pts = ps.points
    base = pts[0]
    diffs = pts[1:] - base
    _, sv, vt = np.linalg.svd(diffs, full_matrices=False)
    if sv[0] == 0.0:
        raise DegenerateConfiguration("all points coincide; no sphere passes through them")
    rank = int(np.sum(sv > _RANK_RTOL * sv[0]))
    basis = vt[:rank]                      # rows span the affine hull directions
    local = diffs @ basis.T                # (n-1, rank) hull coordinates
    rhs = np.einsum("ij,ij->i", local, local)
    sol, *_ = np.linalg.lstsq(2.0 * local, rhs, rcond=None)
    center = base + sol @ basis
    dist = np.linalg.norm(pts - center, axis=1)
    radius = float(dist.mean())
    if not radius > 0:
        raise DegenerateConfiguration("fitted radius is zero")
    sphere = Sphere(center, radius, float(np.max(np.abs(dist - radius))))
    if sphere.fit_residual > tol * radius:
        raise NotCospherical(
            f"points are not cospherical: residual {sphere.fit_residual:.3g} exceeds {tol:.1e} * R",
            sphere,
        )
    return sphere


def og_squared(ps: PointSystem, s: Sphere, sphere_tol: float = DEFAULT_SPHERE_TOL) -> float:
    """``R^2 - pairwise_sq_sum / n^2``, the squared circumcenter-centroid distance."""
    require_cospherical(ps, s, sphere_tol)
    return s.radius**2 - pairwise_sq_sum(ps) / ps.n**2


def orthocenter(
    ps: PointSystem, s: Sphere, sphere_tol: float = DEFAULT_SPHERE_TOL
) -> CenterTriple:
    """Generalized orthocenter ``H = O + sum_i (A_i - O)``, i.e. ``OH = n * OG``.

    For a triangle this is the classical orthocenter. Residuals are
    normalized by R: the distance of H from the line OG, and
    ``| |OH| - n |OG| |``.
    """
    require_cospherical(ps, s, sphere_tol)
    o = s.center
    g = centroid(ps)
    h = o + (ps.points - o).sum(axis=0)
    og = g - o
    oh = h - o
    og_len = float(np.linalg.norm(og))
    oh_len = float(np.linalg.norm(oh))
    if og_len > 0:
        u = og / og_len
        off_line = float(np.linalg.norm(oh - np.dot(oh, u) * u))
    else:
        off_line = oh_len
    return CenterTriple(
        circumcenter=o,
        centroid=g,
        orthocenter=h,
        collinearity_residual=off_line / s.radius,
        ratio_residual=abs(oh_len - ps.n * og_len) / s.radius,
    )


def oh_gh_squared(
    ps: PointSystem,
    s: Sphere,
    tol: float = DEFAULT_TOL,
    sphere_tol: float = DEFAULT_SPHERE_TOL,
) -> tuple[float, float]:
    """``(n^2 R^2 - S, (n-1)^2 R^2 - (1 - 1/n)^2 S)`` with S the pairwise sum.

    Values within ``-tol * n^2 R^2`` of zero are clamped to 0; anything more
    negative means the points are not on ``s``.
    """
    require_cospherical(ps, s, sphere_tol)
    n = ps.n
    r2 = s.radius**2
    total = pairwise_sq_sum(ps)
    oh2 = n * n * r2 - total
    gh2 = (n - 1) ** 2 * r2 - (1 - 1 / n) ** 2 * total
    floor = -tol * n * n * r2
    if oh2 < floor or gh2 < floor:
        raise NotCospherical(f"negative squared distance (OH^2={oh2:.3g}, GH^2={gh2:.3g})", s)
    return max(oh2, 0.0), max(gh2, 0.0)


def regularity_check(
    ps: PointSystem,
    s: Sphere,
    tol: float = DEFAULT_TOL,
    sphere_tol: float = DEFAULT_SPHERE_TOL,
) -> bool:
    """True when the pairwise sum attains ``n^2 R^2``, i.e. O, G and H coincide.

    Two tests are run and must agree: ``|S - n^2 R^2| <= tol * n^2 R^2`` from
    distances, and ``|OG|^2 <= tol * R^2`` from coordinates. Both thresholds
    are on squared quantities, which makes them the same condition.
    """
    require_cospherical(ps, s, sphere_tol)
    n2r2 = ps.n**2 * s.radius**2
    by_sum = abs(pairwise_sq_sum(ps) - n2r2) <= tol * n2r2
    og = centroid(ps) - s.center
    by_center = float(np.dot(og, og)) <= tol * s.radius**2
    if by_sum != by_center:
        raise GeometryError(
            "regularity tests disagree; the sphere does not match the points closely enough"
        )
    return by_sum
