"""Inequalities for points on a sphere of radius R, with slack reporting.

Every check returns a :class:`BoundCertificate` whose ``slack`` is the
bound side minus the constrained side, so a valid inequality always has
``slack >= 0`` up to rounding.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .core import PointSystem, centroid, pairwise_sq_sum
from .errors import CoincidentPoints, GeometryError
from .sphere import DEFAULT_SPHERE_TOL, Sphere, require_cospherical

EQUALITY_TOL = 1e-7
VIOLATION_TOL = 1e-9


class BoundName(str, enum.Enum):
    SUM_SQ = "SumSq"
    HARMONIC_SQ = "HarmonicSq"
    CBS = "CBS"
    RECIPROCAL_SUM = "ReciprocalSum"
    KANTOROVICH_LOWER = "KantorovichLower"
    KANTOROVICH_UPPER = "KantorovichUpper"
    TRIANGLE_MEDIAN_SQ = "TriangleMedianSq"
    TRIANGLE_MEDIAN_SUM = "TriangleMedianSum"
    TETRA_MEDIAN_SQ = "TetraMedianSq"
    TETRA_MEDIAN_SUM = "TetraMedianSum"
    BIMEDIAN_SQ = "BimedianSq"
    BIMEDIAN_SUM = "BimedianSum"


@dataclass(frozen=True)
class BoundCertificate:
    """``lhs`` is the constrained quantity, ``rhs`` the bound.

    ``upper`` tells the direction: ``lhs <= rhs`` when True, ``lhs >= rhs``
    otherwise.
    """

    name: BoundName
    lhs: float
    rhs: float
    slack: float
    equality: bool
    upper: bool = True

    @property
    def scale(self) -> float:
        return max(abs(self.lhs), abs(self.rhs))

    def holds(self, tol: float = VIOLATION_TOL) -> bool:
        return self.slack >= -tol * self.scale

    @classmethod
    def upper_bound(cls, name, value, bound, eq_tol=EQUALITY_TOL):
        return cls._make(name, value, bound, bound - value, eq_tol, True)

    @classmethod
    def lower_bound(cls, name, value, bound, eq_tol=EQUALITY_TOL):
        return cls._make(name, value, bound, value - bound, eq_tol, False)

    @classmethod
    def _make(cls, name, value, bound, slack, eq_tol, upper):
        value, bound, slack = float(value), float(bound), float(slack)
        scale = max(abs(value), abs(bound))
        return cls(BoundName(name), value, bound, slack, bool(abs(slack) <= eq_tol * scale), upper)


def _nonzero_distances(ps: PointSystem, squared: bool) -> np.ndarray:
    d2 = ps.pair_sq_distances()
    if np.any(d2 == 0.0):
        raise CoincidentPoints("coincident points make the reciprocal sums infinite")
    return d2 if squared else np.sqrt(d2)


def check_sum_sq_bound(ps, s: Sphere, sphere_tol=DEFAULT_SPHERE_TOL) -> BoundCertificate:
    """``sum_{i<j} |A_i A_j|^2 <= n^2 R^2``; tight exactly when G = O."""
    require_cospherical(ps, s, sphere_tol)
    cert = BoundCertificate.upper_bound(
        BoundName.SUM_SQ, pairwise_sq_sum(ps), ps.n**2 * s.radius**2
    )
    # Slack equals n^2 |OG|^2 on the sphere; decide equality from the centers.
    og2 = float(np.sum((centroid(ps) - s.center) ** 2))
    at_center = og2 <= EQUALITY_TOL * s.radius**2
    return replace(cert, equality=cert.equality and at_center)


def check_harmonic_sq_bound(ps, s: Sphere, sphere_tol=DEFAULT_SPHERE_TOL) -> BoundCertificate:
    """``sum 1/|A_i A_j|^2 >= (n-1)^2 / (4 R^2)``."""
    require_cospherical(ps, s, sphere_tol)
    d2 = _nonzero_distances(ps, squared=True)
    return BoundCertificate.lower_bound(
        BoundName.HARMONIC_SQ, np.sum(1.0 / d2), (ps.n - 1) ** 2 / (4 * s.radius**2)
    )


def check_cbs_bound(ps, s: Sphere, sphere_tol=DEFAULT_SPHERE_TOL) -> BoundCertificate:
    """``sum |A_i A_j| <= n R sqrt(n(n-1)/2)`` over first-power distances."""
    require_cospherical(ps, s, sphere_tol)
    n = ps.n
    return BoundCertificate.upper_bound(
        BoundName.CBS, np.sum(ps.pair_distances()), n * s.radius * math.sqrt(n * (n - 1) / 2)
    )


def check_reciprocal_bound(ps, s: Sphere, sphere_tol=DEFAULT_SPHERE_TOL) -> BoundCertificate:
    """``sum 1/|A_i A_j| >= (n-1) sqrt(n(n-1)) / (2 sqrt(2) R)``."""
    require_cospherical(ps, s, sphere_tol)
    n = ps.n
    d = _nonzero_distances(ps, squared=False)
    bound = (n - 1) * math.sqrt(n * (n - 1)) / (2 * math.sqrt(2) * s.radius)
    return BoundCertificate.lower_bound(BoundName.RECIPROCAL_SUM, np.sum(1.0 / d), bound)


@dataclass(frozen=True)
class KantorovichInput:
    values: tuple[float, ...]
    k: float
    m_min: float
    m_max: float
    count: int

    @classmethod
    def from_values(cls, values, k: float = 1.0) -> "KantorovichInput":
        vals = np.asarray(values, dtype=float).ravel()
        if vals.size == 0:
            raise GeometryError("need at least one value")
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
            raise GeometryError("Kantorovich values must be finite and positive")
        return cls(tuple(float(v) for v in vals), float(k), float(vals.min()), float(vals.max()), int(vals.size))

    @classmethod
    def from_points(cls, ps: PointSystem, k: float = 1.0) -> "KantorovichInput":
        """Values ``|A_i A_j|^k`` over the n(n-1)/2 unordered pairs."""
        d = _nonzero_distances(ps, squared=False)
        return cls.from_values(d**k, k)


def kantorovich_upper(count: int, m: float, M: float) -> float:
    """Sharp maximum of ``(sum x)(sum 1/x)`` over ``count`` values in ``[m, M]``."""
    n2 = count * count
    if count % 2 == 0:
        return (M + m) ** 2 * n2 / (4 * M * m)
    return ((M + m) ** 2 * n2 - (M - m) ** 2) / (4 * M * m)


def kantorovich_bounds(kin: KantorovichInput) -> tuple[BoundCertificate, BoundCertificate]:
    """Lower (``N^2``) and upper certificates for ``P = (sum x)(sum 1/x)``."""
    vals = np.asarray(kin.values)
    if np.any(vals <= 0):
        raise GeometryError("Kantorovich values must be positive")
    product = float(np.sum(vals) * np.sum(1.0 / vals))
    n = kin.count
    lower = BoundCertificate.lower_bound(BoundName.KANTOROVICH_LOWER, product, n * n)
    upper = BoundCertificate.upper_bound(
        BoundName.KANTOROVICH_UPPER, product, kantorovich_upper(n, kin.m_min, kin.m_max)
    )
    return lower, upper


def all_bounds(ps, s: Sphere, sphere_tol=DEFAULT_SPHERE_TOL, k: float = 1.0) -> list[BoundCertificate]:
    """Every applicable certificate; reciprocal ones are skipped for coincident points."""
    certs = [check_sum_sq_bound(ps, s, sphere_tol), check_cbs_bound(ps, s, sphere_tol)]
    if np.all(ps.pair_sq_distances() > 0):
        certs.insert(1, check_harmonic_sq_bound(ps, s, sphere_tol))
        certs.append(check_reciprocal_bound(ps, s, sphere_tol))
        certs.extend(kantorovich_bounds(KantorovichInput.from_points(ps, k)))
    return certs
