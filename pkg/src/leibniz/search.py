"""Projected gradient ascent of the pairwise squared-distance sum on a sphere.

Points are confined to the sphere of radius R about the origin. The sum
is bounded by n^2 R^2 and reaches it exactly when the centroid sits at the
center, so the search converges to some configuration with G = O (the set
of maximizers is a continuum, not a single shape).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .core import PointSystem, as_point, centroid, pairwise_sq_sum
from .errors import GeometryError
from .sphere import Sphere

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class SearchConfig:
    n: int = 3
    dim: int = 2
    radius: float = 1.0
    step_size: float | None = None  # defaults to 0.1 / n
    max_iters: int = 5000
    restarts: int = 8
    seed: int = 0
    convergence_tol: float = 1e-10

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.dim < 2:
            raise ValueError("dim must be at least 2")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.step_size is not None and not self.step_size > 0:
            raise ValueError("step_size must be positive")
        if self.max_iters < 1 or self.restarts < 1:
            raise ValueError("max_iters and restarts must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if not self.convergence_tol > 0:
            raise ValueError("convergence_tol must be positive")

    @property
    def step(self) -> float:
        return self.step_size if self.step_size is not None else 0.1 / self.n

    @property
    def bound(self) -> float:
        return self.n**2 * self.radius**2


@dataclass(frozen=True)
class SearchResult:
    best_config: PointSystem
    best_value: float
    bound: float
    gap_to_bound: float
    centroid_offset: float
    iterations_used: int
    converged: bool
    best_restart: int


def objective_and_gradient(ps: PointSystem) -> tuple[float, np.ndarray]:
    """Pairwise squared-distance sum and its gradient ``2n (A_i - G)`` per point."""
    return pairwise_sq_sum(ps), 2.0 * ps.n * (ps.points - centroid(ps))


def project_to_sphere(p, s: Sphere) -> np.ndarray:
    p = as_point(p, s.dim)
    v = p - s.center
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise GeometryError("the sphere center has no unique nearest point on the sphere")
    return s.center + s.radius * (v / norm)


def _project_rows(points: np.ndarray, radius: float) -> np.ndarray:
    norms = np.linalg.norm(points, axis=1, keepdims=True)
    if np.any(norms == 0.0):
        raise GeometryError("iterate hit the sphere center")
    return radius * points / norms


def _is_success(value, offset, cfg: SearchConfig) -> bool:
    return (
        offset <= 10 * cfg.convergence_tol * cfg.radius
        and cfg.bound - value <= cfg.convergence_tol * cfg.bound
    )


def _run_restart(cfg: SearchConfig, rng: np.random.Generator):
    pts = rng.standard_normal((cfg.n, cfg.dim))
    pts = _project_rows(pts, cfg.radius)
    step = cfg.step
    best_value, best_pts = -np.inf, pts
    it = 0
    for it in range(1, cfg.max_iters + 1):
        ps = PointSystem(pts)
        value, grad = objective_and_gradient(ps)
        offset = float(np.linalg.norm(centroid(ps)))
        if _is_success(value, offset, cfg):
            # Near the top the value only moves by rounding, so a converged
            # iterate is preferred over a marginally larger earlier one.
            return float(value), pts, it, True
        if value > best_value:
            best_value, best_pts = value, pts
        radial = np.einsum("ij,ij->i", grad, pts)[:, None] * pts / cfg.radius**2
        tangent = float(np.max(np.linalg.norm(grad - radial, axis=1)))
        if tangent <= cfg.convergence_tol * 2 * cfg.n * cfg.radius:
            # Stationary on the sphere with G away from O: a saddle point.
            break
        pts = _project_rows(pts + step * grad, cfg.radius)
    return float(best_value), best_pts, it, False


def maximize_sum_sq(cfg: SearchConfig) -> SearchResult:
    """Multi-restart projected gradient ascent; deterministic for a given seed.

    Restarts draw from independent child streams of ``cfg.seed``, so their
    results do not depend on execution order. Converged restarts outrank
    unconverged ones, then larger values win, ties going to the lower
    restart index.
    """
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    best = None
    total_iters = 0
    for idx, stream in enumerate(streams):
        value, pts, iters, ok = _run_restart(cfg, np.random.default_rng(stream))
        total_iters += iters
        logger.debug("restart %d: value=%.17g converged=%s after %d iterations", idx, value, ok, iters)
        if best is None or (ok, value) > (best[3], best[0]):
            best = (value, pts, idx, ok)

    value, pts, idx, _ = best
    ps = PointSystem(pts)
    offset = float(np.linalg.norm(centroid(ps)))
    if value > cfg.bound * (1 + 1e-9):
        raise AssertionError(f"search value {value!r} exceeds the bound {cfg.bound!r}")
    return SearchResult(
        best_config=ps,
        best_value=value,
        bound=cfg.bound,
        gap_to_bound=cfg.bound - value,
        centroid_offset=offset,
        iterations_used=total_iters,
        converged=_is_success(value, offset, cfg),
        best_restart=idx,
    )
