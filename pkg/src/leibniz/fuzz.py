"""Randomized invariant harness.

System ``i`` of a run is drawn from ``np.random.default_rng([seed, i])``,
so any reported violation can be replayed from ``(seed, index)`` alone.
Even indices are unconstrained point clouds; odd indices are sampled on a
random sphere whose exact center and radius serve as the oracle.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import bounds, core, simplex, sphere
from .errors import GeometryError

COORD_RANGE = 1e3


@dataclass
class FuzzSummary:
    count: int
    seed: int
    tol: float
    checked: Counter = field(default_factory=Counter)
    passed: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, name: str, ok: bool, index: int, detail: str = "") -> None:
        self.checked[name] += 1
        if ok:
            self.passed[name] += 1
        else:
            self.violations.append({"invariant": name, "seed": self.seed, "index": index, "detail": detail})

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "tol": self.tol,
            "invariants": {
                name: {"checked": self.checked[name], "passed": self.passed[name]}
                for name in sorted(self.checked)
            },
            "violations": self.violations,
        }


def random_rotation(rng: np.random.Generator, dim: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def random_system(rng, max_n: int, max_d: int) -> core.PointSystem:
    n = int(rng.integers(2, max_n + 1))
    d = int(rng.integers(1, max_d + 1))
    pts = rng.uniform(-COORD_RANGE, COORD_RANGE, size=(n, d))
    if n > 2 and rng.random() < 0.1:
        pts[rng.integers(n)] = pts[0]
    return core.PointSystem(pts)


def random_spherical_system(rng, max_n: int, max_d: int):
    """Points on a random sphere, returned with that sphere's center and radius."""
    n = int(rng.integers(2, max_n + 1))
    d = int(rng.integers(2, max(2, max_d) + 1))
    center = rng.uniform(-10.0, 10.0, size=d)
    radius = float(10.0 ** rng.uniform(-1.0, 2.0))
    u = rng.standard_normal((n, d))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    return core.PointSystem(center + radius * u), center, radius


def _close(a: float, b: float, tol: float, scale: float) -> bool:
    return abs(a - b) <= tol * scale


def _check_plain(ps, rng, idx, tol, summary, corrupt):
    g = core.centroid(ps)
    queries = {"leibniz_random_m": rng.uniform(-COORD_RANGE, COORD_RANGE, ps.dim), "leibniz_at_centroid": g}
    for name, m in queries.items():
        lhs, rhs = core.leibniz_sides(ps, m)
        if corrupt:
            rhs += 1e-3 * max(1.0, lhs)
        summary.record(name, _close(lhs, rhs, tol, max(1.0, lhs, rhs)), idx, f"lhs={lhs!r} rhs={rhs!r}")

    ok = all(core.verify_identity(ps, a, tol).passed for a in ps.points)
    summary.record("leibniz_at_vertices", ok, idx)

    total = core.pairwise_sq_sum(ps)
    m = queries["leibniz_random_m"]
    rot = random_rotation(rng, ps.dim)
    shift = rng.uniform(-COORD_RANGE, COORD_RANGE, ps.dim)
    moved = ps.transformed(rot, shift)
    moved_total = core.pairwise_sq_sum(moved)
    lhs0, _ = core.leibniz_sides(ps, m)
    lhs1, _ = core.leibniz_sides(moved, rot @ m + shift)
    # Differences of shifted coordinates carry absolute error ~ eps * |coord|.
    coord2 = float(np.max(np.abs(moved.points))) ** 2
    summary.record(
        "rigid_motion_invariance",
        _close(total, moved_total, tol, max(1.0, total, coord2)) and _close(lhs0, lhs1, tol, max(1.0, lhs0, coord2)),
        idx,
        f"sum {total!r} vs {moved_total!r}",
    )

    lam = float(10.0 ** rng.uniform(-2, 2))
    scaled = ps.transformed(scale=lam)
    summary.record(
        "scaling",
        _close(core.pairwise_sq_sum(scaled), lam * lam * total, tol, max(1.0, lam * lam * total))
        and np.allclose(core.centroid(scaled), lam * g, rtol=tol, atol=tol),
        idx,
    )

    if ps.n < 3:
        return
    sq = ps.sq_distance_matrix()
    for i in range(ps.n):
        formula = core.general_median_sq(ps, i)
        direct = float(np.sum((ps.points[i] - core.sub_centroid(ps, i)) ** 2))
        summary.record(
            "general_median_vs_coordinates",
            _close(formula, direct, tol, max(1.0, direct, sq[i].sum() / (ps.n - 1))),
            idx,
            f"i={i} formula={formula!r} direct={direct!r}",
        )
        try:
            report = core.median_ratio_check(ps, i, tol)
        except GeometryError:
            continue
        summary.record("median_ratio", report.passed, idx, f"i={i} residual={report.residual!r}")

    p = ps.points[-1]
    q = core.centroid(core.PointSystem(ps.points[:-1]))
    if np.any(p != q):
        report = core.stewart_check(m, p, q, g, tol)
        summary.record("stewart", report.passed, idx, f"residual={report.residual!r}")


def _check_spherical(ps, center, radius, rng, idx, tol, summary):
    s = sphere.sphere_through(ps, center, radius)
    n = ps.n
    g = core.centroid(ps)
    r2 = radius * radius

    og2 = sphere.og_squared(ps, s)
    direct = float(np.sum((g - center) ** 2))
    summary.record("og_squared", _close(og2, direct, tol, r2), idx, f"{og2!r} vs {direct!r}")

    triple = sphere.orthocenter(ps, s)
    summary.record(
        "orthocenter_relation",
        triple.collinearity_residual <= tol * n and triple.ratio_residual <= tol * n,
        idx,
    )
    oh2, gh2 = sphere.oh_gh_squared(ps, s, tol)
    h = triple.orthocenter
    summary.record(
        "oh_gh_squared",
        _close(oh2, float(np.sum((h - center) ** 2)), tol, n * n * r2)
        and _close(gh2, float(np.sum((h - g) ** 2)), tol, n * n * r2),
        idx,
    )

    for cert in bounds.all_bounds(ps, s):
        summary.record(f"bound_{cert.name.value}", cert.holds(tol), idx, f"lhs={cert.lhs!r} rhs={cert.rhs!r}")

    regular = sphere.regularity_check(ps, s, bounds.EQUALITY_TOL)
    summary.record("regularity_matches_equality", regular == bounds.check_sum_sq_bound(ps, s).equality, idx)

    if n >= ps.dim + 1:
        try:
            fitted = sphere.fit_circumsphere(ps)
        except GeometryError as exc:
            summary.record("circumsphere_recovery", False, idx, str(exc))
        else:
            err = max(float(np.linalg.norm(fitted.center - center)), abs(fitted.radius - radius))
            summary.record("circumsphere_recovery", err <= sphere.DEFAULT_SPHERE_TOL * radius, idx, f"error={err!r}")

    if (n == 3 and ps.dim >= 2) or (n == 4 and ps.dim >= 3):
        try:
            edges = simplex.edges_from_points(ps)
        except GeometryError:
            return
        if n == 3:
            lengths = simplex.triangle_medians(edges)
            direct = [np.linalg.norm(ps.points[i] - core.sub_centroid(ps, i)) for i in range(3)]
            certs = simplex.triangle_median_bounds(edges, s)
        else:
            lengths = simplex.tetra_medians(edges)
            direct = [np.linalg.norm(ps.points[i] - core.sub_centroid(ps, i)) for i in range(4)]
            certs = simplex.tetra_median_bounds(edges, s) + simplex.tetra_bimedian_bounds(edges, s)
        summary.record(
            "simplex_medians_vs_coordinates",
            np.allclose(lengths, direct, rtol=1e-6, atol=1e-9 * radius),
            idx,
        )
        for cert in certs:
            summary.record(f"bound_{cert.name.value}", cert.holds(tol), idx)


def run_fuzz(count: int, max_n: int = 16, max_d: int = 6, seed: int = 0,
             tol: float = core.DEFAULT_TOL, corrupt_oracle: bool = False, start: int = 0) -> FuzzSummary:
    """Check systems ``start .. start + count - 1`` of the stream for ``seed``.

    ``corrupt_oracle`` skews the Leibniz right-hand side so that the harness
    itself can be shown to report violations.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if max_n < 2 or max_d < 1:
        raise ValueError("max_n must be >= 2 and max_d >= 1")
    if start < 0:
        raise ValueError("start must be non-negative")
    summary = FuzzSummary(count=count, seed=seed, tol=tol)
    for idx in range(start, start + count):
        rng = np.random.default_rng([seed, idx])
        if idx % 2 == 0:
            _check_plain(random_system(rng, max_n, max_d), rng, idx, tol, summary, corrupt_oracle)
        else:
            ps, center, radius = random_spherical_system(rng, max_n, max_d)
            _check_plain(ps, rng, idx, tol, summary, corrupt_oracle)
            _check_spherical(ps, center, radius, rng, idx, tol, summary)
    return summary
