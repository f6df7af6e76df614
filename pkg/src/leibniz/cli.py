"""Command-line front end: ``verify``, ``report``, ``fuzz`` and ``search``.

Exit codes: 0 success, 1 identity/invariant violation, 2 input error,
3 search did not converge.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys

import numpy as np

from . import bounds, core, simplex, sphere
from .document import DocumentError, PointSetDocument, parse_document
from .errors import GeometryError
from .fuzz import run_fuzz
from .search import SearchConfig, maximize_sum_sq

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_NO_CONVERGENCE = 3

logger = logging.getLogger("leibniz")


def _vec(v) -> list[float]:
    return [float(x) for x in v]


def _identity_entry(label: str, point, report: core.IdentityReport) -> dict:
    return {
        "label": label,
        "point": _vec(point),
        "lhs": report.lhs,
        "rhs": report.rhs,
        "residual": report.residual,
        "scale": report.scale,
        "passed": report.passed,
    }


def _certificate_entry(cert: bounds.BoundCertificate, tol: float) -> dict:
    return {
        "name": cert.name.value,
        "relation": "<=" if cert.upper else ">=",
        "lhs": cert.lhs,
        "rhs": cert.rhs,
        "slack": cert.slack,
        "equality": cert.equality,
        "holds": cert.holds(tol),
    }


def derived_query_point(ps: core.PointSystem) -> np.ndarray:
    """Deterministic pseudo-random point seeded by a hash of the coordinates.

    Drawn uniformly from the bounding box of the points padded by one unit.
    """
    digest = hashlib.sha256(json.dumps(ps.points.tolist()).encode()).digest()
    rng = np.random.default_rng(int.from_bytes(digest[:8], "little"))
    lo = ps.points.min(axis=0) - 1.0
    hi = ps.points.max(axis=0) + 1.0
    return rng.uniform(lo, hi)


def _identity_section(doc: PointSetDocument, ps: core.PointSystem, tol: float) -> list[dict]:
    if doc.query_point is not None:
        queries = [("query", np.asarray(doc.query_point, dtype=float))]
    else:
        queries = [("derived", derived_query_point(ps))]
    queries.append(("centroid", core.centroid(ps)))
    queries.extend((f"A{i + 1}", a) for i, a in enumerate(ps.points))
    return [_identity_entry(label, m, core.verify_identity(ps, m, tol)) for label, m in queries]


def build_verify(doc: PointSetDocument, tol: float) -> dict:
    ps = doc.point_system()
    identity = _identity_section(doc, ps, tol)
    return {
        "command": "verify",
        "tolerance": tol,
        "input": doc.to_dict(),
        "identity": identity,
        "passed": all(e["passed"] for e in identity),
    }


def _proof_steps(ps: core.PointSystem, tol: float, warnings: list) -> dict:
    ratios = []
    for i in range(ps.n):
        try:
            rep = core.median_ratio_check(ps, i, tol)
        except GeometryError as exc:
            warnings.append(f"median ratio for A{i + 1} skipped: {exc}")
            continue
        ratios.append(_identity_entry(f"A{i + 1}", ps.points[i], rep))
    steps = {"median_ratio": ratios}
    # Induction step: G on the segment from the last point to the centroid of the rest.
    p = ps.points[-1]
    q = core.centroid(core.PointSystem(ps.points[:-1]))
    g = core.centroid(ps)
    if np.any(p != q):
        m = derived_query_point(ps)
        rep = core.stewart_check(m, p, q, g, tol)
        steps["stewart"] = _identity_entry("stewart", m, rep)
    else:
        warnings.append("Stewart step skipped: last point coincides with the centroid of the others")
    return steps


def _sphere_section(ps, s: sphere.Sphere, tol: float, sphere_tol: float) -> dict:
    triple = sphere.orthocenter(ps, s, sphere_tol)
    oh2, gh2 = sphere.oh_gh_squared(ps, s, tol, sphere_tol)
    return {
        "center": _vec(s.center),
        "radius": s.radius,
        "fit_residual": s.fit_residual,
        "og_squared": sphere.og_squared(ps, s, sphere_tol),
        "og_squared_direct": float(np.sum((triple.centroid - s.center) ** 2)),
        "orthocenter": _vec(triple.orthocenter),
        "oh_squared": oh2,
        "gh_squared": gh2,
        "oh_squared_direct": float(np.sum((triple.orthocenter - s.center) ** 2)),
        "gh_squared_direct": float(np.sum((triple.orthocenter - triple.centroid) ** 2)),
        "collinearity_residual": triple.collinearity_residual,
        "ratio_residual": triple.ratio_residual,
        "regular": sphere.regularity_check(ps, s, tol, sphere_tol),
    }


def _simplex_section(ps, s, tol, sphere_tol, warnings) -> dict | None:
    try:
        edges = simplex.edges_from_points(ps)
    except GeometryError as exc:
        warnings.append(f"simplex section omitted: {exc}")
        return None
    if isinstance(edges, simplex.TriangleEdges):
        medians = simplex.triangle_medians(edges)
        section = {
            "kind": "triangle",
            "edges": {"a": edges.a, "b": edges.b, "c": edges.c},
            "medians": list(medians),
            "medians_squared": [m * m for m in medians],
        }
        bound_fns = [simplex.triangle_median_bounds]
    else:
        medians = simplex.tetra_medians(edges)
        bimedians = simplex.tetra_bimedians(edges)
        section = {
            "kind": "tetrahedron",
            "edges": dict(zip("abcdef", edges.as_tuple())),
            "medians": list(medians),
            "medians_squared": [m * m for m in medians],
            "bimedians": list(bimedians),
            "bimedians_squared": [m * m for m in bimedians],
        }
        bound_fns = [simplex.tetra_median_bounds, simplex.tetra_bimedian_bounds]
    certs = []
    if s is None:
        warnings.append("simplex bounds omitted: no circumsphere")
    else:
        try:
            for fn in bound_fns:
                certs.extend(fn(edges, s, sphere_tol))
        except GeometryError as exc:
            certs = []
            warnings.append(f"simplex bounds omitted: {exc}")
    section["bounds"] = [_certificate_entry(c, tol) for c in certs]
    return section


def build_report(doc: PointSetDocument, tol: float, sphere_tol: float) -> dict:
    ps = doc.point_system()
    warnings: list[str] = []
    report = {
        "command": "report",
        "tolerance": tol,
        "sphere_tolerance": sphere_tol,
        "input": doc.to_dict(),
        "n": ps.n,
        "dimension": ps.dim,
        "centroid": _vec(core.centroid(ps)),
        "pairwise_sq_sum": core.pairwise_sq_sum(ps),
        "identity": _identity_section(doc, ps, tol),
    }
    if ps.n >= 3:
        report["general_medians_squared"] = [core.general_median_sq(ps, i) for i in range(ps.n)]
        report["proof_steps"] = _proof_steps(ps, tol, warnings)

    s = None
    try:
        s = sphere.fit_circumsphere(ps, sphere_tol)
        sphere_part = _sphere_section(ps, s, tol, sphere_tol)
        bound_part = [_certificate_entry(c, tol) for c in bounds.all_bounds(ps, s, sphere_tol)]
    except GeometryError as exc:
        s = None
        warnings.append(f"sphere and bounds sections omitted: {exc}")
    else:
        report["sphere"] = sphere_part
        report["bounds"] = bound_part
        if np.any(ps.pair_sq_distances() == 0):
            warnings.append("reciprocal and Kantorovich bounds omitted: coincident points")

    if ps.n in (3, 4):
        section = _simplex_section(ps, s, tol, sphere_tol, warnings)
        if section is not None:
            report["simplex"] = section
    report["warnings"] = warnings

    checks = [e["passed"] for e in report["identity"]]
    steps = report.get("proof_steps", {})
    checks += [e["passed"] for e in steps.get("median_ratio", [])]
    if "stewart" in steps:
        checks.append(steps["stewart"]["passed"])
    checks += [c["holds"] for c in report.get("bounds", [])]
    checks += [c["holds"] for c in report.get("simplex", {}).get("bounds", [])]
    report["passed"] = all(checks)
    return report


def _read_input(path: str | None) -> PointSetDocument:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_document(text)


def _emit(payload: dict, as_json: bool, text_lines) -> None:
    if as_json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        for line in text_lines(payload):
            print(line)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _identity_lines(entries):
    for e in entries:
        status = "ok" if e["passed"] else "FAIL"
        yield f"  {e['label']:>9}: lhs={_fmt(e['lhs'])} rhs={_fmt(e['rhs'])} residual={e['residual']:.3g} [{status}]"


def _verify_lines(rep):
    yield f"Leibniz identity (tol={rep['tolerance']:g})"
    yield from _identity_lines(rep["identity"])
    yield "PASSED" if rep["passed"] else "FAILED"


def _cert_lines(certs):
    for c in certs:
        mark = "=" if c["equality"] else ("ok" if c["holds"] else "VIOLATED")
        yield f"  {c['name']:>18}: {_fmt(c['lhs'])} {c['relation']} {_fmt(c['rhs'])}  slack={c['slack']:.6g} [{mark}]"


def _report_lines(rep):
    yield f"n={rep['n']} dimension={rep['dimension']}"
    yield f"centroid: {rep['centroid']}"
    yield f"sum of squared pairwise distances: {_fmt(rep['pairwise_sq_sum'])}"
    yield "Leibniz identity:"
    yield from _identity_lines(rep["identity"])
    if "general_medians_squared" in rep:
        yield f"squared medians: {[_fmt(v) for v in rep['general_medians_squared']]}"
    if "sphere" in rep:
        sp = rep["sphere"]
        yield f"circumsphere: center={sp['center']} R={_fmt(sp['radius'])} residual={sp['fit_residual']:.3g}"
        yield f"  OG^2={_fmt(sp['og_squared'])} OH^2={_fmt(sp['oh_squared'])} GH^2={_fmt(sp['gh_squared'])}"
        yield f"  orthocenter={sp['orthocenter']} regular={sp['regular']}"
        yield "bounds:"
        yield from _cert_lines(rep["bounds"])
    if "simplex" in rep:
        sx = rep["simplex"]
        yield f"{sx['kind']}: edges={sx['edges']}"
        yield f"  medians={[_fmt(v) for v in sx['medians']]}"
        if "bimedians" in sx:
            yield f"  bimedians={[_fmt(v) for v in sx['bimedians']]}"
        yield from _cert_lines(sx["bounds"])
    for w in rep["warnings"]:
        yield f"warning: {w}"
    yield "PASSED" if rep["passed"] else "FAILED"


def _fuzz_lines(summary):
    yield f"fuzz: count={summary['count']} seed={summary['seed']} tol={summary['tol']:g}"
    for name, c in summary["invariants"].items():
        yield f"  {name:>32}: {c['passed']}/{c['checked']}"
    for v in summary["violations"]:
        yield (
            f"VIOLATION {v['invariant']}: reproduce with --seed {v['seed']} --start {v['index']} --count 1"
            f" --max-n {summary['max_n']} --max-d {summary['max_d']}  {v['detail']}"
        )
    yield f"{len(summary['violations'])} violations"


def _search_lines(res):
    yield f"search: n={res['n']} dim={res['dim']} R={_fmt(res['radius'])} seed={res['seed']}"
    yield f"  best_value={_fmt(res['best_value'])}"
    yield f"  n^2 R^2   ={_fmt(res['bound'])}"
    yield f"  gap={res['gap_to_bound']:.3g} centroid_offset={res['centroid_offset']:.3g}"
    yield f"  iterations={res['iterations_used']} converged={res['converged']}"


def _cmd_verify(args) -> int:
    rep = build_verify(_read_input(args.input), args.tol)
    _emit(rep, args.json, _verify_lines)
    return EXIT_OK if rep["passed"] else EXIT_VIOLATION


def _cmd_report(args) -> int:
    rep = build_report(_read_input(args.input), args.tol, args.sphere_tol)
    _emit(rep, args.json, _report_lines)
    return EXIT_OK if rep["passed"] else EXIT_VIOLATION


def _cmd_fuzz(args) -> int:
    summary = run_fuzz(args.count, args.max_n, args.max_d, args.seed, args.tol, args.corrupt_oracle, args.start)
    payload = {"command": "fuzz", "max_n": args.max_n, "max_d": args.max_d, "start": args.start}
    payload.update(summary.as_dict())
    _emit(payload, args.json, _fuzz_lines)
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def _cmd_search(args) -> int:
    cfg = SearchConfig(
        n=args.n,
        dim=args.dim,
        radius=args.radius,
        step_size=args.step_size,
        max_iters=args.max_iters,
        restarts=args.restarts,
        seed=args.seed,
        convergence_tol=args.convergence_tol,
    )
    try:
        res = maximize_sum_sq(cfg)
    except AssertionError as exc:
        print(f"leibniz search: invariant violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    payload = {
        "command": "search",
        "n": cfg.n,
        "dim": cfg.dim,
        "radius": cfg.radius,
        "seed": cfg.seed,
        "best_value": res.best_value,
        "bound": res.bound,
        "gap_to_bound": res.gap_to_bound,
        "centroid_offset": res.centroid_offset,
        "iterations_used": res.iterations_used,
        "converged": res.converged,
        "best_restart": res.best_restart,
        "best_config": res.best_config.points.tolist(),
    }
    _emit(payload, args.json, _search_lines)
    return EXIT_OK if res.converged else EXIT_NO_CONVERGENCE


def _positive_float(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return x


def _uint(text):
    x = int(text)
    if x < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leibniz", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sphere_tol=False):
        p.add_argument("--tol", type=_positive_float, default=core.DEFAULT_TOL, help="relative tolerance")
        if sphere_tol:
            p.add_argument("--sphere-tol", type=_positive_float, default=sphere.DEFAULT_SPHERE_TOL,
                           help="cosphericity tolerance relative to R")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("verify", help="check the Leibniz identity on a point set")
    p.add_argument("--input", help="JSON or CSV point set (default: stdin)")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("report", help="identities, sphere relations, bounds and simplex formulas")
    p.add_argument("--input", help="JSON or CSV point set (default: stdin)")
    common(p, sphere_tol=True)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("fuzz", help="randomized invariant checks")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-n", type=int, default=16)
    p.add_argument("--max-d", type=int, default=6)
    p.add_argument("--seed", type=_uint, default=0)
    p.add_argument("--start", type=_uint, default=0, help="index of the first system (for replays)")
    p.add_argument("--corrupt-oracle", action="store_true", help=argparse.SUPPRESS)
    common(p)
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("search", help="maximize the pairwise squared-distance sum on a sphere")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--radius", type=_positive_float, default=1.0)
    p.add_argument("--seed", type=_uint, default=0)
    p.add_argument("--step-size", type=_positive_float, default=None)
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--convergence-tol", type=_positive_float, default=1e-10)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=_cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except (DocumentError, GeometryError, ValueError) as exc:
        print(f"leibniz {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())
