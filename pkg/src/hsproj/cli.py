"""Command-line front end.

Subcommands: validate, project, altitudes, check.  Input simplex
documents are JSON (see documents.py); reports go to stdout, human
readable by default or as a full-precision JSON report with --json.

Exit codes: 0 success, 1 domain error (off-manifold point, degenerate
simplex, undefined projection, failed invariant check, ...), 2 usage or
parse error.  All vertex and face indices are 1-based.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .documents import SimplexDocument, digest, dumps, parse_simplex_document
from .errors import DocumentError, GeometryError, ProjectionUndefined
from .forms import DEFAULT_TOLS, Model, Tolerances
from .forms import distance as geodesic
from .oracle import OracleOptions, oracle_project, random_point, random_simplex
from .projection import (
    altitude,
    distance_to_face,
    face_complement,
    project_to_face,
    vertex_foot,
)
from .simplex import (
    Simplex,
    bordered_minor,
    build_simplex,
    deleted_minor,
    scaling_matrix,
    schur_complement,
    schur_complement_via_minors,
    verify_inverse_identity,
    verify_block_inverse_identities,
)

# check-suite bounds on the closed form vs oracle comparison
ORACLE_DISTANCE_TOL = 1e-6
ORACLE_FOOT_TOL = 1e-5
_CHECK_SAMPLES_PER_SIMPLEX = 2


def _int_csv(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_csv(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _read_document(path: str | None) -> SimplexDocument:
    if path is None or path == "-":
        return parse_simplex_document(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_simplex_document(fh.read())
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc


def _build(doc: SimplexDocument, tols: Tolerances) -> Simplex:
    return build_simplex(doc.to_model(), doc.vertex_array(), tols)


def _vec(a) -> list[float]:
    return [float(x) for x in np.asarray(a).ravel()]


def _echo_inputs(doc: SimplexDocument, **extra) -> dict:
    inputs = doc.as_dict()
    inputs.update({k: v for k, v in extra.items() if v is not None})
    return inputs


def _report(command: str, inputs: dict) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "inputs_digest": digest(inputs),
        "results": {},
        "residuals": {},
        "status": "ok",
    }


def _membership_residuals(simplex: Simplex) -> list[float]:
    sig = simplex.model.signature
    P = simplex.vertices
    return [
        abs(float((P[i] * sig) @ P[i]) - simplex.model.curvature)
        for i in range(simplex.vertex_count)
    ]


def cmd_validate(args, tols: Tolerances) -> dict:
    doc = _read_document(args.file)
    report = _report("validate", _echo_inputs(doc))
    simplex = _build(doc, tols)
    report["results"] = {
        "model": simplex.model.name,
        "dimension": simplex.n,
        "det_edge_matrix": simplex.edge_det,
        "det_gram_matrix": simplex.gram_det,
    }
    report["residuals"] = {"vertex_membership": _membership_residuals(simplex)}
    return report


def _projection_block(simplex: Simplex, face, p, result, tols: Tolerances) -> tuple[dict, dict]:
    face0, comp0 = face_complement(simplex, face)
    M = simplex.edge_matrix
    base = tuple(int(i) + 1 for i in face0)
    results = {
        "foot": _vec(result.foot),
        "distance": result.distance,
        "lambda": {str(k): v for k, v in sorted(result.lambdas.items())},
        "pre_foot": _vec(result.pre_foot),
        "minors": {
            "det_edge_matrix": simplex.edge_det,
            "face_minor": float(np.linalg.det(M[np.ix_(face0, face0)])),
            "bordered_diagonal": {
                str(int(t) + 1): bordered_minor(M, base, int(t) + 1, int(t) + 1) for t in comp0
            },
        },
    }
    sig = simplex.model.signature
    r = np.asarray(p, dtype=float) - result.pre_foot
    ortho = max(abs(float((r * sig) @ simplex.vertices[i])) for i in face0)
    manifold = abs(
        float((result.foot * sig) @ result.foot) - simplex.model.curvature
    )
    residuals = {
        "foot_manifold": manifold,
        "orthogonality": ortho,
        "distance_paths": abs(result.distance - distance_to_face(simplex, face, p, tols)),
    }
    return results, residuals


def cmd_project(args, tols: Tolerances) -> dict:
    doc = _read_document(args.file)
    report = _report(
        "project",
        _echo_inputs(doc, face=list(args.face), point=list(args.point), seed=args.seed),
    )
    simplex = _build(doc, tols)
    result = project_to_face(simplex, args.face, np.asarray(args.point, dtype=float), tols)
    report["results"], report["residuals"] = _projection_block(
        simplex, args.face, args.point, result, tols
    )
    if args.check:
        oracle = oracle_project(
            simplex, args.face, np.asarray(args.point, dtype=float),
            OracleOptions(seed=args.seed), tols,
        )
        report["results"]["oracle"] = {
            "foot": _vec(oracle.foot),
            "distance": oracle.distance,
        }
        report["residuals"]["oracle_distance_deviation"] = abs(result.distance - oracle.distance)
        report["residuals"]["oracle_foot_deviation"] = geodesic(
            simplex.model, result.foot, oracle.foot, tols
        )
    return report


def cmd_altitudes(args, tols: Tolerances) -> dict:
    doc = _read_document(args.file)
    report = _report("altitudes", _echo_inputs(doc, face=list(args.face) if args.face else None))
    simplex = _build(doc, tols)
    m = simplex.vertex_count
    if args.face:
        _, comp0 = face_complement(simplex, args.face)
        targets = [(tuple(args.face), int(j) + 1) for j in comp0]
    else:
        targets = [
            (tuple(i for i in range(1, m + 1) if i != j), j) for j in range(1, m + 1)
        ]
    rows = []
    for face, j in targets:
        entry: dict = {"vertex": j, "face": list(face), "distance": altitude(simplex, face, j, tols)}
        try:
            foot = vertex_foot(simplex, face, j, tols)
            entry["foot"] = _vec(foot.foot)
            entry["foot_undefined"] = False
        except ProjectionUndefined:
            entry["foot_undefined"] = True
        rows.append(entry)
    report["results"]["altitudes"] = rows
    return report


def _check_one(simplex: Simplex, rng, opts: OracleOptions, tols: Tolerances) -> tuple[dict, int]:
    """Max residual per invariant for one simplex; returns (residuals, skipped)."""
    m = simplex.vertex_count
    M, G = simplex.edge_matrix, simplex.gram_matrix
    eps = simplex.model.curvature
    res: dict[str, float] = {}

    res["inverse_identity"] = verify_inverse_identity(simplex, tols.identity).max_residual
    block_inverse = 0.0
    schur_paths = 0.0
    for k in range(0, m - 1):
        block_inverse = max(
            block_inverse, verify_block_inverse_identities(simplex, k, tols.identity).max_residual
        )
        trail = tuple(range(k + 2, m + 1))
        a = schur_complement(M, trail, tols.degenerate).values
        b = schur_complement_via_minors(M, trail).values
        schur_paths = max(schur_paths, float(np.abs(a - b).max()))
    res["block_inverse"] = block_inverse
    res["schur_paths"] = schur_paths

    sig = simplex.model.signature
    pairing = (simplex.vertices * sig) @ simplex.normals.T
    m_ii = np.array([deleted_minor(M, i, i) for i in range(1, m + 1)])
    expected = -np.sqrt(np.abs(simplex.edge_det / m_ii))
    res["vertex_normal_duality"] = float(np.abs(pairing - np.diag(expected)).max())

    g_ii = np.array([deleted_minor(G, i, i) for i in range(1, m + 1)])
    claim = eps * simplex.gram_det * m_ii / simplex.edge_det
    res["gram_minor_identity"] = float(
        (np.abs(g_ii - claim) / np.maximum(np.abs(g_ii), 1e-300)).max()
    )
    t = scaling_matrix(simplex, tols).diag
    t_gram = np.sqrt(np.abs(g_ii / simplex.gram_det))
    res["scaling_agreement"] = float((np.abs(t - t_gram) / np.abs(t)).max())

    dist_dev = 0.0
    foot_dev = 0.0
    skipped = 0
    for _ in range(_CHECK_SAMPLES_PER_SIMPLEX):
        size = int(rng.integers(1, simplex.n + 1))
        face = tuple(sorted(int(i) + 1 for i in rng.choice(m, size=size, replace=False)))
        p = random_point(simplex.model, rng)
        try:
            closed = project_to_face(simplex, face, p, tols)
        except ProjectionUndefined:
            skipped += 1
            continue
        oracle = oracle_project(simplex, face, p, opts, tols)
        dist_dev = max(dist_dev, abs(closed.distance - oracle.distance))
        foot_dev = max(foot_dev, geodesic(simplex.model, closed.foot, oracle.foot, tols))
    res["oracle_distance"] = dist_dev
    res["oracle_foot"] = foot_dev
    return res, skipped


def cmd_check(args, tols: Tolerances, tol_factor: float) -> dict:
    if args.random:
        model_name, n_str, seed_str, count_str = args.random
        if model_name not in ("hyperbolic", "spherical"):
            raise DocumentError(f"--random model must be hyperbolic|spherical, got {model_name!r}")
        try:
            n, gen_seed, count = int(n_str), int(seed_str), int(count_str)
        except ValueError:
            raise DocumentError("--random N SEED COUNT must be integers")
        if n < 2 or count < 1:
            raise DocumentError("--random needs n >= 2 and count >= 1")
        inputs = {
            "random": {"model": model_name, "n": n, "seed": gen_seed, "count": count},
            "check_seed": args.seed,
        }
        model = Model.hyperbolic(n + 1) if model_name == "hyperbolic" else Model.spherical(n + 1)
        simplices = [random_simplex(model, n, gen_seed + i, tols=tols) for i in range(count)]
    else:
        doc = _read_document(args.file)
        inputs = _echo_inputs(doc, check_seed=args.seed)
        simplices = [_build(doc, tols)]

    report = _report("check", inputs)
    opts = OracleOptions(seed=args.seed)
    worst: dict[str, float] = {}
    skipped = 0
    for i, simplex in enumerate(simplices):
        rng = np.random.default_rng([args.seed, i])
        res, skip = _check_one(simplex, rng, opts, tols)
        skipped += skip
        for key, val in res.items():
            worst[key] = max(worst.get(key, 0.0), val)

    bounds = {
        "inverse_identity": tols.identity,
        "block_inverse": tols.identity,
        "schur_paths": tols.identity,
        "vertex_normal_duality": tols.identity,
        "gram_minor_identity": tols.identity,
        "scaling_agreement": tols.identity,
        "oracle_distance": ORACLE_DISTANCE_TOL * tol_factor,
        "oracle_foot": ORACLE_FOOT_TOL * tol_factor,
    }
    rows = [
        {"check": key, "max_residual": worst[key], "tol": bounds[key], "passed": worst[key] <= bounds[key]}
        for key in bounds
    ]
    report["results"] = {
        "simplex_count": len(simplices),
        "checks": rows,
        "projection_undefined_skipped": skipped,
    }
    report["residuals"] = {row["check"]: row["max_residual"] for row in rows}
    if not all(row["passed"] for row in rows):
        failed = [row["check"] for row in rows if not row["passed"]]
        report["status"] = "CheckFailed"
        report["failed_checks"] = failed
    return report


def _print_human(report: dict) -> None:
    print(f"command: {report['command']}")
    print(f"status:  {report['status']}")
    results = report.get("results", {})
    if report["command"] == "validate" and results:
        print(f"model: {results['model']}  (n = {results['dimension']})")
        print(f"det M = {results['det_edge_matrix']:.17g}")
        print(f"det G = {results['det_gram_matrix']:.17g}")
        worst = max(report["residuals"]["vertex_membership"])
        print(f"max vertex membership residual = {worst:.3e}")
    elif report["command"] == "project" and results:
        print(f"distance = {results['distance']:.17g}")
        print("foot = " + ", ".join(format(x, ".17g") for x in results["foot"]))
        for k, v in results["lambda"].items():
            print(f"lambda[{k}] = {v:.17g}")
        for name, val in report["residuals"].items():
            print(f"residual {name} = {val:.3e}")
        if "oracle" in results:
            print(f"oracle distance = {results['oracle']['distance']:.17g}")
    elif report["command"] == "altitudes" and results:
        for row in results["altitudes"]:
            tail = " (foot undefined)" if row.get("foot_undefined") else ""
            print(f"vertex {row['vertex']} -> face {row['face']}: {row['distance']:.17g}{tail}")
    elif report["command"] == "check" and results:
        print(f"simplices checked: {results['simplex_count']}")
        if results["projection_undefined_skipped"]:
            print(f"projection-undefined samples skipped: {results['projection_undefined_skipped']}")
        width = max(len(r["check"]) for r in results["checks"])
        for row in results["checks"]:
            mark = "pass" if row["passed"] else "FAIL"
            print(f"  {row['check']:<{width}}  {row['max_residual']:.3e}  <= {row['tol']:.1e}  {mark}")
    if report["status"] != "ok" and "error" in report:
        print(f"error: {report['error']}")


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(dumps(report, indent=2))
    else:
        _print_human(report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hsproj",
        description="Orthogonal projection onto simplex-face k-planes in H^n and S^n.",
    )
    parser.add_argument("--version", action="version", version=f"hsproj {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_file=True, file_optional=False):
        if needs_file:
            if file_optional:
                p.add_argument("file", nargs="?", help="simplex document (JSON); '-' or omit for stdin")
            else:
                p.add_argument("file", help="simplex document (JSON); '-' for stdin")
        p.add_argument("--json", action="store_true", help="emit the machine-readable JSON report")
        p.add_argument("--tol", type=float, default=1.0, metavar="FACTOR",
                       help="scale all default tolerances by FACTOR")

    p_val = sub.add_parser("validate", help="validate a simplex document")
    common(p_val)

    p_proj = sub.add_parser("project", help="project a point onto a face's k-plane")
    common(p_proj)
    p_proj.add_argument("--face", type=_int_csv, required=True, metavar="I,J,...",
                        help="1-based face vertex indices, strictly increasing")
    p_proj.add_argument("--point", type=_float_csv, required=True, metavar="X1,X2,...",
                        help="ambient coordinates of the point (use --point=... if negative)")
    p_proj.add_argument("--check", action="store_true",
                        help="also run the brute-force oracle and report the deviation")
    p_proj.add_argument("--seed", type=int, default=0, help="oracle probe seed")

    p_alt = sub.add_parser("altitudes", help="altitudes (and feet) from vertices to opposite faces")
    common(p_alt)
    p_alt.add_argument("--face", type=_int_csv, default=None, metavar="I,J,...",
                       help="target face; default: every facet opposite each vertex")

    p_chk = sub.add_parser("check", help="run the full invariant suite")
    common(p_chk, file_optional=True)
    p_chk.add_argument("--random", nargs=4, metavar=("MODEL", "N", "SEED", "COUNT"),
                       help="check COUNT random n-simplices instead of a document")
    p_chk.add_argument("--seed", type=int, default=0, help="sampling seed for faces/points/oracle")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        tols = DEFAULT_TOLS.scaled(args.tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "validate":
            report = cmd_validate(args, tols)
        elif args.command == "project":
            report = cmd_project(args, tols)
        elif args.command == "altitudes":
            report = cmd_altitudes(args, tols)
        else:
            report = cmd_check(args, tols, args.tol)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        report = {
            "command": args.command,
            "status": type(exc).__name__,
            "error": str(exc),
        }
        _emit(report, args.json)
        return 1

    _emit(report, args.json)
    return 0 if report["status"] == "ok" else 1


if __name__ == "__main__":
    raise SystemExit(main())
