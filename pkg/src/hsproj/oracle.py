"""Brute-force ground truth: geodesic-distance minimization over a k-plane.

Candidates are parametrized projectively: a direction mu on the unit
sphere of face-coefficient space names the manifold point
normalize(sum mu_i * face_i), so the search domain is compact and
sheet/scale bookkeeping is delegated to the normalization.  The search is
a dense direction-grid scan (plus a batch of seeded random probe
directions guarding against grid-aligned minima) followed by
derivative-free Nelder-Mead refinement in the tangent space of the best
direction.  Derivative-free on purpose: d(arccosh)/dx blows up at
distance 0, exactly where the oracle is queried most.

This module is the independent check of the closed-form projection: it
never touches Gram matrices, minors or the normal frame.  It is allowed
to be orders of magnitude slower.

Also hosts the reproducible random generators used by the property and
acceptance tests.  All randomness uses numpy's Generator with the PCG64
bit generator, explicitly seeded, so runs reproduce exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import _scan
from .errors import DegenerateSimplex, DimensionMismatch, GenerationExhausted, OracleFailure
from .forms import DEFAULT_TOLS, Model, Tolerances, distance, normalize_to_manifold
from .projection import ProjectionResult, _require_point, face_complement
from .simplex import Simplex, build_simplex

__all__ = ["OracleOptions", "oracle_project", "random_simplex", "random_point"]

PROBE_DIRECTIONS = 1024
_LIGHT_TOL = 1e-12

# random_simplex also rejects draws whose edge matrix is conditioned worse
# than this: barely-nondegenerate simplices (cond ~ 1e8) pass the validity
# floor but void the 1e-8 identity tolerances the test populations are
# measured against; 1e5 keeps residuals ~1e-10 and costs < ~6% retries.
GENERATOR_CONDITION_LIMIT = 1e5


@dataclass(frozen=True)
class OracleOptions:
    coarse_grid_points_per_dim: int = 25
    refine_iterations: int = 200
    convergence_tol: float = 1e-10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.coarse_grid_points_per_dim < 1 or self.refine_iterations < 1:
            raise ValueError("grid points and iteration counts must be >= 1")
        if self.convergence_tol <= 0:
            raise ValueError("convergence_tol must be positive")


def _cost_to_distance(model: Model, cost: float) -> float:
    # cost is cosh(dist) for H^n and -cos(dist) for S^n
    if model.curvature == -1:
        return math.acosh(max(cost, 1.0))
    return math.acos(min(max(-cost, -1.0), 1.0))


def _tangent_basis(mu: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the hyperplane orthogonal to mu (Euclidean)."""
    d = mu.size
    q, _ = np.linalg.qr(np.column_stack([mu, np.eye(d)]), mode="reduced")
    return q[:, 1:d]


def oracle_project(
    simplex: Simplex,
    face,
    p,
    opts: OracleOptions = OracleOptions(),
    tols: Tolerances = DEFAULT_TOLS,
) -> ProjectionResult:
    """Foot and distance found by direct minimization over the face's plane.

    Deterministic for a fixed ``opts.seed`` (the seed drives the random
    probe directions added to the coarse grid).
    """
    pv = _require_point(simplex, p, tols)
    face0, comp0 = face_complement(simplex, face)
    model = simplex.model
    hyper = model.curvature == -1
    sig = model.signature
    face_pts = simplex.vertices[face0]
    d = face_pts.shape[0]

    Q = np.ascontiguousarray(simplex.edge_matrix[np.ix_(face0, face0)])
    w = (face_pts * sig) @ pv
    f = np.ascontiguousarray(face_pts[:, 0])

    # coarse stage: dense grid plus seeded probes
    if d == 1:
        cand = np.array([[1.0], [-1.0]])
        costs = _scan.score_block(cand, Q, w, f, hyper, _LIGHT_TOL)
        i = int(np.argmin(costs))
        best_cost, best_mu = float(costs[i]), cand[i]
    else:
        cos_tab, sin_tab = _scan.angle_tables(d, opts.coarse_grid_points_per_dim)
        best_cost, best_mu = _scan.scan_grid(cos_tab, sin_tab, Q, w, f, hyper, _LIGHT_TOL)
        rng = np.random.default_rng(opts.seed)
        probes = rng.normal(size=(PROBE_DIRECTIONS, d))
        probes /= np.linalg.norm(probes, axis=1, keepdims=True)
        costs = _scan.score_block(probes, Q, w, f, hyper, _LIGHT_TOL)
        i = int(np.argmin(costs))
        if costs[i] < best_cost:
            best_cost, best_mu = float(costs[i]), probes[i]
    if not np.isfinite(best_cost):
        raise OracleFailure("no normalizable candidate direction found on the grid")
    coarse_distance = _cost_to_distance(model, best_cost)

    # refinement stage: Nelder-Mead in the tangent space of the best
    # direction, restarted with shrinking initial steps
    best_dist = coarse_distance
    mu = best_mu / np.linalg.norm(best_mu)
    if d > 1:
        def objective_at(center, basis):
            def g(delta):
                v = center + basis @ delta
                nv = np.linalg.norm(v)
                if nv < 1e-12:
                    return np.inf
                c = _scan.score_block((v / nv)[None, :], Q, w, f, hyper, _LIGHT_TOL)[0]
                if not np.isfinite(c):
                    return np.inf
                return _cost_to_distance(model, float(c))

            return g

        steps = [np.pi / opts.coarse_grid_points_per_dim, 1e-3, 1e-6]
        for h in steps:
            basis = _tangent_basis(mu)
            start = np.zeros(d - 1)
            init = np.vstack([start, np.eye(d - 1) * h])
            res = minimize(
                objective_at(mu, basis),
                start,
                method="Nelder-Mead",
                options={
                    "initial_simplex": init,
                    "maxiter": opts.refine_iterations,
                    "xatol": opts.convergence_tol,
                    "fatol": opts.convergence_tol * 1e-5,
                },
            )
            if np.isfinite(res.fun) and res.fun <= best_dist:
                best_dist = float(res.fun)
                v = mu + basis @ res.x
                mu = v / np.linalg.norm(v)
        if best_dist > coarse_distance + opts.convergence_tol:
            raise OracleFailure(
                f"refinement regressed: {best_dist!r} above coarse {coarse_distance!r}"
            )

    foot = normalize_to_manifold(model, mu @ face_pts, tols.norm)
    dist = distance(model, pv, foot, tols)
    scale = math.cosh(dist) if hyper else math.cos(dist)
    pre_foot = scale * foot

    # coefficients of pre_foot - p in the complement normal basis (report
    # decoration; the search above never used the normal frame)
    e_comp = simplex.normals[comp0]
    g22 = simplex.gram_matrix[np.ix_(comp0, comp0)]
    lam = np.linalg.solve(g22, (e_comp * sig) @ (pre_foot - pv))
    lambdas = {int(t) + 1: float(v) for t, v in zip(comp0, lam)}
    return ProjectionResult(foot, dist, lambdas, pre_foot)


def random_point(model: Model, rng) -> np.ndarray:
    """Random on-manifold point; rng is a numpy Generator or a seed."""
    rng = np.random.default_rng(rng)
    n = model.n
    if model.curvature == -1:
        r = rng.uniform(0.2, 1.5)
        u = rng.normal(size=n)
        u /= np.linalg.norm(u)
        return np.concatenate([[math.cosh(r)], math.sinh(r) * u])
    x = rng.normal(size=n + 1)
    return x / np.linalg.norm(x)


def random_simplex(
    model: Model,
    n: int,
    seed: int,
    max_tries: int = 1000,
    tols: Tolerances = DEFAULT_TOLS,
) -> Simplex:
    """Random valid n-simplex, deterministic per seed (PCG64).

    Hyperbolic vertices are exponential-map style points (cosh r, sinh r u)
    with radius uniform in [0.2, 1.5]; spherical vertices are uniform on
    the sphere, resampled until all pairwise distances lie in [0.2, 2.0]
    (which also rules out near-antipodal pairs).  Draws are retried until
    build_simplex accepts and the edge matrix is well conditioned
    (GENERATOR_CONDITION_LIMIT), up to ``max_tries``.
    """
    if n < 1:
        raise ValueError(f"simplex dimension must be >= 1, got {n}")
    if model.ambient_dim != n + 1:
        raise DimensionMismatch(
            f"model ambient_dim {model.ambient_dim} does not match n+1 = {n + 1}"
        )
    rng = np.random.default_rng(seed)
    m = n + 1
    for _ in range(max_tries):
        if model.curvature == -1:
            vertices = np.array([random_point(model, rng) for _ in range(m)])
        else:
            vertices = rng.normal(size=(m, m))
            vertices /= np.linalg.norm(vertices, axis=1, keepdims=True)
            gram = np.clip(vertices @ vertices.T, -1.0, 1.0)
            pair = np.arccos(gram[np.triu_indices(m, 1)])
            if pair.min() < 0.2 or pair.max() > 2.0:
                continue
        try:
            # only genuine degeneracy is retried; anything else is a bug
            simplex = build_simplex(model, vertices, tols)
        except DegenerateSimplex:
            continue
        if np.linalg.cond(simplex.edge_matrix) <= GENERATOR_CONDITION_LIMIT:
            return simplex
    raise GenerationExhausted(f"no valid {model.name} {n}-simplex in {max_tries} tries")
