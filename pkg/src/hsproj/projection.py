"""Closed-form orthogonal projection onto k-planes spanned by simplex faces.

A k-face of the simplex (any k+1 of its vertices, 0 <= k <= n-1) spans a
k-plane of the manifold.  The complement normals {e_t : t not in face} are
a basis of the orthogonal complement of that span, so the projection of a
point p works in three short steps, identical in both geometries:

1. solve  G22 . lambda = -[<p, e_t>]  over the complement Gram block,
2. form the pre-foot  p. = p + sum_s lambda_s e_s  (the component of p in
   the span of the face vertices),
3. rescale the pre-foot onto the manifold.

The radicand c2 = curvature * <p., p.> equals cosh^2 of the hyperbolic
distance (always >= 1) or cos^2 of the spherical distance.  When c2 is not
safely positive in the spherical case the nearest point is not unique
(p sits at distance pi/2 from the whole plane): the foot constructors
raise ProjectionUndefined while the plain distance routines return pi/2.

The closed forms are stated most simply when the face is the leading
vertex block; here any face is accepted and the minor index sets are
remapped accordingly.  All indices are 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadFace, DomainError, GeometryError, OffManifold, ProjectionUndefined, WrongSheet
from .forms import DEFAULT_TOLS, Model, Tolerances, normalize_to_manifold
from .simplex import Simplex, bordered_minor, complement_gram_inverse, schur_complement

__all__ = [
    "ProjectionResult",
    "face_complement",
    "project_to_face",
    "distance_to_face",
    "project_to_hyperplane",
    "vertex_foot",
    "altitude",
]


@dataclass(frozen=True)
class ProjectionResult:
    """Foot of the perpendicular, its distance, and the normal coefficients.

    ``lambdas`` maps each complement vertex index (1-based) to the
    coefficient of its facet normal in pre_foot - p; ``pre_foot`` is the
    unnormalized projection (the point called p-dot in the derivation).
    """

    foot: np.ndarray
    distance: float
    lambdas: dict[int, float]
    pre_foot: np.ndarray


def face_complement(simplex: Simplex, face: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Validate a face selector; return 0-based (face, complement) arrays.

    A valid face is a strictly increasing tuple of 1-based vertex indices,
    at least one vertex and at most n (the complement must be nonempty).
    """
    idx = [int(i) for i in face]
    m = simplex.vertex_count
    if not idx or len(idx) > m - 1:
        raise BadFace(f"face must select between 1 and {m - 1} vertices, got {len(idx)}")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise BadFace(f"face indices must be strictly increasing, got {tuple(idx)}")
    if idx[0] < 1 or idx[-1] > m:
        raise BadFace(f"face indices {tuple(idx)} outside 1..{m}")
    face0 = np.array(idx, dtype=int) - 1
    comp0 = np.array([i for i in range(m) if i + 1 not in set(idx)], dtype=int)
    return face0, comp0


def _require_point(simplex: Simplex, p, tols: Tolerances) -> np.ndarray:
    pv = np.asarray(p, dtype=float)
    model = simplex.model
    if pv.shape != (model.ambient_dim,):
        raise OffManifold(f"point has shape {pv.shape}, expected ({model.ambient_dim},)")
    sig = model.signature
    if abs(float((pv * sig) @ pv) - model.curvature) > tols.manifold:
        raise OffManifold(f"point is not on the {model.name} manifold")
    if model.curvature == -1 and pv[0] <= 0.0:
        raise WrongSheet("point is on the lower hyperboloid sheet")
    return pv


def _distance_from_radicand(model: Model, c2: float, tols: Tolerances) -> float:
    """Distance whose cosh^2 (hyperbolic) or cos^2 (spherical) equals c2."""
    if model.curvature == -1:
        if c2 < 1.0 - tols.domain:
            raise DomainError(f"hyperbolic radicand {c2!r} fell below 1")
        return math.acosh(math.sqrt(max(c2, 1.0)))
    if c2 > 1.0 + tols.domain:
        raise DomainError(f"spherical radicand {c2!r} exceeds 1")
    return math.acos(math.sqrt(min(max(c2, 0.0), 1.0)))


def _finish(
    simplex: Simplex,
    pre_foot: np.ndarray,
    c2: float,
    lambdas: dict[int, float],
    tols: Tolerances,
    what: str,
) -> ProjectionResult:
    model = simplex.model
    if model.curvature == 1 and c2 <= tols.norm:
        raise ProjectionUndefined(
            f"{what}: point is at distance pi/2 from the plane; the foot is not unique"
        )
    foot = normalize_to_manifold(model, pre_foot, tols.norm)
    return ProjectionResult(foot, _distance_from_radicand(model, c2, tols), lambdas, pre_foot)


def project_to_face(
    simplex: Simplex,
    face: Sequence[int],
    p,
    tols: Tolerances = DEFAULT_TOLS,
) -> ProjectionResult:
    """Orthogonal projection of p onto the k-plane of the selected face.

    The foot is the unique geodesic-distance minimizer over the plane
    (spherical exception: ProjectionUndefined at distance pi/2).
    """
    pv = _require_point(simplex, p, tols)
    face0, comp0 = face_complement(simplex, face)
    sig = simplex.model.signature
    e_comp = simplex.normals[comp0]
    b = (e_comp * sig) @ pv
    g22 = simplex.gram_matrix[np.ix_(comp0, comp0)]
    lam = np.linalg.solve(g22, -b)
    pre_foot = pv + lam @ e_comp
    c2 = 1.0 + simplex.model.curvature * float(b @ lam)
    lambdas = {int(t) + 1: float(v) for t, v in zip(comp0, lam)}
    return _finish(simplex, pre_foot, c2, lambdas, tols, f"face {tuple(int(i) for i in face)}")


def distance_to_face(
    simplex: Simplex,
    face: Sequence[int],
    p,
    tols: Tolerances = DEFAULT_TOLS,
) -> float:
    """Distance to the face's k-plane straight from minors, no foot built.

    Evaluates the closed-form radical 1 - curvature * b' (G22)^-1 b with
    (G22)^-1 assembled from bordered edge-matrix minors.  In the spherical
    case a radicand within tolerance of 0 returns exactly pi/2 (the
    distance is still well-defined there even though the foot is not).
    """
    pv = _require_point(simplex, p, tols)
    face0, comp0 = face_complement(simplex, face)
    sig = simplex.model.signature
    b = (simplex.normals[comp0] * sig) @ pv
    kinv = complement_gram_inverse(simplex, [int(i) + 1 for i in face0])
    c2 = 1.0 - simplex.model.curvature * float(b @ kinv @ b)
    if simplex.model.curvature == 1 and c2 <= tols.norm:
        return math.pi / 2
    return _distance_from_radicand(simplex.model, c2, tols)


def project_to_hyperplane(
    simplex: Simplex,
    j: int,
    p,
    tols: Tolerances = DEFAULT_TOLS,
) -> ProjectionResult:
    """Fast path for the facet hyperplane opposite vertex j.

    sigma(p) = (p - <p,e_j> e_j) / sqrt(1 + <p,e_j>^2) in H^n and the same
    with 1 - <p,e_j>^2 in S^n; agrees with project_to_face on the face that
    omits j.
    """
    m = simplex.vertex_count
    if not 1 <= int(j) <= m:
        raise BadFace(f"vertex index {j} outside 1..{m}")
    pv = _require_point(simplex, p, tols)
    e_j = simplex.normals[int(j) - 1]
    a = float((pv * simplex.model.signature) @ e_j)
    pre_foot = pv - a * e_j
    c2 = 1.0 - simplex.model.curvature * a * a
    return _finish(simplex, pre_foot, c2, {int(j): -a}, tols, f"hyperplane opposite {j}")


def vertex_foot(
    simplex: Simplex,
    face: Sequence[int],
    j: int,
    tols: Tolerances = DEFAULT_TOLS,
) -> ProjectionResult:
    """Perpendicular foot from vertex p_j onto a face not containing it.

    Uses the vertex-specialized closed form: since <p_j, e_t> vanishes for
    every complement vertex t != j, only the s-sum survives and

        lambda_s = sqrt|M_ss / det M| * m_j^s / m_face.

    The pre-foot norm then satisfies curvature * <p., p.> =
    1 - curvature * m_j^j / m_face, which doubles as the distance radicand.
    """
    face0, comp0 = face_complement(simplex, face)
    j = int(j)
    if j - 1 not in comp0:
        raise BadFace(f"vertex {j} must lie outside the face {tuple(int(i) + 1 for i in face0)}")
    M = simplex.edge_matrix
    base = tuple(int(i) + 1 for i in face0)
    m_face = float(np.linalg.det(M[np.ix_(face0, face0)]))
    det_m = simplex.edge_det

    lambdas: dict[int, float] = {}
    pre_foot = simplex.vertices[j - 1].copy()
    for s in comp0:
        s1 = int(s) + 1
        m_ss = _deleted_principal(M, s1)
        lam_s = math.sqrt(abs(m_ss / det_m)) * bordered_minor(M, base, j, s1) / m_face
        lambdas[s1] = lam_s
        pre_foot += lam_s * simplex.normals[s]
    m_jj = bordered_minor(M, base, j, j)
    c2 = 1.0 - simplex.model.curvature * m_jj / m_face
    return _finish(simplex, pre_foot, c2, lambdas, tols, f"vertex {j} onto face {base}")


def _deleted_principal(M: np.ndarray, i: int) -> float:
    keep = [r for r in range(M.shape[0]) if r != i - 1]
    return float(np.linalg.det(M[np.ix_(keep, keep)]))


def altitude(
    simplex: Simplex,
    face: Sequence[int],
    j: int,
    tols: Tolerances = DEFAULT_TOLS,
) -> float:
    """Distance from vertex p_j to the k-plane of an opposite face.

    Computed from the Schur complement of the face block of the edge
    matrix: the radicand is 1 - curvature * S_jj (S_jj = a_jj hyperbolic,
    b_jj spherical).  For a facet (|face| = n) the determinant-ratio
    closed form 1 - curvature * det M / M_jj is evaluated as well and the
    two must agree.  The spherical undefined-foot limit returns pi/2.
    """
    face0, comp0 = face_complement(simplex, face)
    j = int(j)
    if j - 1 not in comp0:
        raise BadFace(f"vertex {j} must lie outside the face {tuple(int(i) + 1 for i in face0)}")
    eps = simplex.model.curvature
    block = schur_complement(simplex.edge_matrix, [int(i) + 1 for i in comp0], tols.degenerate)
    pos = block.block_rows.index(j)
    c2 = 1.0 - eps * float(block.values[pos, pos])

    def dist_of(radicand: float) -> float:
        if eps == 1 and radicand <= tols.norm:
            return math.pi / 2
        return _distance_from_radicand(simplex.model, radicand, tols)

    result = dist_of(c2)
    if len(face0) == simplex.n:
        m_jj = _deleted_principal(simplex.edge_matrix, j)
        facet = dist_of(1.0 - eps * simplex.edge_det / m_jj)
        if abs(facet - result) > tols.identity:
            raise GeometryError(
                f"facet altitude paths disagree: schur {result!r} vs determinant ratio {facet!r}"
            )
    return result
