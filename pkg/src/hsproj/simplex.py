"""Simplex construction and the edge-matrix / Gram-matrix algebra.

An n-simplex in H^n or S^n is given by n+1 manifold points whose ambient
coordinates are linearly independent.  Two symmetric matrices carry all of
its metric data:

* the edge matrix  M[i][j] = <p_i, p_j>  of pairwise vertex products, and
* the Gram matrix  G[i][j] = <e_i, e_j>  of the unit outer facet normals,

where e_i is the unit vector orthogonal to every vertex except p_i, signed
so that <e_i, p_i> < 0 (outward).  M and G are mutually inverse up to the
diagonal scaling T = diag(sqrt|M_ii / det M|), and Schur complements of
their blocks give the inverses of the complementary blocks.  Those
identities are exposed here as verification routines because every
projection formula downstream rides on them.

All user-facing indices (vertices, minor row/column sets, block splits)
are 1-based, matching the mathematical notation; storage is 0-based.

Sign policy: in the Lorentzian signature det M, the minors M_ii and det G
are negative, so every radical of a ratio or product of them is taken of
the absolute value.  The residual signs are pinned by checkable facts
(unit normals, outwardness, the inverse identities themselves), not by
the radicand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    BadIndexSet,
    DegenerateSimplex,
    DimensionMismatch,
    OffManifold,
    SingularBlock,
    WrongSheet,
)
from .forms import DEFAULT_TOLS, Model, Tolerances

__all__ = [
    "Simplex",
    "MinorSpec",
    "ScalingMatrix",
    "SchurBlock",
    "IdentityReport",
    "build_simplex",
    "minor",
    "deleted_minor",
    "bordered_minor",
    "outer_normals",
    "scaling_matrix",
    "verify_inverse_identity",
    "schur_complement",
    "schur_complement_via_minors",
    "verify_block_inverse_identities",
    "complement_gram_inverse",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Simplex:
    """Validated n-simplex with eagerly cached metric data.

    Immutable after construction (arrays are read-only); build via
    :func:`build_simplex`.
    """

    model: Model
    vertices: np.ndarray      # (n+1, n+1), rows are points
    edge_matrix: np.ndarray   # M, symmetric, diagonal = curvature
    gram_matrix: np.ndarray   # G, symmetric, unit diagonal
    normals: np.ndarray       # rows e_1 .. e_{n+1}

    @property
    def n(self) -> int:
        return self.model.n

    @property
    def vertex_count(self) -> int:
        return self.model.ambient_dim

    @cached_property
    def edge_det(self) -> float:
        return float(np.linalg.det(self.edge_matrix))

    @cached_property
    def gram_det(self) -> float:
        return float(np.linalg.det(self.gram_matrix))

    def vertex(self, i: int) -> np.ndarray:
        """Vertex p_i, 1-based."""
        if not 1 <= i <= self.vertex_count:
            raise BadIndexSet(f"vertex index {i} outside 1..{self.vertex_count}")
        return self.vertices[i - 1]


def build_simplex(
    model: Model,
    vertices: Sequence[Sequence[float]] | np.ndarray,
    tols: Tolerances = DEFAULT_TOLS,
) -> Simplex:
    """Validate vertices and assemble the cached edge/Gram/normal data.

    Raises OffManifold / WrongSheet for bad points, DimensionMismatch for a
    wrong vertex count or coordinate length, and DegenerateSimplex when the
    edge-matrix determinant falls below ``tols.degenerate`` relative to the
    entry scale (linearly dependent vertices).
    """
    P = np.asarray(vertices, dtype=float)
    m = model.ambient_dim
    if P.shape != (m, m):
        raise DimensionMismatch(
            f"expected {m} vertices of length {m}, got array of shape {P.shape}"
        )
    sig = model.signature
    norms = np.einsum("ij,j,ij->i", P, sig, P)
    for i in range(m):
        if abs(norms[i] - model.curvature) > tols.manifold:
            raise OffManifold(
                f"vertex {i + 1}: <x,x> = {norms[i]!r}, expected {model.curvature} "
                f"within {tols.manifold}"
            )
        if model.curvature == -1 and P[i, 0] <= 0.0:
            raise WrongSheet(f"vertex {i + 1}: first coordinate {P[i, 0]!r} is not positive")

    M = (P * sig) @ P.T
    M = (M + M.T) / 2.0
    scale = float(np.abs(M).max())
    det_m = float(np.linalg.det(M))
    if abs(det_m) <= tols.degenerate * scale**m:
        raise DegenerateSimplex(
            f"|det M| = {abs(det_m)!r} below degeneracy floor; vertices are linearly dependent"
        )
    if model.curvature == -1:
        off = M[~np.eye(m, dtype=bool)]
        if off.max() >= -1.0:
            # distinct upper-sheet points always pair below -1 = -cosh(0)
            raise DegenerateSimplex(
                f"edge-matrix off-diagonal {off.max()!r} >= -1; coincident vertices"
            )

    # Normals from the orthogonality system: the columns u_i of (P*sig)^-1
    # satisfy <u_i, p_j> = delta_ij, so e_i = -u_i / sqrt(<u_i,u_i>) is unit,
    # orthogonal to the other vertices and pairs negatively with p_i.
    U = np.linalg.solve(P * sig, np.eye(m))
    sq = np.einsum("ji,j,ji->i", U, sig, U)
    if np.any(sq <= tols.norm):
        raise DegenerateSimplex("facet normal is not space-like; simplex is degenerate")
    E = -(U / np.sqrt(sq)).T
    G = (E * sig) @ E.T
    G = (G + G.T) / 2.0

    return Simplex(model, _frozen(P.copy()), _frozen(M), _frozen(G), _frozen(E))


@dataclass(frozen=True)
class MinorSpec:
    """Ordered row/column index subsets (1-based, strictly increasing)."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(int(i) for i in self.rows))
        object.__setattr__(self, "cols", tuple(int(i) for i in self.cols))
        if len(self.rows) != len(self.cols) or not self.rows:
            raise BadIndexSet("rows and cols must have the same nonzero length")
        for name, idx in (("rows", self.rows), ("cols", self.cols)):
            if any(b <= a for a, b in zip(idx, idx[1:])):
                raise BadIndexSet(f"{name} must be strictly increasing, got {idx}")
            if idx[0] < 1:
                raise BadIndexSet(f"{name} must be 1-based positive, got {idx}")


def _check_square(matrix) -> np.ndarray:
    A = np.asarray(matrix, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise BadIndexSet(f"expected a square matrix, got shape {A.shape}")
    return A


def minor(matrix, spec: MinorSpec) -> float:
    """Determinant of the selected submatrix (LU under the hood).

    No cofactor sign (-1)^(i+j) is applied; where a signed cofactor is
    needed the caller supplies the sign.
    """
    A = _check_square(matrix)
    if spec.rows[-1] > A.shape[0] or spec.cols[-1] > A.shape[0]:
        raise BadIndexSet(f"indices {spec.rows}/{spec.cols} exceed matrix size {A.shape[0]}")
    r = np.array(spec.rows) - 1
    c = np.array(spec.cols) - 1
    return float(np.linalg.det(A[np.ix_(r, c)]))


def deleted_minor(matrix, i: int, j: int) -> float:
    """The ij-th minor: determinant after deleting row i and column j (1-based)."""
    A = _check_square(matrix)
    m = A.shape[0]
    if not (1 <= i <= m and 1 <= j <= m):
        raise BadIndexSet(f"minor indices ({i},{j}) outside 1..{m}")
    if m == 1:
        return 1.0
    keep_r = [r for r in range(m) if r != i - 1]
    keep_c = [c for c in range(m) if c != j - 1]
    return float(np.linalg.det(A[np.ix_(keep_r, keep_c)]))


def bordered_minor(matrix, base: Sequence[int], s: int, t: int) -> float:
    """Determinant over rows (base, s) and columns (base, t), all 1-based.

    With base = the face index set these are the bordered minors whose
    ratios give Schur complement entries.
    """
    A = _check_square(matrix)
    m = A.shape[0]
    idx = [int(b) - 1 for b in base]
    if any(not 0 <= b < m for b in idx) or not (1 <= s <= m and 1 <= t <= m):
        raise BadIndexSet(f"bordered minor indices outside 1..{m}")
    if (s - 1) in idx or (t - 1) in idx:
        raise BadIndexSet("border indices must lie outside the base set")
    rows = idx + [s - 1]
    cols = idx + [t - 1]
    return float(np.linalg.det(A[np.ix_(rows, cols)]))


def outer_normals(simplex: Simplex) -> np.ndarray:
    """Unit outer normals e_i (rows), <e_i, p_j> = 0 for j != i, <e_i, p_i> < 0."""
    return simplex.normals


@dataclass(frozen=True)
class ScalingMatrix:
    """Diagonal of T = diag(sqrt|M_ii / det M|) = diag(sqrt|G_ii / det G|)."""

    diag: np.ndarray

    def as_matrix(self) -> np.ndarray:
        return np.diag(self.diag)


def _principal_deleted(A: np.ndarray) -> np.ndarray:
    m = A.shape[0]
    return np.array([deleted_minor(A, i, i) for i in range(1, m + 1)])


def scaling_matrix(simplex: Simplex, tols: Tolerances = DEFAULT_TOLS) -> ScalingMatrix:
    """Compute T from the edge matrix and cross-check against the Gram side."""
    m_ii = _principal_deleted(simplex.edge_matrix)
    g_ii = _principal_deleted(simplex.gram_matrix)
    from_m = np.sqrt(np.abs(m_ii / simplex.edge_det))
    from_g = np.sqrt(np.abs(g_ii / simplex.gram_det))
    rel = np.abs(from_m - from_g) / np.maximum(np.abs(from_m), 1e-300)
    if rel.max() > tols.identity:
        raise DegenerateSimplex(
            f"scaling-matrix expressions disagree (rel {rel.max():.3e}); simplex too ill-conditioned"
        )
    return ScalingMatrix(_frozen(from_m))


@dataclass(frozen=True)
class IdentityReport:
    """Max-norm residuals of a family of matrix identities, with a pass bound."""

    residuals: dict[str, float]
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def verify_inverse_identity(simplex: Simplex, tol: float = DEFAULT_TOLS.identity) -> IdentityReport:
    """Residuals of M^-1 = T G T and G^-1 = T M T (as ||M (TGT) - I|| etc.)."""
    m = simplex.vertex_count
    t = scaling_matrix(simplex).diag
    eye = np.eye(m)
    tgt = t[:, None] * simplex.gram_matrix * t[None, :]
    tmt = t[:, None] * simplex.edge_matrix * t[None, :]
    return IdentityReport(
        {
            "edge_inverse": float(np.abs(simplex.edge_matrix @ tgt - eye).max()),
            "gram_inverse": float(np.abs(simplex.gram_matrix @ tmt - eye).max()),
        },
        tol,
    )


@dataclass(frozen=True)
class SchurBlock:
    """Schur complement restricted to the retained (1-based) index set."""

    block_rows: tuple[int, ...]
    values: np.ndarray


def _split_indices(m: int, retained: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    keep = sorted(int(i) for i in retained)
    if not keep or len(set(keep)) != len(keep) or keep[0] < 1 or keep[-1] > m:
        raise BadIndexSet(f"retained set {tuple(retained)} invalid for size {m}")
    keep0 = np.array(keep) - 1
    elim0 = np.array([i for i in range(m) if i + 1 not in set(keep)], dtype=int)
    return keep0, elim0


def schur_complement(
    matrix,
    retained: Sequence[int],
    tol_degenerate: float = DEFAULT_TOLS.degenerate,
) -> SchurBlock:
    """M[B,B] - M[B,A] (M[A,A])^-1 M[A,B] with B = retained, A = the rest.

    An empty complement is allowed (the block is the matrix itself).
    Raises SingularBlock when M[A,A] is not safely invertible.
    """
    A = _check_square(matrix)
    keep0, elim0 = _split_indices(A.shape[0], retained)
    if elim0.size == 0:
        return SchurBlock(tuple(int(i) + 1 for i in keep0), _frozen(A[np.ix_(keep0, keep0)].copy()))
    block_a = A[np.ix_(elim0, elim0)]
    # gate on the spectrum, not on det vs entry-scale^k: that floor grows
    # far faster than determinants of honest blocks do
    svals = np.linalg.svd(block_a, compute_uv=False)
    if svals[-1] <= tol_degenerate * svals[0] or svals[0] == 0.0:
        raise SingularBlock(f"eliminated block {tuple(int(i) + 1 for i in elim0)} is singular")
    s = A[np.ix_(keep0, keep0)] - A[np.ix_(keep0, elim0)] @ np.linalg.solve(
        block_a, A[np.ix_(elim0, keep0)]
    )
    return SchurBlock(tuple(int(i) + 1 for i in keep0), _frozen(s))


def schur_complement_via_minors(matrix, retained: Sequence[int]) -> SchurBlock:
    """Same block computed entrywise as bordered-minor ratios.

    S[s,t] = det M(A,s; A,t) / det M(A,A) by the Schur determinant identity;
    this is the independent route used to cross-check the block algebra.
    """
    A = _check_square(matrix)
    keep0, elim0 = _split_indices(A.shape[0], retained)
    if elim0.size == 0:
        return SchurBlock(tuple(int(i) + 1 for i in keep0), _frozen(A[np.ix_(keep0, keep0)].copy()))
    base = tuple(int(i) + 1 for i in elim0)
    denom = float(np.linalg.det(A[np.ix_(elim0, elim0)]))
    if denom == 0.0:
        raise SingularBlock(f"eliminated block {base} is singular")
    out = np.empty((keep0.size, keep0.size))
    for a, s in enumerate(keep0):
        for b, t in enumerate(keep0):
            out[a, b] = bordered_minor(A, base, int(s) + 1, int(t) + 1) / denom
    return SchurBlock(tuple(int(i) + 1 for i in keep0), _frozen(out))


def verify_block_inverse_identities(
    simplex: Simplex, split_k: int, tol: float = DEFAULT_TOLS.identity
) -> IdentityReport:
    """Residuals of the four block-inverse identities at a given split.

    The matrices are split into the leading block {1..split_k+1} and the
    trailing block {split_k+2..n+1}; both must be nonempty.  The identities
    checked are (M^11)^-1 = T^11 S_{G^22} T^11 and the three companions,
    reported as products-with-inverse residuals.
    """
    m = simplex.vertex_count
    if not 0 <= split_k <= m - 2:
        raise BadIndexSet(f"split_k must be in 0..{m - 2}, got {split_k}")
    lead = tuple(range(1, split_k + 2))
    trail = tuple(range(split_k + 2, m + 1))
    t = scaling_matrix(simplex).diag
    M, G = simplex.edge_matrix, simplex.gram_matrix

    def residual(block_of, idx, schur_of_other):
        i0 = np.array(idx) - 1
        blk = block_of[np.ix_(i0, i0)]
        s = schur_of_other.values
        ts = t[i0]
        claimed_inv = ts[:, None] * s * ts[None, :]
        return float(np.abs(blk @ claimed_inv - np.eye(len(idx))).max())

    return IdentityReport(
        {
            "edge_lead": residual(M, lead, schur_complement(G, lead)),
            "edge_trail": residual(M, trail, schur_complement(G, trail)),
            "gram_lead": residual(G, lead, schur_complement(M, lead)),
            "gram_trail": residual(G, trail, schur_complement(M, trail)),
        },
        tol,
    )


def complement_gram_inverse(simplex: Simplex, face: Sequence[int]) -> np.ndarray:
    """(G^22)^-1 over the complement normals, built from edge-matrix minors.

    Entry (s,t) = sqrt|M_ss M_tt| * m_t^s / (curvature * det M * m_face)
    where m_face = det M[face,face] and m_t^s is the bordered minor over
    (face, s) x (face, t).  This is the closed-form route; the linear-solve
    route in the projection code is the production path and the two are
    cross-checked in tests.
    """
    M = simplex.edge_matrix
    m = simplex.vertex_count
    face0 = [int(i) - 1 for i in face]
    comp = [i for i in range(m) if i not in set(face0)]
    m_face = float(np.linalg.det(M[np.ix_(face0, face0)]))
    m_ii = _principal_deleted(M)
    denom = simplex.model.curvature * simplex.edge_det * m_face
    base = tuple(i + 1 for i in face0)
    out = np.empty((len(comp), len(comp)))
    for a, s in enumerate(comp):
        for b, t in enumerate(comp):
            mts = bordered_minor(M, base, s + 1, t + 1)
            out[a, b] = np.sqrt(abs(m_ii[s] * m_ii[t])) * mts / denom
    return out
