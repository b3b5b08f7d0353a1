"""Bilinear forms, manifold membership and geodesic distance.

Two homogeneous geometries are supported, selected by the curvature sign:

* curvature -1: hyperbolic n-space H^n, realized as the upper sheet of
  <x,x> = -1 in Minkowski space R^{n,1} with <x,y> = -x1*y1 + sum x_i*y_i,
* curvature +1: spherical n-space S^n, the unit sphere of the Euclidean
  dot product in R^{n+1}.

Points are plain float ndarrays of length ``ambient_dim``; the first
coordinate carries the Lorentzian sign in the hyperbolic case.  Coordinates
are spoken of 1-based in documentation and error messages (x1 is the
time-like one); array storage is 0-based as usual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, DomainError, NotNormalizable, OffManifold

__all__ = [
    "Model",
    "Tolerances",
    "DEFAULT_TOLS",
    "inner",
    "on_manifold",
    "distance",
    "normalize_to_manifold",
]


@dataclass(frozen=True)
class Tolerances:
    """Default numerical tolerances, overridable per call.

    manifold    membership test |<x,x> - curvature| (absolute)
    domain      allowed overshoot of arccos/arccosh arguments before erroring
    degenerate  determinant floor relative to entry scale
    norm        radicand floor below which a normalization/foot is undefined
    identity    residual bound for the matrix identity checks
    """

    manifold: float = 1e-9
    domain: float = 1e-9
    degenerate: float = 1e-10
    norm: float = 1e-9
    identity: float = 1e-8

    def scaled(self, factor: float) -> "Tolerances":
        """Scale every tolerance uniformly (the CLI --tol knob)."""
        if factor <= 0:
            raise ValueError("tolerance scale factor must be positive")
        return replace(
            self,
            manifold=self.manifold * factor,
            domain=self.domain * factor,
            degenerate=self.degenerate * factor,
            norm=self.norm * factor,
            identity=self.identity * factor,
        )


DEFAULT_TOLS = Tolerances()


@dataclass(frozen=True)
class Model:
    """Geometry selector: curvature in {-1, +1} plus the ambient dimension n+1."""

    curvature: int
    ambient_dim: int

    def __post_init__(self) -> None:
        if self.curvature not in (-1, 1):
            raise ValueError(f"curvature must be -1 or +1, got {self.curvature}")
        if self.ambient_dim < 2:
            raise ValueError(f"ambient_dim must be >= 2, got {self.ambient_dim}")

    @classmethod
    def hyperbolic(cls, ambient_dim: int) -> "Model":
        return cls(-1, ambient_dim)

    @classmethod
    def spherical(cls, ambient_dim: int) -> "Model":
        return cls(+1, ambient_dim)

    @property
    def n(self) -> int:
        """Intrinsic dimension of the space (and of a full simplex in it)."""
        return self.ambient_dim - 1

    @property
    def name(self) -> str:
        return "hyperbolic" if self.curvature == -1 else "spherical"

    @cached_property
    def signature(self) -> np.ndarray:
        """Diagonal of the bilinear form: (-1,1,...,1) or all ones."""
        s = np.ones(self.ambient_dim)
        if self.curvature == -1:
            s[0] = -1.0
        s.setflags(write=False)
        return s


def _as_vector(model: Model, x, name: str = "vector") -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.shape != (model.ambient_dim,):
        raise DimensionMismatch(
            f"{name} has shape {v.shape}, expected ({model.ambient_dim},)"
        )
    return v


def inner(model: Model, x, y) -> float:
    """Curvature-signed scalar product: Lorentzian for H^n, Euclidean for S^n."""
    xv = _as_vector(model, x, "x")
    yv = _as_vector(model, y, "y")
    return float((xv * model.signature) @ yv)


def on_manifold(model: Model, x, tol: float = DEFAULT_TOLS.manifold) -> bool:
    """True iff <x,x> equals the curvature within tol (and x1 > 0 for H^n)."""
    try:
        xv = _as_vector(model, x)
    except DimensionMismatch:
        return False
    if abs(float((xv * model.signature) @ xv) - model.curvature) > tol:
        return False
    if model.curvature == -1 and xv[0] <= 0.0:
        return False
    return True


def _clamped_arccosh(arg: float, tol_domain: float) -> float:
    if arg < 1.0 - tol_domain:
        raise DomainError(f"arccosh argument {arg!r} below 1 by more than {tol_domain}")
    return math.acosh(max(arg, 1.0))


def _clamped_arccos(arg: float, tol_domain: float) -> float:
    if abs(arg) > 1.0 + tol_domain:
        raise DomainError(f"arccos argument {arg!r} outside [-1,1] by more than {tol_domain}")
    return math.acos(min(max(arg, -1.0), 1.0))


def distance(model: Model, p, q, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Geodesic distance: arccosh(-<p,q>) on H^n, arccos(<p,q>) on S^n.

    Rounding routinely yields <p,p> = 1 + 1e-16 for p = q, so the argument
    is clamped into its legal range when the violation is within
    ``tols.domain`` and rejected beyond that.
    """
    pv = _as_vector(model, p, "p")
    qv = _as_vector(model, q, "q")
    for name, v in (("p", pv), ("q", qv)):
        if not on_manifold(model, v, tols.manifold):
            raise OffManifold(f"{name} is not on the {model.name} manifold")
    ip = float((pv * model.signature) @ qv)
    if model.curvature == -1:
        return _clamped_arccosh(-ip, tols.domain)
    return _clamped_arccos(ip, tols.domain)


def normalize_to_manifold(model: Model, v, tol_norm: float = DEFAULT_TOLS.norm) -> np.ndarray:
    """Scale v onto the manifold: v / sqrt(curvature * <v,v>).

    The hyperbolic sign is chosen so the first coordinate is positive
    (upper sheet).  Raises NotNormalizable when curvature * <v,v| is not
    safely positive, which signals a degenerate/undefined projection
    upstream (space-like or near-light-like input in the Lorentzian case,
    near-zero input in the spherical case).
    """
    vv = _as_vector(model, v)
    q = model.curvature * float((vv * model.signature) @ vv)
    if q <= tol_norm:
        raise NotNormalizable(
            f"curvature*<v,v> = {q!r} is not positive; cannot normalize onto {model.name} manifold"
        )
    out = vv / math.sqrt(q)
    if model.curvature == -1 and out[0] < 0.0:
        out = -out
    return out
