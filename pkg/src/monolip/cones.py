"""Pointed convex cones in R^m: membership, projection, Moreau splits,
and extraction of a monotone direction lying in both the cone and its dual.

A cone is described by generators (conic hull of finitely many vectors),
by halfspaces (intersection of homogeneous halfspaces), or both. The inner
product is always the standard Euclidean one; the ``norm`` tag is carried
for the benefit of Lipschitz constraints elsewhere and never affects the
geometry here.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .errors import ConvergenceError, NoDirectionError, StructureError

NORMS = ("l1", "l2", "linf")

DEFAULT_TOL = 1e-9

#: Facet enumeration for generated->dual conversion is only attempted up
#: to this ambient dimension; beyond it dual membership is checked against
#: the generators directly.
FACET_ENUM_MAX_DIM = 8


def norm_value(v, tag):
    """Norm of ``v`` under one of the supported tags."""
    v = np.asarray(v, dtype=float)
    if tag == "l1":
        return float(np.sum(np.abs(v)))
    if tag == "l2":
        return float(np.linalg.norm(v))
    if tag == "linf":
        return float(np.max(np.abs(v))) if v.size else 0.0
    raise StructureError(f"unknown norm tag {tag!r}")


@dataclass(frozen=True)
class ConeOrder:
    """A pointed convex cone plus the norm tag of its ambient space.

    At least one of ``generators`` / ``halfspaces`` must be given. An empty
    generator list describes the trivial cone {0} (the trivial order).
    """

    dim: int
    generators: np.ndarray | None = None
    halfspaces: np.ndarray | None = None
    norm: str = "l2"

    def __post_init__(self):
        if self.dim < 1:
            raise StructureError("cone dimension must be positive")
        if self.norm not in NORMS:
            raise StructureError(f"norm must be one of {NORMS}")
        if self.generators is None and self.halfspaces is None:
            raise StructureError("need generators or halfspaces")
        for name in ("generators", "halfspaces"):
            arr = getattr(self, name)
            if arr is None:
                continue
            arr = np.atleast_2d(np.asarray(arr, dtype=float))
            if arr.size == 0:
                arr = arr.reshape(0, self.dim)
            if arr.shape[1] != self.dim:
                raise StructureError(f"{name} rows must have length {self.dim}")
            if name == "halfspaces" and arr.shape[0] and np.any(
                np.linalg.norm(arr, axis=1) == 0.0
            ):
                raise StructureError("zero halfspace normal")
            object.__setattr__(self, name, arr)
        if self.generators is not None:
            g = self.generators
            keep = np.linalg.norm(g, axis=1) > 0.0
            object.__setattr__(self, "generators", g[keep])

    @property
    def is_trivial(self):
        if self.generators is not None:
            return self.generators.shape[0] == 0
        # Halfspace-only description: trivial iff the normals force x = 0,
        # which cannot happen for finitely many homogeneous halfspaces
        # unless they pin every direction; detect via pointedness + lineality.
        return False


def orthant(dim, norm="l2"):
    """The nonnegative orthant in R^dim (coordinatewise order)."""
    eye = np.eye(dim)
    return ConeOrder(dim=dim, generators=eye, halfspaces=eye, norm=norm)


def trivial_cone(dim, norm="l2"):
    """The cone {0}, inducing the trivial order."""
    return ConeOrder(dim=dim, generators=np.zeros((0, dim)), norm=norm)


def scalar_cone(norm="l2"):
    """The nonnegative ray in R^1: the usual order on the reals."""
    return orthant(1, norm=norm)


def _nnls_fit(generators, v):
    """Best conic-combination approximation of v; returns (point, residual)."""
    v = np.asarray(v, dtype=float)
    if generators.shape[0] == 0:
        return np.zeros_like(v), float(np.linalg.norm(v))
    basis = generators.T
    coeffs, _ = scipy.optimize.nnls(basis, v)
    point = basis @ coeffs
    gap = v - point
    # The active-set NNLS occasionally misconverges (and then reports a
    # wrong residual), so verify the projection's KKT conditions —
    # <v - p, g> <= 0 for every generator and <v - p, p> = 0 — and fall
    # back to bounded least squares when they fail.
    scale = 1.0 + np.linalg.norm(v)
    slack = 1e-9 * scale * (1.0 + np.linalg.norm(generators, axis=1))
    if np.any(generators @ gap > slack) or abs(gap @ point) > 1e-9 * scale**2:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            alt = scipy.optimize.lsq_linear(basis, v, bounds=(0.0, np.inf), tol=1e-14)
        candidate = basis @ alt.x
        if np.linalg.norm(v - candidate) <= np.linalg.norm(gap):
            point, gap = candidate, v - candidate
    return point, float(np.linalg.norm(gap))


def contains(cone, v, tol=DEFAULT_TOL):
    """Cone membership test; ``dominates(x, y)`` is ``contains(x - y)``."""
    v = np.asarray(v, dtype=float)
    if v.shape != (cone.dim,):
        raise StructureError(f"vector must have dimension {cone.dim}")
    if cone.halfspaces is not None and cone.generators is None:
        return bool(np.all(cone.halfspaces @ v >= -tol * (1.0 + np.linalg.norm(v))))
    _, resid = _nnls_fit(cone.generators, v)
    return resid <= tol * (1.0 + np.linalg.norm(v))


def dominates(cone, x, y, tol=DEFAULT_TOL):
    """x >= y in the vector order induced by the cone."""
    return contains(cone, np.asarray(x, dtype=float) - np.asarray(y, dtype=float), tol)


def dual_contains(cone, v, tol=DEFAULT_TOL):
    """Membership in the dual cone C* = {v : <v, c> >= 0 for all c in C}.

    For a generated cone this is a sign check against the generators. For a
    halfspace cone C = {x : Nx >= 0} we use C* = cone(rows of N) directly.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (cone.dim,):
        raise StructureError(f"vector must have dimension {cone.dim}")
    if cone.generators is not None:
        if cone.generators.shape[0] == 0:
            return True  # dual of {0} is everything
        gnorm = np.linalg.norm(cone.generators, axis=1)
        slack = tol * (1.0 + np.linalg.norm(v)) * (1.0 + gnorm)
        return bool(np.all(cone.generators @ v >= -slack))
    _, resid = _nnls_fit(cone.halfspaces, v)
    return resid <= tol * (1.0 + np.linalg.norm(v))


def project_cone(cone, a, tol=DEFAULT_TOL, max_iter=None):
    """Euclidean metric projection of ``a`` onto the cone.

    Generated cones go through nonnegative least squares; halfspace cones
    through Dykstra's cyclic projection with corrections, verified against
    the KKT conditions on exit.
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (cone.dim,):
        raise StructureError(f"vector must have dimension {cone.dim}")
    if cone.generators is not None:
        p, _ = _nnls_fit(cone.generators, a)
        return p
    return _project_halfspaces(cone.halfspaces, a, tol, max_iter)


def _project_halfspaces(normals, a, tol, max_iter):
    if max_iter is None:
        max_iter = 200 * max(len(normals), 1) + 200
    x = a.copy()
    corrections = np.zeros((len(normals), a.shape[0]))
    nn = np.einsum("ij,ij->i", normals, normals)
    scale = 1.0 + np.linalg.norm(a)
    for _ in range(max_iter):
        x_prev = x.copy()
        for j, n in enumerate(normals):
            y = x + corrections[j]
            viol = min(0.0, float(n @ y) / nn[j])
            proj = y - viol * n
            corrections[j] = y - proj
            x = proj
        if np.linalg.norm(x - x_prev) <= 1e-13 * scale:
            break
    else:
        raise ConvergenceError("halfspace projection did not converge")
    # KKT: x in C, residual orthogonal to x, residual in the polar cone.
    if np.any(normals @ x < -10 * tol * scale):
        raise ConvergenceError("projection left the cone")
    if abs(float((a - x) @ x)) > 1e-7 * scale * scale:
        raise ConvergenceError("projection residual not orthogonal")
    return x


@dataclass(frozen=True)
class MoreauSplit:
    """Orthogonal decomposition a = part_cone + part_polar."""

    part_cone: np.ndarray
    part_polar: np.ndarray


def moreau_split(cone, a, tol=DEFAULT_TOL):
    """Moreau decomposition of ``a`` against the cone and its polar."""
    a = np.asarray(a, dtype=float)
    p = project_cone(cone, a, tol=tol)
    return MoreauSplit(part_cone=p, part_polar=a - p)


def is_pointed(cone, tol=DEFAULT_TOL):
    """True iff C ∩ -C = {0}.

    Generated form: the cone contains a line iff the negative of some
    generator with positive weight in a vanishing conic combination lies in
    the cone, so checking -g against C for every generator g suffices.
    Halfspace form: pointed iff the normals span the ambient space.
    """
    if cone.generators is not None:
        for g in cone.generators:
            if np.linalg.norm(g) <= tol:
                continue
            if contains(cone, -g, tol):
                return False
        return True
    if cone.halfspaces.shape[0] == 0:
        return cone.dim == 0
    return int(np.linalg.matrix_rank(cone.halfspaces, tol=1e-10)) == cone.dim


def extreme_rays(normals, dim, tol=1e-10):
    """Extreme rays of {x : <n_j, x> >= 0}, by facet enumeration.

    Enumerates (dim-1)-subsets of the normals, takes one-dimensional
    nullspaces, and keeps sign-feasible directions. Intended for desk-scale
    cones (dim <= 8).
    """
    normals = np.atleast_2d(np.asarray(normals, dtype=float))
    if dim == 1:
        rays = []
        for s in (1.0, -1.0):
            v = np.array([s])
            if np.all(normals @ v >= -tol):
                rays.append(v)
        return rays
    rays = []
    for subset in itertools.combinations(range(normals.shape[0]), dim - 1):
        sub = normals[list(subset)]
        _, s, vt = np.linalg.svd(sub)
        nullity = dim - int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
        if nullity != 1:
            continue
        v = vt[-1]
        for cand in (v, -v):
            if np.all(normals @ cand >= -tol):
                if not any(np.linalg.norm(cand - r) <= 1e-8 for r in rays):
                    rays.append(cand / np.linalg.norm(cand))
    return rays


def dual_generators(cone, tol=1e-10):
    """Generators of the dual cone C*, or None when enumeration is off-range.

    For a halfspace cone the dual is generated by the normals themselves; a
    generated cone needs facet enumeration of {v : <g_i, v> >= 0}.
    """
    if cone.generators is None:
        return [n / np.linalg.norm(n) for n in cone.halfspaces]
    if cone.dim > FACET_ENUM_MAX_DIM:
        return None
    if cone.generators.shape[0] == 0:
        return None
    return extreme_rays(cone.generators, cone.dim, tol=tol)


def halfspace_form(cone, tol=1e-10):
    """Halfspace normals describing the cone, or None when unobtainable.

    C = {x : <h, x> >= 0 for h generating C*}; for generated cones this
    goes through facet enumeration and is limited to dim <= 8.
    """
    if cone.halfspaces is not None:
        return [np.asarray(n, dtype=float) for n in cone.halfspaces]
    return dual_generators(cone, tol=tol)


def monotone_direction(cone, tol=DEFAULT_TOL, seed=0, sample_budget=10_000):
    """A unit vector e with e in C and e in C*.

    Follows the projection argument: find a in C* \\ -C*, set b = P_C(a),
    normalize. Candidates are the dual generators (when enumerable), then
    seeded random samples projected onto C*.
    """
    if cone.is_trivial:
        raise NoDirectionError("the trivial cone has no monotone direction")

    def in_dual(v):
        return dual_contains(cone, v, tol)

    def try_candidate(a):
        a = np.asarray(a, dtype=float)
        if np.linalg.norm(a) <= tol:
            return None
        if not in_dual(a) or in_dual(-a):
            return None
        b = project_cone(cone, a)
        nb = np.linalg.norm(b)
        if nb <= tol:
            return None
        e = b / nb
        if contains(cone, e, 10 * tol) and dual_contains(cone, e, 10 * tol):
            return e
        return None

    duals = dual_generators(cone)
    candidates = list(duals) if duals else []
    if candidates:
        candidates.append(np.sum(candidates, axis=0))
    for a in candidates:
        e = try_candidate(a)
        if e is not None:
            return e

    rng = np.random.default_rng(seed)
    for _ in range(sample_budget):
        x = rng.standard_normal(cone.dim)
        a = x + project_cone(cone, -x)  # = P_{C*}(x) by Moreau
        e = try_candidate(a)
        if e is not None:
            return e
    raise ConvergenceError(
        "no monotone direction found within the sampling budget; "
        "for a pointed nontrivial cone this indicates a bug"
    )
