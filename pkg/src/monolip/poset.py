"""Finite partially ordered metric spaces.

Holds the domain object of every extension problem: a list of labelled
points, a distance matrix, and a partial-order relation given as a set of
index pairs. Provides axiom validation, the strict-or-incomparable
relation, radiality checking with witness extraction, and a lattice
instance generator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import cones
from .errors import SizeCapError, StructureError

DEFAULT_TOL = 1e-9

#: Refuse triple enumerations beyond this many triples unless overridden.
DEFAULT_TRIPLE_CAP = 10**6


@dataclass(frozen=True)
class FiniteMetricPoset:
    """Points with a symmetric distance matrix and a partial order.

    ``order`` contains index pairs (i, j) meaning point i >= point j; the
    reflexive pairs are expected to be present (``validate`` checks this).
    """

    labels: tuple
    dist: np.ndarray
    order: frozenset

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=float)
        n = len(self.labels)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise StructureError("distance matrix must be square")
        if d.shape[0] != n:
            raise StructureError("distance matrix size must match labels")
        pairs = frozenset((int(i), int(j)) for i, j in self.order)
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise StructureError(f"order pair ({i}, {j}) out of range")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dist", d)
        object.__setattr__(self, "order", pairs)

    @property
    def n(self):
        return len(self.labels)

    @property
    def order_matrix(self):
        """Boolean matrix G with G[i, j] iff i >= j."""
        g = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.order:
            g[i, j] = True
        return g

    def geq(self, i, j):
        return (i, j) in self.order

    def bullet(self, i, j):
        """i >=* j: strict dominance or incomparability (not j >= i)."""
        return (j, i) not in self.order


def bullet(poset, x, y):
    return poset.bullet(x, y)


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple

    @property
    def ok(self):
        return len(self.violations) == 0


def validate(poset, tol=DEFAULT_TOL):
    """Check every metric and partial-order axiom; report all violations."""
    d = poset.dist
    n = poset.n
    out = []
    for i in range(n):
        if abs(d[i, i]) > tol:
            out.append(Violation("zero-diagonal", (i,), f"d({i},{i}) = {d[i, i]}"))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(d[i, j] - d[j, i]) > tol:
                out.append(Violation("symmetry", (i, j), f"d({i},{j}) != d({j},{i})"))
            if d[i, j] <= tol:
                out.append(
                    Violation(
                        "identity of indiscernibles",
                        (i, j),
                        f"d({i},{j}) = {d[i, j]} for distinct points",
                    )
                )
            if d[i, j] < -tol or d[j, i] < -tol:
                out.append(Violation("nonnegativity", (i, j), f"d({i},{j}) < 0"))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if d[i, j] > d[i, k] + d[k, j] + tol:
                    out.append(
                        Violation(
                            "triangle inequality",
                            (i, j, k),
                            f"d({i},{j}) > d({i},{k}) + d({k},{j})",
                        )
                    )
    g = poset.order_matrix
    for i in range(n):
        if not g[i, i]:
            out.append(Violation("reflexivity", (i,), f"({i},{i}) missing"))
    sym = g & g.T
    for i in range(n):
        for j in range(i + 1, n):
            if sym[i, j]:
                out.append(Violation("antisymmetry", (i, j), f"{i} >= {j} >= {i}"))
    closure = g @ g
    for i in range(n):
        for j in range(n):
            if closure[i, j] and not g[i, j]:
                out.append(Violation("transitivity", (i, j), f"({i},{j}) missing"))
    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class RadialityWitness:
    """A triple violating one of the radiality inequalities.

    RD1: x >=* y > z with d(x, z) < d(x, y); lhs = d(x, z), rhs = d(x, y).
    RD2: x > y >=* z with d(x, z) < d(y, z); lhs = d(x, z), rhs = d(y, z).
    """

    kind: str
    triple: tuple
    lhs: float
    rhs: float

    @property
    def ratio(self):
        return self.rhs / self.lhs


def _strict_matrix(poset):
    g = poset.order_matrix
    return g & ~np.eye(poset.n, dtype=bool)


def _check_cap(n, triple_cap):
    if n**3 > triple_cap:
        raise SizeCapError(
            f"{n}^3 triples exceed the cap of {triple_cap}; "
            "raise triple_cap explicitly to proceed"
        )


def iter_radiality_witnesses(poset, tol=DEFAULT_TOL, triple_cap=DEFAULT_TRIPLE_CAP):
    """Yield every radiality violation, RD1 triples first, in lexicographic
    order of (kind, x, y, z). Witnesses require lhs < rhs - tol."""
    _check_cap(poset.n, triple_cap)
    d = poset.dist
    g = poset.order_matrix
    strict = _strict_matrix(poset)
    n = poset.n
    for x in range(n):
        for y in range(n):
            if g[y, x]:  # not x >=* y
                continue
            bad = strict[y] & (d[x] < d[x, y] - tol)
            for z in np.flatnonzero(bad):
                yield RadialityWitness("RD1", (x, y, int(z)), float(d[x, z]), float(d[x, y]))
    for x in range(n):
        for y in range(n):
            if not strict[x, y]:
                continue
            bad = ~g[:, y] & (d[x] < d[y] - tol)
            for z in np.flatnonzero(bad):
                yield RadialityWitness("RD2", (x, y, int(z)), float(d[x, z]), float(d[y, z]))


def check_radiality(poset, tol=DEFAULT_TOL, triple_cap=DEFAULT_TRIPLE_CAP):
    """First radiality violation in (kind, x, y, z) order, or None."""
    return next(iter_radiality_witnesses(poset, tol, triple_cap), None)


def is_radially_convex(poset, tol=DEFAULT_TOL, triple_cap=DEFAULT_TRIPLE_CAP):
    """d(x, z) >= max(d(x, y), d(y, z)) whenever x > y > z."""
    _check_cap(poset.n, triple_cap)
    d = poset.dist
    strict = _strict_matrix(poset)
    n = poset.n
    for x in range(n):
        for y in np.flatnonzero(strict[x]):
            bound = np.maximum(d[x, y], d[y])
            if np.any(strict[y] & (d[x] < bound - tol)):
                return False
    return True


@dataclass(frozen=True)
class RadialityReport:
    witness: RadialityWitness | None
    radially_convex: bool

    @property
    def radial(self):
        return self.witness is None


def radiality_report(poset, tol=DEFAULT_TOL, triple_cap=DEFAULT_TRIPLE_CAP):
    return RadialityReport(
        witness=check_radiality(poset, tol, triple_cap),
        radially_convex=is_radially_convex(poset, tol, triple_cap),
    )


def poset_from_points(points, cone, labels=None, tol=DEFAULT_TOL):
    """Poset on explicit points of R^m: cone order, norm-tag distances."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    n = points.shape[0]
    if points.shape[1] != cone.dim:
        raise StructureError("point dimension must match the cone")
    if labels is None:
        labels = tuple(",".join(format(c, "g") for c in p) for p in points)
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            dist[i, j] = dist[j, i] = cones.norm_value(points[i] - points[j], cone.norm)
    order = set()
    for i in range(n):
        order.add((i, i))
        for j in range(n):
            if i != j and cones.contains(cone, points[i] - points[j], tol):
                order.add((i, j))
    return FiniteMetricPoset(labels=tuple(labels), dist=dist, order=frozenset(order))


def grid_instance(dim, side, spacing, cone, size_cap=4096, tol=DEFAULT_TOL):
    """Lattice points of {0..side-1}^dim scaled by ``spacing``, ordered by
    the cone and metrized by its norm tag."""
    count = side**dim
    if dim * count > size_cap:
        raise SizeCapError(f"dim*side^dim = {dim * count} exceeds cap {size_cap}")
    points = spacing * np.array(list(itertools.product(range(side), repeat=dim)), dtype=float)
    return poset_from_points(points, cone, tol=tol)


def chain_instance(positions):
    """Linearly ordered points of the real line (a radial poset)."""
    pos = np.sort(np.asarray(positions, dtype=float))
    n = pos.shape[0]
    dist = np.abs(pos[:, None] - pos[None, :])
    order = frozenset((i, j) for i in range(n) for j in range(n) if pos[i] >= pos[j])
    labels = tuple(format(p, "g") for p in pos)
    return FiniteMetricPoset(labels=labels, dist=dist, order=order)
