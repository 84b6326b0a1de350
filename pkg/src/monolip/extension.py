"""Construction and verification of order-preserving Lipschitz extensions.

Covers four routes:

* affine interpolation of maps defined on a finite subset of the real line
  (``line_extend``),
* exact linear programming for scalar targets and for polyhedral-norm
  vector targets (L1/LINF),
* Dykstra alternating projections for Euclidean vector targets
  (``feasibility_at_K``),
* bisection over the Lipschitz constant to estimate the extension modulus
  of a single problem instance (``estimate_e``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from . import cones, poset as poset_mod
from .errors import (
    ConvergenceError,
    RadialityRequiredError,
    StructureError,
    UnsupportedTargetError,
)

DEFAULT_TOL = 1e-9
DYKSTRA_TOL = 1e-8
DYKSTRA_MAX_ITER = 100_000
BISECT_TOL = 1e-4

FEASIBLE = "Feasible"
INFEASIBLE = "Infeasible"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ExtensionProblem:
    """(X, S, f, target): extend f from the subset S of the poset X.

    ``target`` is a ConeOrder over R^m; the scalar target (R, >=) is the
    nonnegative ray in R^1 (``cones.scalar_cone()``). ``f`` has one row per
    subset index. Construction rejects maps that are not order-preserving
    and 1-Lipschitz on S.
    """

    domain: poset_mod.FiniteMetricPoset
    subset: tuple
    target: cones.ConeOrder
    f: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        subset = tuple(int(s) for s in self.subset)
        if not subset:
            raise StructureError("subset must be nonempty")
        if len(set(subset)) != len(subset):
            raise StructureError("duplicate subset indices")
        if any(not 0 <= s < self.domain.n for s in subset):
            raise StructureError("subset index out of range")
        f = np.atleast_2d(np.asarray(self.f, dtype=float))
        if f.shape != (len(subset), self.target.dim):
            raise StructureError(
                f"f must have shape ({len(subset)}, {self.target.dim}), got {f.shape}"
            )
        object.__setattr__(self, "subset", subset)
        object.__setattr__(self, "f", f)
        self._check_admissible()

    def _check_admissible(self):
        tol = self.tol
        d = self.domain.dist
        for a, sa in enumerate(self.subset):
            for b, sb in enumerate(self.subset):
                if a == b:
                    continue
                gap = cones.norm_value(self.f[a] - self.f[b], self.target.norm)
                if gap > d[sa, sb] + tol * (1.0 + d[sa, sb]):
                    raise StructureError(
                        f"f is not 1-Lipschitz on S: |f({sa}) - f({sb})| = {gap} "
                        f"> d = {d[sa, sb]}"
                    )
                if self.domain.geq(sa, sb) and not cones.contains(
                    self.target, self.f[a] - self.f[b], tol
                ):
                    raise StructureError(
                        f"f is not order-preserving on S at pair ({sa}, {sb})"
                    )

    @property
    def is_scalar(self):
        return self.target.dim == 1

    def f_at(self, domain_index):
        return self.f[self.subset.index(domain_index)]


@dataclass(frozen=True)
class ResidualReport:
    """Worst-case violations of the three extension requirements."""

    lipschitz: float
    order: float
    anchor: float

    def max(self):
        return max(self.lipschitz, self.order, self.anchor)


@dataclass(frozen=True)
class ExtensionResult:
    values: np.ndarray
    K: float
    status: str
    residuals: ResidualReport


def verify_extension(problem, values, K, tol=DEFAULT_TOL):
    """Residuals of candidate values: Lipschitz excess over K*d, Euclidean
    distance of ordered-pair differences to the cone, anchor deviation."""
    values = np.atleast_2d(np.asarray(values, dtype=float))
    n = problem.domain.n
    if values.shape != (n, problem.target.dim):
        raise StructureError(f"values must have shape ({n}, {problem.target.dim})")
    d = problem.domain.dist
    lip = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            gap = cones.norm_value(values[i] - values[j], problem.target.norm)
            lip = max(lip, gap - K * d[i, j])
    order = 0.0
    for i, j in problem.domain.order:
        if i == j:
            continue
        diff = values[i] - values[j]
        proj = cones.project_cone(problem.target, diff)
        order = max(order, float(np.linalg.norm(diff - proj)))
    anchor = 0.0
    for a, s in enumerate(problem.subset):
        anchor = max(
            anchor, cones.norm_value(values[s] - problem.f[a], problem.target.norm)
        )
    return ResidualReport(lipschitz=lip, order=order, anchor=anchor)


# ---------------------------------------------------------------------------
# Affine interpolation on the line
# ---------------------------------------------------------------------------


def line_extend(points, values, queries, cone=None, tol=DEFAULT_TOL):
    """Monotone 1-Lipschitz extension of a map on a finite subset of R.

    Affine on each gap between consecutive anchor points, constant beyond
    the extremes. ``cone`` orders the target (defaults to the scalar
    order); the input map must be order-preserving and 1-Lipschitz for the
    cone and its norm tag, otherwise the call is rejected.
    """
    points = np.asarray(points, dtype=float)
    values = np.atleast_2d(np.asarray(values, dtype=float))
    if points.ndim != 1 or points.shape[0] != values.shape[0]:
        raise StructureError("points and values must align")
    if cone is None:
        cone = cones.scalar_cone()
    if values.shape[1] != cone.dim:
        raise StructureError("values must match the cone dimension")
    idx = np.argsort(points, kind="stable")
    xs = points[idx]
    fs = values[idx]
    if np.any(np.diff(xs) <= 0.0):
        raise StructureError("anchor points must be distinct")
    for a in range(len(xs)):
        for b in range(a + 1, len(xs)):
            step = fs[b] - fs[a]
            if cones.norm_value(step, cone.norm) > (xs[b] - xs[a]) * (1.0 + tol) + tol:
                raise StructureError("input map is not 1-Lipschitz")
            if not cones.contains(cone, step, tol):
                raise StructureError("input map is not order-preserving")

    scalar_query = np.isscalar(queries)
    qs = np.atleast_1d(np.asarray(queries, dtype=float))
    out = np.empty((qs.shape[0], cone.dim))
    for qi, q in enumerate(qs):
        k = int(np.searchsorted(xs, q))
        if k < len(xs) and xs[k] == q:
            out[qi] = fs[k]
        elif k == 0:
            out[qi] = fs[0]  # constant tail below min S
        elif k == len(xs):
            out[qi] = fs[-1]  # constant tail above max S
        else:
            a, b = xs[k - 1], xs[k]
            out[qi] = fs[k - 1] + (q - a) / (b - a) * (fs[k] - fs[k - 1])
    if scalar_query:
        return out[0]
    return out


def line_problem(points, values, cone=None):
    """The finite extension problem induced by anchor points on the line
    (used to verify interpolants on query grids)."""
    points = np.asarray(points, dtype=float)
    if cone is None:
        cone = cones.scalar_cone()
    order = np.argsort(points, kind="stable")
    chain = poset_mod.chain_instance(points)
    # chain_instance sorts, so map anchor rows accordingly
    values = np.atleast_2d(np.asarray(values, dtype=float))[order]
    return ExtensionProblem(
        domain=chain, subset=tuple(range(chain.n)), target=cone, f=values
    )


# ---------------------------------------------------------------------------
# Linear-programming routes
# ---------------------------------------------------------------------------


def _cone_rows(target):
    """Halfspace normals of the target cone, for LP order constraints."""
    rows = cones.halfspace_form(target)
    if rows is None:
        raise UnsupportedTargetError(
            "order constraints need a halfspace form of the target cone "
            f"(dim <= {cones.FACET_ENUM_MAX_DIM} for generated cones)"
        )
    return rows


def _lp_constraints(problem, K):
    """A_ub, b_ub, A_eq, b_eq and variable count for feasibility at K.

    Variables are the n*m entries of F (row-major), plus one auxiliary
    variable per (pair, coordinate) for L1 targets.
    """
    n = problem.domain.n
    m = problem.target.dim
    d = problem.domain.dist
    norm = problem.target.norm
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    nvar = n * m
    aux_base = nvar
    if norm == "l1" and m > 1:
        nvar += len(pairs) * m

    def var(i, c):
        return i * m + c

    a_ub, b_ub = [], []

    def add_ub(coeffs, rhs):
        row = np.zeros(nvar)
        for k, w in coeffs:
            row[k] += w
        a_ub.append(row)
        b_ub.append(rhs)

    for p, (i, j) in enumerate(pairs):
        r = K * d[i, j]
        if m == 1 or norm == "linf":
            for c in range(m):
                add_ub([(var(i, c), 1.0), (var(j, c), -1.0)], r)
                add_ub([(var(i, c), -1.0), (var(j, c), 1.0)], r)
        elif norm == "l1":
            total = []
            for c in range(m):
                t = aux_base + p * m + c
                add_ub([(var(i, c), 1.0), (var(j, c), -1.0), (t, -1.0)], 0.0)
                add_ub([(var(i, c), -1.0), (var(j, c), 1.0), (t, -1.0)], 0.0)
                total.append((t, 1.0))
            add_ub(total, r)
        else:
            raise UnsupportedTargetError(
                f"no LP route for norm {norm!r} with m = {m}"
            )

    if not problem.target.is_trivial:
        rows = _cone_rows(problem.target) if m > 1 else [np.array([1.0])]
        for i, j in problem.domain.order:
            if i == j:
                continue
            for h in rows:
                add_ub(
                    [(var(i, c), -float(h[c])) for c in range(m)]
                    + [(var(j, c), float(h[c])) for c in range(m)],
                    0.0,
                )
    else:
        for i, j in problem.domain.order:
            if i == j:
                continue
            for c in range(m):
                add_ub([(var(i, c), 1.0), (var(j, c), -1.0)], 0.0)
                add_ub([(var(i, c), -1.0), (var(j, c), 1.0)], 0.0)

    a_eq, b_eq = [], []
    for a, s in enumerate(problem.subset):
        for c in range(m):
            row = np.zeros(nvar)
            row[var(s, c)] = 1.0
            a_eq.append(row)
            b_eq.append(float(problem.f[a, c]))

    return np.array(a_ub), np.array(b_ub), np.array(a_eq), np.array(b_eq), nvar


def lp_feasible_at_K(problem, K):
    """Exact LP feasibility at Lipschitz constant K (status, values)."""
    a_ub, b_ub, a_eq, b_eq, nvar = _lp_constraints(problem, K)
    res = scipy.optimize.linprog(
        c=np.zeros(nvar),
        A_ub=a_ub if a_ub.size else None,
        b_ub=b_ub if b_ub.size else None,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=(None, None),
        method="highs",
    )
    n, m = problem.domain.n, problem.target.dim
    if res.status == 0:
        return FEASIBLE, res.x[: n * m].reshape(n, m)
    if res.status == 2:
        return INFEASIBLE, None
    raise ConvergenceError(f"LP solver failed: {res.message}")


def min_lipschitz_lp(problem):
    """Exact minimal K admitting an order-preserving K-Lipschitz extension
    (the per-instance LP oracle); returns (K, values)."""
    # One extra variable K multiplying every pair bound. The right-hand
    # sides at fixed K hold K*d per pair row and 0 elsewhere, so the
    # d-coefficients of the K column come from differencing two values.
    n = problem.domain.n
    m = problem.target.dim
    a_ub, b_ub, a_eq, b_eq, nvar = _lp_constraints(problem, 1.0)
    _, b_ub2, _, _, _ = _lp_constraints(problem, 2.0)
    dcol = b_ub2 - b_ub
    A = np.hstack([a_ub, -dcol[:, None]])
    Aeq = np.hstack([a_eq, np.zeros((a_eq.shape[0], 1))])
    c = np.zeros(nvar + 1)
    c[-1] = 1.0
    bounds = [(None, None)] * nvar + [(0.0, None)]
    res = scipy.optimize.linprog(
        c=c,
        A_ub=A if A.size else None,
        b_ub=np.zeros(A.shape[0]) if A.size else None,
        A_eq=Aeq,
        b_eq=b_eq,
        bounds=bounds,
        method="highs",
    )
    if res.status != 0:
        raise ConvergenceError(f"min-K LP failed: {res.message}")
    return float(res.x[-1]), res.x[: n * m].reshape(n, m)


# ---------------------------------------------------------------------------
# Dykstra alternating projections (Euclidean vector targets)
# ---------------------------------------------------------------------------


def _dykstra(problem, K, tol, max_iter):
    """Alternating projections over anchors, pair balls, and cone
    differences in the product space of all F-values."""
    n = problem.domain.n
    m = problem.target.dim
    d = problem.domain.dist
    values = np.zeros((n, m))
    for a, s in enumerate(problem.subset):
        values[s] = problem.f[a]

    ball_sets = [
        (i, j, K * d[i, j]) for i in range(n) for j in range(i + 1, n)
    ]
    cone_sets = [
        (i, j) for i, j in problem.domain.order if i != j
    ] if not problem.target.is_trivial else []
    # trivial cone: ordered pairs force equality, project to the average
    eq_sets = [
        (i, j) for i, j in problem.domain.order if i != j
    ] if problem.target.is_trivial else []

    corr_ball = {key: np.zeros((2, m)) for key in ball_sets}
    corr_cone = {key: np.zeros((2, m)) for key in cone_sets}
    corr_eq = {key: np.zeros((2, m)) for key in eq_sets}
    anchors = list(zip(problem.subset, problem.f))

    def residuals():
        lip = 0.0
        for i, j, r in ball_sets:
            lip = max(lip, float(np.linalg.norm(values[i] - values[j])) - r)
        order = 0.0
        for i, j in cone_sets:
            diff = values[i] - values[j]
            order = max(
                order,
                float(np.linalg.norm(diff - cones.project_cone(problem.target, diff))),
            )
        for i, j in eq_sets:
            order = max(order, float(np.linalg.norm(values[i] - values[j])))
        anc = max(
            float(np.linalg.norm(values[s] - fv)) for s, fv in anchors
        )
        return lip, order, anc

    check_every = 10
    for sweep in range(max_iter):
        # anchors (affine set: plain projection, no correction needed)
        for s, fv in anchors:
            values[s] = fv
        for key in ball_sets:
            i, j, r = key
            y_i = values[i] + corr_ball[key][0]
            y_j = values[j] + corr_ball[key][1]
            u = y_i - y_j
            nu = float(np.linalg.norm(u))
            if nu > r:
                shift = 0.5 * (nu - r) / nu * u
                p_i, p_j = y_i - shift, y_j + shift
            else:
                p_i, p_j = y_i, y_j
            corr_ball[key][0] = y_i - p_i
            corr_ball[key][1] = y_j - p_j
            values[i], values[j] = p_i, p_j
        for key in cone_sets:
            i, j = key
            y_i = values[i] + corr_cone[key][0]
            y_j = values[j] + corr_cone[key][1]
            u = y_i - y_j
            w = cones.project_cone(problem.target, u)
            shift = 0.5 * (w - u)
            p_i, p_j = y_i + shift, y_j - shift
            corr_cone[key][0] = y_i - p_i
            corr_cone[key][1] = y_j - p_j
            values[i], values[j] = p_i, p_j
        for key in eq_sets:
            i, j = key
            y_i = values[i] + corr_eq[key][0]
            y_j = values[j] + corr_eq[key][1]
            mid = 0.5 * (y_i + y_j)
            corr_eq[key][0] = y_i - mid
            corr_eq[key][1] = y_j - mid
            values[i] = values[j] = mid
        if sweep % check_every == 0 or sweep == max_iter - 1:
            snapped = values.copy()
            for s, fv in anchors:
                snapped[s] = fv
            lip, order, anc = residuals()
            if max(lip, order, anc) <= tol:
                return FEASIBLE, snapped
    return UNKNOWN, values


def _dual_norm_factor(norm, e):
    """Lipschitz constant of a -> <a, e> w.r.t. the given norm."""
    if norm == "l2":
        return float(np.linalg.norm(e))
    if norm == "l1":
        return float(np.max(np.abs(e)))
    return float(np.sum(np.abs(e)))  # linf


def _scalar_relaxation(problem, K, seed=0):
    """Compose with a monotone direction of the target cone; infeasibility
    of the scalar image problem certifies infeasibility of the original."""
    if problem.target.is_trivial:
        return None
    try:
        e = cones.monotone_direction(problem.target, seed=seed)
    except Exception:
        return None
    factor = _dual_norm_factor(problem.target.norm, e)
    f_scalar = (problem.f @ e)[:, None] / factor
    try:
        relaxed = ExtensionProblem(
            domain=problem.domain,
            subset=problem.subset,
            target=cones.scalar_cone(),
            f=f_scalar,
        )
    except StructureError:
        return None
    status, _ = lp_feasible_at_K(relaxed, K)
    return status


def feasibility_at_K(problem, K, tol=DYKSTRA_TOL, max_iter=DYKSTRA_MAX_ITER, seed=0):
    """Decide whether an order-preserving K-Lipschitz extension exists.

    Scalar and polyhedral-norm (L1/LINF) targets are decided exactly by
    linear programming. Euclidean vector targets run Dykstra alternating
    projections, with a monotone-direction scalar relaxation providing the
    only infeasibility certificate; otherwise the outcome is Unknown after
    ``max_iter`` sweeps.
    """
    if K <= 0.0:
        raise StructureError("K must be positive")
    if len(problem.subset) == problem.domain.n:
        values = np.zeros((problem.domain.n, problem.target.dim))
        for a, s in enumerate(problem.subset):
            values[s] = problem.f[a]
        res = verify_extension(problem, values, K)
        status = FEASIBLE if res.max() <= max(tol, DEFAULT_TOL) else INFEASIBLE
        return ExtensionResult(values=values, K=K, status=status, residuals=res)

    if problem.is_scalar or problem.target.norm in ("l1", "linf"):
        status, values = lp_feasible_at_K(problem, K)
        if status == INFEASIBLE:
            return ExtensionResult(
                values=np.zeros((problem.domain.n, problem.target.dim)),
                K=K,
                status=INFEASIBLE,
                residuals=ResidualReport(np.inf, np.inf, np.inf),
            )
        return ExtensionResult(
            values=values, K=K, status=FEASIBLE,
            residuals=verify_extension(problem, values, K),
        )

    relax = _scalar_relaxation(problem, K, seed=seed)
    if relax == INFEASIBLE:
        return ExtensionResult(
            values=np.zeros((problem.domain.n, problem.target.dim)),
            K=K,
            status=INFEASIBLE,
            residuals=ResidualReport(np.inf, np.inf, np.inf),
        )
    status, values = _dykstra(problem, K, tol, max_iter)
    return ExtensionResult(
        values=values, K=K, status=status,
        residuals=verify_extension(problem, values, K),
    )


# ---------------------------------------------------------------------------
# Extension-modulus estimation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EstimateResult:
    """Bisection outcome for the minimal admissible Lipschitz constant.

    ``K`` is the bracket midpoint; ``conclusive`` is False when an Unknown
    feasibility status touched the final bracket, in which case (lo, hi)
    is the honest answer.
    """

    K: float
    lo: float
    hi: float
    conclusive: bool
    trace: tuple


def estimate_e(problem, tol=BISECT_TOL, max_iter=DYKSTRA_MAX_ITER, seed=0):
    """Binary search for the minimal K with a feasible extension.

    This is a per-f quantity: a lower bound on the supremal extension
    modulus of (X, S, target) over all admissible maps f.
    """
    trace = []

    def feasible(K):
        res = feasibility_at_K(problem, K, max_iter=max_iter, seed=seed)
        trace.append((float(K), res.status))
        return res.status

    if len(problem.subset) <= 1 or len(problem.subset) == problem.domain.n:
        return EstimateResult(K=1.0, lo=1.0, hi=1.0, conclusive=True, trace=())

    s0 = feasible(1.0)
    if s0 == FEASIBLE:
        return EstimateResult(K=1.0, lo=1.0, hi=1.0, conclusive=True, trace=tuple(trace))

    hi = 2.0
    while feasible(hi) != FEASIBLE:
        hi *= 2.0
        if hi > 2.0**20:
            raise ConvergenceError("no feasible Lipschitz constant found below 2^20")
    lo = max(1.0, hi / 2.0)
    saw_unknown = s0 == UNKNOWN
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        status = feasible(mid)
        if status == FEASIBLE:
            hi = mid
        else:
            lo = mid
            if status == UNKNOWN:
                saw_unknown = True
    return EstimateResult(
        K=0.5 * (lo + hi),
        lo=lo,
        hi=hi,
        conclusive=not saw_unknown,
        trace=tuple(trace),
    )


# ---------------------------------------------------------------------------
# Scalar and componentwise extension
# ---------------------------------------------------------------------------


def scalar_extend(problem):
    """Order-preserving Lipschitz extension into (R, >=).

    On radial domains an extension at K = 1 exists and is returned with
    status Feasible; otherwise the minimal-K LP extension is returned with
    status Infeasible (no valid 1-Lipschitz extension).
    """
    if not problem.is_scalar:
        raise StructureError("scalar_extend needs a scalar target")
    status, values = lp_feasible_at_K(problem, 1.0)
    if status == FEASIBLE:
        return ExtensionResult(
            values=values, K=1.0, status=FEASIBLE,
            residuals=verify_extension(problem, values, 1.0),
        )
    k_min, values = min_lipschitz_lp(problem)
    return ExtensionResult(
        values=values, K=k_min, status=INFEASIBLE,
        residuals=verify_extension(problem, values, k_min),
    )


def _rows_are_basis(rows, dim):
    scaled = rows / np.linalg.norm(rows, axis=1)[:, None]
    perm = np.argsort(np.argmax(scaled, axis=1), kind="stable")
    return np.allclose(scaled[perm], np.eye(dim), atol=1e-12)


def _is_orthant(cone):
    if cone.generators is not None and cone.generators.shape[0] == cone.dim:
        return _rows_are_basis(cone.generators, cone.dim)
    if cone.halfspaces is not None and cone.halfspaces.shape[0] == cone.dim:
        return _rows_are_basis(cone.halfspaces, cone.dim)
    return False


def componentwise_extend(problem):
    """Per-coordinate scalar extension into a coordinatewise-ordered R^m.

    Requires a radial domain; the aggregated Lipschitz constant is at most
    sqrt(m) for L2 targets and 1 for LINF targets.
    """
    if not _is_orthant(problem.target):
        raise StructureError("componentwise extension needs the coordinatewise cone")
    witness = poset_mod.check_radiality(problem.domain)
    if witness is not None:
        raise RadialityRequiredError(witness)
    m = problem.target.dim
    values = np.zeros((problem.domain.n, m))
    for c in range(m):
        sub = ExtensionProblem(
            domain=problem.domain,
            subset=problem.subset,
            target=cones.scalar_cone(),
            f=problem.f[:, c : c + 1],
        )
        res = scalar_extend(sub)
        if res.status != FEASIBLE:
            raise ConvergenceError(
                f"coordinate {c} failed to extend at K = 1 on a radial domain"
            )
        values[:, c] = res.values[:, 0]
    d = problem.domain.dist
    k_achieved = 1.0
    for i in range(problem.domain.n):
        for j in range(i + 1, problem.domain.n):
            if d[i, j] > 0:
                gap = cones.norm_value(values[i] - values[j], problem.target.norm)
                k_achieved = max(k_achieved, gap / d[i, j])
    return ExtensionResult(
        values=values,
        K=k_achieved,
        status=FEASIBLE,
        residuals=verify_extension(problem, values, k_achieved),
    )


# ---------------------------------------------------------------------------
# Admissible-map sampling (for modulus lower bounds over sampled f)
# ---------------------------------------------------------------------------


def fit_monotone_lipschitz(domain, subset, raw_values, lipschitz=1.0):
    """Nearest (in summed absolute deviation) order-preserving
    ``lipschitz``-Lipschitz scalar map on the subset to the raw values.

    Used to turn arbitrary random values into admissible test maps.
    """
    subset = tuple(subset)
    k = len(subset)
    raw = np.asarray(raw_values, dtype=float).reshape(k)
    d = domain.dist
    nvar = 2 * k  # values then deviations
    a_ub, b_ub = [], []
    for a in range(k):
        for b in range(k):
            if a == b:
                continue
            row = np.zeros(nvar)
            row[a], row[b] = 1.0, -1.0
            a_ub.append(row)
            b_ub.append(lipschitz * d[subset[a], subset[b]])
    for a in range(k):
        for b in range(k):
            if a != b and domain.geq(subset[a], subset[b]):
                row = np.zeros(nvar)
                row[a], row[b] = -1.0, 1.0
                a_ub.append(row)
                b_ub.append(0.0)
    for a in range(k):
        for sign in (1.0, -1.0):
            row = np.zeros(nvar)
            row[a] = sign
            row[k + a] = -1.0
            a_ub.append(row)
            b_ub.append(sign * raw[a])
    c = np.concatenate([np.zeros(k), np.ones(k)])
    res = scipy.optimize.linprog(
        c=c,
        A_ub=np.array(a_ub),
        b_ub=np.array(b_ub),
        bounds=[(None, None)] * k + [(0.0, None)] * k,
        method="highs",
    )
    if res.status != 0:
        raise ConvergenceError(f"monotone-Lipschitz fit failed: {res.message}")
    return res.x[:k]
