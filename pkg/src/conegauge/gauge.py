"""Gauge functionals of a cone and the oriented distance to ``-K``.

A gauge is the support function of a set ``C`` of nonzero dual vectors
generating ``K+``:  ``phi(x) = max_{c in C} <x, c>``. It is negative on the
interior of ``-K``, zero on its boundary and positive outside.
"""

from dataclasses import asdict, dataclass

import numpy as np

from ._validation import as_points, as_vector_list, check_tol
from .cones import (
    DEFAULT_TOL,
    ConeClassification,
    Lorentz,
    Orthant,
    PolyhedralCone,
    classify_dual,
    dual_score,
)
from .exceptions import ConeError
from .nnls import nnls
from .simplex import in_convex_hull

DEFAULT_SEED = 42
BOUNDARY_BAND = 1e-6


class FiniteGauge:
    """``phi(x) = max_{c in dual_set} <x, c>`` for a finite ``dual_set`` in ``K+ \\ {0}``.

    Parameters
    ----------
    cone : Cone
    dual_set : array_like of shape (p, m)
    tol : float
        Tolerance for the membership ``dual_set ⊂ K+`` and for the
        generation check.

    Raises
    ------
    ConeError
        If a vector is zero, lies outside ``K+``, or (orthant/polyhedral
        cones) the conic hull of ``dual_set`` misses an extreme ray of ``K+``.
    """

    kind = "finite"

    def __init__(self, cone, dual_set, tol=DEFAULT_TOL):
        C = as_vector_list(dual_set, cone.dim, name="dual_set")
        if np.any(np.linalg.norm(C, axis=1) == 0):
            raise ConeError("dual_set contains the zero vector")
        outside = ~cone.in_dual(C, tol)
        if outside.any():
            raise ConeError(f"dual vector {C[np.argmax(outside)].tolist()} is not in K+")
        rays = _dual_extreme_rays(cone)
        if rays is not None:
            unit_C = C / np.linalg.norm(C, axis=1, keepdims=True)
            for w in rays:
                _, r = nnls(unit_C.T, w / np.linalg.norm(w))
                if r > 1e-7:
                    raise ConeError(f"dual_set does not generate K+ (misses ray {w.tolist()})")
        C.setflags(write=False)
        self.cone = cone
        self.dual_set = C

    def __repr__(self):
        return f"FiniteGauge(cone={self.cone!r}, dual_set={self.dual_set.tolist()})"

    def __call__(self, x):
        return evaluate(self, x)

    def values(self, X):
        return np.max(X @ self.dual_set.T, axis=1)

    def to_dict(self):
        return {"cone": self.cone.to_dict(), "dual_set": self.dual_set.tolist()}


class OrientedDistanceGauge:
    """Signed distance ``d(x, -K) - d(x, R^m \\ -K)`` for the Euclidean norm."""

    kind = "oriented"

    def __init__(self, cone):
        self.cone = cone

    def __repr__(self):
        return f"OrientedDistanceGauge(cone={self.cone!r})"

    def __call__(self, x):
        return oriented_distance(self, x)

    def values(self, X):
        s = self.cone.dual_score(X)
        out = s.copy()
        for i in np.flatnonzero(s > 0):
            out[i] = np.linalg.norm(X[i] - self.cone.project_minus_k(X[i]))
        return out

    def to_dict(self):
        return {"cone": self.cone.to_dict(), "kind": "oriented"}


def _dual_extreme_rays(cone):
    if isinstance(cone, PolyhedralCone):
        return cone.dual_generators
    if isinstance(cone, Orthant):
        return np.eye(cone.dim)
    return None


def evaluate(g, x, return_index=False):
    """Evaluate a finite gauge at one point or a batch.

    With ``return_index=True`` also returns the index into ``g.dual_set``
    attaining the max (lowest index on ties), so that
    ``<x, dual_set[idx]> == value`` exactly.
    """
    X, single = as_points(x, g.cone.dim)
    P = X @ g.dual_set.T
    idx = np.argmax(P, axis=1)
    val = P[np.arange(len(X)), idx]
    if single:
        return (float(val[0]), int(idx[0])) if return_index else float(val[0])
    return (val, idx) if return_index else val


def oriented_distance(g, x):
    """Oriented distance of ``x`` to the boundary of ``-K``.

    Outside ``-K`` this is ``||x - proj_{-K}(x)||``; inside it is minus the
    distance to the complement, ``max_w <x, w> / ||w||`` over the extreme
    rays of ``K+``. ``g`` may be an :class:`OrientedDistanceGauge` or a cone.
    """
    cone = getattr(g, "cone", g)
    X, single = as_points(x, cone.dim)
    vals = OrientedDistanceGauge(cone).values(X)
    return float(vals[0]) if single else vals


def gauge_values(phi, x):
    """Values of either gauge kind at one point or a batch."""
    X, single = as_points(x, phi.cone.dim)
    vals = phi.values(X)
    return float(vals[0]) if single else vals


def dual_sphere_value(cone, x, n_samples=100_000, seed=DEFAULT_SEED):
    """Sampled lower bound of ``sup { <x, u> : u in K+, ||u|| = 1 }``.

    The same ``n_samples`` unit dual vectors (drawn from ``seed``) are used
    for every row of a batch.
    """
    if int(n_samples) < 1:
        raise ValueError("n_samples must be >= 1")
    X, single = as_points(x, cone.dim)
    S = cone.sample_unit_dual(np.random.default_rng(seed), int(n_samples))
    if len(S) == 0:
        raise ConeError("no valid dual sample produced")
    vals = np.max(X @ S.T, axis=1) if len(X) * len(S) <= 5_000_000 else np.array([np.max(S @ row) for row in X])
    return float(vals[0]) if single else vals


def classify_by_sign(phi, x, tol=DEFAULT_TOL):
    """Classify by the sign of a gauge: ``< -tol`` interior, ``> tol`` exterior, else boundary."""
    tol = check_tol(tol)
    v = gauge_values(phi, x)
    codes = np.where(np.asarray(v) < -tol, -1, np.where(np.asarray(v) > tol, 1, 0))
    if np.ndim(v) == 0:
        return ConeClassification(int(codes))
    return codes


@dataclass
class GaugeReport:
    checked_points: int
    seed: int
    tol: float
    homogeneity_violations: int = 0
    worst_homogeneity: float = 0.0
    subadditivity_violations: int = 0
    worst_subadditivity: float = 0.0
    sign_violations: int = 0
    worst_sign: float = 0.0

    @property
    def passed(self):
        return self.homogeneity_violations == 0 and self.subadditivity_violations == 0 and self.sign_violations == 0

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


def verify_gauge_axioms(phi, n_samples=10_000, seed=DEFAULT_SEED, tol=1e-10, points=None):
    """Check sublinearity and the sign pattern of a gauge on random data.

    For standard normal ``x, y`` and ``t ~ U(0.1, 10)``:

    * ``|phi(t x) - t phi(x)| <= tol * (1 + |phi(x)|)``
    * ``phi(x + y) <= phi(x) + phi(y) + tol``
    * the sign label of ``phi(x)`` equals :func:`classify_dual` of ``x``
      (both at ``tol``), except for points whose dual score is within
      1e-6 of zero.

    ``points`` replaces the random ``x`` sample when given. Worst values are
    the largest excess over the allowed bound.
    """
    rng = np.random.default_rng(seed)
    m = phi.cone.dim
    if points is None:
        if int(n_samples) < 1:
            raise ValueError("n_samples must be >= 1")
        X = rng.standard_normal((int(n_samples), m))
    else:
        X, _ = as_points(points, m, name="points")
    n = len(X)
    Y = rng.standard_normal((n, m))
    t = rng.uniform(0.1, 10.0, size=n)
    fx, fy = phi.values(X), phi.values(Y)
    report = GaugeReport(checked_points=n, seed=int(seed), tol=float(tol))

    hom = np.abs(phi.values(t[:, None] * X) - t * fx) - tol * (1 + np.abs(fx))
    report.homogeneity_violations = int(np.sum(hom > 0))
    report.worst_homogeneity = float(max(0.0, hom.max()))

    sub = phi.values(X + Y) - fx - fy - tol
    report.subadditivity_violations = int(np.sum(sub > 0))
    report.worst_subadditivity = float(max(0.0, sub.max()))

    s = dual_score(phi.cone, X)
    by_sign = np.where(fx < -tol, -1, np.where(fx > tol, 1, 0))
    bad = (by_sign != classify_dual(phi.cone, X, tol)) & (np.abs(s) > BOUNDARY_BAND)
    report.sign_violations = int(bad.sum())
    report.worst_sign = float(np.max(np.abs(fx[bad]))) if bad.any() else 0.0
    return report


def minimal_generating_subset(g, tol=DEFAULT_TOL):
    """Drop elements of ``dual_set`` lying in the convex hull of the others.

    ``phi`` is the support function of ``conv(dual_set)``, so removing such
    points leaves every value unchanged. Elements are scanned in order and
    the survivors keep their original order.
    """
    C = g.dual_set
    keep = list(range(len(C)))
    for i in range(len(C)):
        rest = [k for k in keep if k != i]
        if rest and in_convex_hull(C[i], C[rest], tol):
            keep.remove(i)
    reduced = FiniteGauge.__new__(FiniteGauge)
    reduced.cone = g.cone
    reduced.dual_set = C[keep]
    return reduced


def gauge_from_unit_dual_sphere(cone):
    """Finite gauge on the unit-normalized dual generators of a polyhedral cone.

    A finite stand-in for the whole unit sphere of ``K+``: it agrees with
    the oriented distance on ``-K`` and on rays where the nearest point of
    ``-K`` is the apex along an extreme dual direction, and is smaller
    elsewhere outside ``-K``.
    """
    if isinstance(cone, Orthant):
        W = np.eye(cone.dim)
    elif isinstance(cone, PolyhedralCone):
        W = cone.dual_generators / np.linalg.norm(cone.dual_generators, axis=1, keepdims=True)
    else:
        raise ConeError("Lorentz cone has infinitely many dual extreme rays")
    return FiniteGauge(cone, W)


def canonical_gauge(cone):
    """Gauge with ``C`` = unit extreme rays of ``K+`` (orthant: the basis vectors)."""
    return gauge_from_unit_dual_sphere(cone)


def builtin_gauges():
    """Named gauges exercised by the property suites and the CLI."""
    wedge = PolyhedralCone([[1, 0], [1, 1]], [[0, 1], [1, -1]])
    out = {}
    for d in (2, 5, 10):
        out[f"orthant{d}-basis"] = FiniteGauge(Orthant(d), np.eye(d))
        out[f"orthant{d}-oriented"] = OrientedDistanceGauge(Orthant(d))
    for d in (2, 3, 5):
        out[f"lorentz{d}-oriented"] = OrientedDistanceGauge(Lorentz(d))
    out["wedge-finite"] = FiniteGauge(wedge, [[0, 1], [1, -1]])
    out["wedge-oriented"] = OrientedDistanceGauge(wedge)
    return out
