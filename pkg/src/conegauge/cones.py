"""Closed convex pointed cones in R^m and their negatives.

Three families are supported: polyhedral cones carrying both a generator
(V-) and a dual-generator (H-) description, the nonnegative orthant, and the
Lorentz (second-order) cone ``{(xbar, t) : ||xbar|| <= t}``. Everything is
phrased in terms of ``-K`` because that is the set whose interior, boundary
and exterior the gauges separate.
"""

import enum
import itertools

import numpy as np

from ._validation import as_points, as_vector_list, check_tol
from .exceptions import ConeError, UnsupportedError
from .nnls import nnls
from .simplex import hull_distance_decision

DEFAULT_TOL = 1e-9
DEDUP_TOL = 1e-12
MAX_POLAR_DIM = 6
MAX_POLAR_GENERATORS = 24

_SQRT2 = np.sqrt(2.0)


class ConeClassification(enum.IntEnum):
    """Position of a point relative to ``-K``.

    The integer values are the sign of the gauge, so batch results can be
    stored as plain int arrays.
    """

    INTERIOR_OF_MINUS_K = -1
    BOUNDARY_OF_MINUS_K = 0
    EXTERIOR = 1

    @property
    def label(self):
        return self.name.lower()

    @classmethod
    def from_label(cls, label):
        return cls[label.upper()]


def _unit_rows(V):
    return V / np.linalg.norm(V, axis=1, keepdims=True)


def dedup_rays(V, tol=DEDUP_TOL):
    """Drop rays that are positive multiples of an earlier ray."""
    U = _unit_rows(V)
    keep = []
    for i in range(len(U)):
        if all(np.linalg.norm(U[i] - U[k]) > tol for k in keep):
            keep.append(i)
    return V[keep]


def same_rays(A, B, tol=DEFAULT_TOL):
    """True if the ray sets of ``A`` and ``B`` coincide up to positive scaling."""
    UA = dedup_rays(np.asarray(A, float), tol)
    UB = dedup_rays(np.asarray(B, float), tol)
    if len(UA) != len(UB):
        return False
    UA, UB = _unit_rows(UA), _unit_rows(UB)
    return all(np.min(np.linalg.norm(UB - u, axis=1)) <= tol for u in UA) and all(
        np.min(np.linalg.norm(UA - u, axis=1)) <= tol for u in UB
    )


class Cone:
    """Common interface of the supported cone families."""

    dim: int
    kind: str

    def dual_score(self, X):
        """``max <x, w> / ||w||`` over the extreme rays ``w`` of ``K+``, per row of ``X``."""
        raise NotImplementedError

    def project_minus_k(self, x):
        raise NotImplementedError

    def in_dual(self, C, tol=DEFAULT_TOL):
        """Boolean mask: which rows of ``C`` lie in ``K+``."""
        raise NotImplementedError

    def sample_unit_dual(self, rng, n):
        """``n`` random unit vectors of ``K+``."""
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError


class PolyhedralCone(Cone):
    """Cone generated by finitely many rays.

    Parameters
    ----------
    generators : array_like of shape (p, m)
        ``K`` is the set of nonnegative combinations of these rows.
    dual_generators : array_like of shape (q, m), optional
        Generators of the positive polar cone ``K+``, so that
        ``K = {x : <x, w> >= 0 for all w}``. Must contain every extreme ray
        of ``K+``. Computed by facet enumeration when omitted.
    tol : float
        Tolerance of the cross-consistency check ``<g, w> >= -tol ||g|| ||w||``.

    Notes
    -----
    Zero rows are rejected; duplicate rays (relative tolerance 1e-12) are
    merged. Pointedness and full dimension are *not* enforced here; see
    :func:`is_pointed` and :func:`has_nonempty_interior`.
    """

    kind = "polyhedral"

    def __init__(self, generators, dual_generators=None, tol=DEFAULT_TOL):
        G = as_vector_list(generators, name="generators")
        if np.any(np.linalg.norm(G, axis=1) == 0):
            raise ConeError("zero vector among generators")
        G = dedup_rays(G)
        self.dim = G.shape[1]
        if dual_generators is None:
            W = _facet_normals(G)
        else:
            W = as_vector_list(dual_generators, self.dim, name="dual_generators")
            if np.any(np.linalg.norm(W, axis=1) == 0):
                raise ConeError("zero vector among dual generators")
            W = dedup_rays(W)
        cross = _unit_rows(G) @ _unit_rows(W).T
        if np.min(cross) < -tol:
            i, j = np.unravel_index(np.argmin(cross), cross.shape)
            raise ConeError(
                f"generator {G[i].tolist()} and dual generator {W[j].tolist()} are inconsistent "
                f"(normalized inner product {cross[i, j]:.3g})"
            )
        G.setflags(write=False)
        W.setflags(write=False)
        self.generators = G
        self.dual_generators = W
        self._unit_dual = _unit_rows(W)

    def __repr__(self):
        return f"PolyhedralCone(generators={self.generators.tolist()}, dual_generators={self.dual_generators.tolist()})"

    def dual_score(self, X):
        return np.max(X @ self._unit_dual.T, axis=1)

    def project_minus_k(self, x):
        # y = -G^T lam with lam >= 0 closest to x
        lam, _ = nnls(-self.generators.T, x)
        return -(self.generators.T @ lam)

    def in_dual(self, C, tol=DEFAULT_TOL):
        return np.min(_unit_rows(C) @ _unit_rows(self.generators).T, axis=1) >= -tol

    def sample_unit_dual(self, rng, n):
        # Convex combinations supported on random subsets of at most `dim`
        # dual generators, so faces of K+ get positive sampling density.
        W = self.dual_generators
        q = len(W)
        kmax = min(q, self.dim)
        sizes = rng.integers(1, kmax + 1, size=n)
        ranks = np.argsort(np.argsort(rng.random((n, q)), axis=1), axis=1)
        weights = np.where(ranks < sizes[:, None], rng.exponential(size=(n, q)), 0.0)
        S = weights @ self._unit_dual
        norms = np.linalg.norm(S, axis=1)
        ok = norms > 1e-12
        return S[ok] / norms[ok, None]

    def to_dict(self):
        return {
            "kind": "polyhedral",
            "dim": self.dim,
            "generators": self.generators.tolist(),
            "dual_generators": self.dual_generators.tolist(),
        }


class Orthant(Cone):
    """The nonnegative orthant ``R^m_+`` (self-dual)."""

    kind = "orthant"

    def __init__(self, dim):
        dim = int(dim)
        if dim < 1:
            raise ConeError("orthant dimension must be positive")
        self.dim = dim

    def __repr__(self):
        return f"Orthant({self.dim})"

    def __eq__(self, other):
        return isinstance(other, Orthant) and other.dim == self.dim

    def __hash__(self):
        return hash(("orthant", self.dim))

    def dual_score(self, X):
        return np.max(X, axis=1)

    def project_minus_k(self, x):
        return np.minimum(x, 0.0)

    def in_dual(self, C, tol=DEFAULT_TOL):
        return np.min(C / np.linalg.norm(C, axis=1, keepdims=True), axis=1) >= -tol

    def sample_unit_dual(self, rng, n):
        # |gaussian| normalized has the same law as rejection sampling on the sphere.
        Z = np.abs(rng.standard_normal((n, self.dim)))
        return Z / np.linalg.norm(Z, axis=1, keepdims=True)

    def as_polyhedral(self):
        eye = np.eye(self.dim)
        return PolyhedralCone(eye, eye)

    def to_dict(self):
        return {"kind": "orthant", "dim": self.dim}


class Lorentz(Cone):
    """Second-order cone ``{(xbar, t) : ||xbar|| <= t}``; ``t`` is the last entry."""

    kind = "lorentz"

    def __init__(self, dim):
        dim = int(dim)
        if dim < 2:
            raise ConeError("Lorentz cone needs dim >= 2")
        self.dim = dim

    def __repr__(self):
        return f"Lorentz({self.dim})"

    def __eq__(self, other):
        return isinstance(other, Lorentz) and other.dim == self.dim

    def __hash__(self):
        return hash(("lorentz", self.dim))

    def dual_score(self, X):
        # sup over unit (u, 1)/sqrt2 with ||u|| = 1
        return (np.linalg.norm(X[:, :-1], axis=1) + X[:, -1]) / _SQRT2

    def project_minus_k(self, x):
        return -_project_soc(-x)

    def in_dual(self, C, tol=DEFAULT_TOL):
        U = C / np.linalg.norm(C, axis=1, keepdims=True)
        return np.linalg.norm(U[:, :-1], axis=1) <= U[:, -1] + tol

    def sample_unit_dual(self, rng, n):
        out = []
        have = 0
        attempts = 0
        while have < n:
            attempts += 1
            if attempts > 10_000:
                raise ConeError("could not sample the dual unit sphere")
            Z = rng.standard_normal((max(n - have, 64) * 4, self.dim))
            Z[:, -1] = np.abs(Z[:, -1])
            Z = Z[np.linalg.norm(Z[:, :-1], axis=1) <= Z[:, -1]]
            out.append(Z)
            have += len(Z)
        Z = np.concatenate(out)[:n]
        return Z / np.linalg.norm(Z, axis=1, keepdims=True)

    def to_dict(self):
        return {"kind": "lorentz", "dim": self.dim}


def _project_soc(v):
    """Euclidean projection onto ``{(xbar, t) : ||xbar|| <= t}``."""
    xbar, t = v[:-1], v[-1]
    r = np.linalg.norm(xbar)
    if r <= t:
        return v.copy()
    if r <= -t:
        return np.zeros_like(v)
    a = 0.5 * (r + t)
    return np.concatenate([a * xbar / r, [a]])


def _facet_normals(G):
    """Extreme rays of ``{y : <g, y> >= 0}`` by brute force over (m-1)-subsets of ``G``."""
    p, m = G.shape
    if m > MAX_POLAR_DIM or p > MAX_POLAR_GENERATORS:
        raise UnsupportedError(
            f"facet enumeration limited to dim <= {MAX_POLAR_DIM} and <= {MAX_POLAR_GENERATORS} generators"
        )
    U = _unit_rows(G)
    if not _origin_far_from_hull(U):
        raise ConeError("cone is not pointed (contains a line)")
    if np.linalg.matrix_rank(U, tol=1e-10) < m:
        raise ConeError("cone is not full-dimensional; its polar is not pointed")
    if m == 1:
        return np.array([[np.sign(U[0, 0])]])
    normals = []
    for subset in itertools.combinations(range(p), m - 1):
        _, sv, Vt = np.linalg.svd(U[list(subset)])
        if sv[-1] < 1e-10:
            continue
        y = Vt[-1]
        vals = U @ y
        if np.all(vals >= -1e-10):
            normals.append(y)
        elif np.all(vals <= 1e-10):
            normals.append(-y)
    if not normals:
        raise ConeError("facet enumeration found no facets")
    return dedup_rays(np.array(normals), tol=1e-9)


def _origin_far_from_hull(U, tol=DEFAULT_TOL):
    inside, _ = hull_distance_decision(U, tol)
    return not inside


def _check_point_args(cone, x, tol=None):
    X, single = as_points(x, cone.dim)
    if tol is not None:
        check_tol(tol)
    return X, single


def contains_minus_k(cone, x, tol=DEFAULT_TOL):
    """Membership in ``-K`` through the dual inequalities.

    ``x`` is in ``-K`` when ``<x, w> <= tol ||w||`` for every extreme ray
    ``w`` of ``K+``. Accepts one point or an ``(n, m)`` array.
    """
    X, single = _check_point_args(cone, x, tol)
    out = cone.dual_score(X) <= tol
    return bool(out[0]) if single else out


def dual_score(cone, x):
    """The normalized dual score ``s(x) = max_w <x, w> / ||w||`` used by :func:`classify_dual`."""
    X, single = _check_point_args(cone, x)
    s = cone.dual_score(X)
    return float(s[0]) if single else s


def classify_dual(cone, x, tol=DEFAULT_TOL):
    """Interior / boundary / exterior of ``-K`` from the dual score.

    ``s < -tol`` is interior, ``|s| <= tol`` boundary and ``s > tol``
    exterior. For a batch the integer codes of :class:`ConeClassification`
    are returned.
    """
    X, single = _check_point_args(cone, x, tol)
    s = cone.dual_score(X)
    codes = np.where(s < -tol, -1, np.where(s > tol, 1, 0))
    return ConeClassification(int(codes[0])) if single else codes


def polar(cone):
    """Positive polar cone ``K+``.

    Polyhedral input is handled by facet enumeration; the returned cone has
    the facet normals of ``K`` as generators and the generators of ``K`` as
    dual generators. Orthant and Lorentz cones are self-dual.
    """
    if isinstance(cone, (Orthant, Lorentz)):
        return cone
    W = _facet_normals(cone.generators)
    return PolyhedralCone(W, cone.generators)


def extreme_rays(cone, tol=DEFAULT_TOL):
    """Generators of a polyhedral cone that are not in the cone of the others."""
    G = cone.generators
    U = _unit_rows(G)
    keep = []
    for i in range(len(U)):
        others = np.delete(U, i, axis=0)
        if len(others) == 0:
            keep.append(i)
            continue
        _, r = nnls(others.T, U[i])
        if r > tol:
            keep.append(i)
    return G[keep]


def is_pointed(cone, tol=DEFAULT_TOL):
    """True if ``K`` contains no line.

    A nonzero ``x`` with ``x, -x`` in ``K`` exists iff a nonnegative,
    nontrivial combination of the generators vanishes, i.e. iff the origin
    is in the convex hull of the unit generators.
    """
    if isinstance(cone, (Orthant, Lorentz)):
        return True
    return _origin_far_from_hull(_unit_rows(cone.generators), tol)


def interior_point(cone, tol=DEFAULT_TOL):
    """A point ``x`` with ``<x, w> >= ||w||`` for every dual generator, or None.

    Obtained from the min-norm point ``z`` of the hull of the unit dual
    generators: ``<z, w_hat> >= ||z||**2 - gap`` for all of them.
    """
    if isinstance(cone, Orthant):
        return np.ones(cone.dim)
    if isinstance(cone, Lorentz):
        x = np.zeros(cone.dim)
        x[-1] = _SQRT2
        return x
    U = cone._unit_dual
    inside, z = hull_distance_decision(U, tol)
    if inside:
        return None
    low = float(np.min(U @ z))
    if low <= 0:
        return None
    return z / low


def has_nonempty_interior(cone, tol=DEFAULT_TOL):
    """True if some ``x`` satisfies ``<x, w> >= 1`` for all dual generators (``K+`` pointed)."""
    return interior_point(cone, tol) is not None


def project_onto_minus_k(cone, x):
    """Euclidean projection of ``x`` onto ``-K``.

    Orthant: entrywise ``min(x, 0)``; Lorentz: closed-form second-order-cone
    projection; polyhedral: NNLS over the negated generators.
    """
    X, single = _check_point_args(cone, x)
    Y = np.array([cone.project_minus_k(row) for row in X])
    return Y[0] if single else Y
