"""Min-norm point of a convex hull by pairwise Frank-Wolfe.

Minimizes ``0.5 * ||sum_i lam_i v_i||**2`` over the probability simplex.
The same routine answers "is the origin in conv(V)?" questions used for
pointedness, interior and redundancy tests.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import as_vector_list
from .exceptions import ConvergenceError

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SimplexWeights:
    """Weights on the simplex together with the point they produce.

    Attributes
    ----------
    lam : ndarray of shape (p,)
        Nonnegative weights summing to one.
    point : ndarray of shape (d,)
        ``lam @ V``, the (approximate) min-norm point of the hull.
    gap : float
        Frank-Wolfe duality gap ``<z, z> - min_j <z, v_j>`` at ``lam``.
    iterations : int
    """

    lam: np.ndarray
    point: np.ndarray
    gap: float
    iterations: int

    def __post_init__(self):
        self.lam.setflags(write=False)
        self.point.setflags(write=False)


def _pairwise_fw(V, gap_tol, max_iters, sep_tol=None, inside_tol=None):
    """Core loop. Returns ``(lam, gap, iters, status)``.

    ``status`` is ``"optimal"`` (gap certificate met), ``"inside"`` (the
    current point has norm <= inside_tol), ``"separated"`` (every vertex
    has ``<z, v_j> >= sep_tol * ||z||``, i.e. the origin is farther than
    ``sep_tol`` from the hull) or ``"maxiter"``.
    """
    p = V.shape[0]
    Q = V @ V.T
    scale = max(float(np.max(np.diag(Q))), 1e-300)
    # Gap values below the rounding floor of <z, v_j> are noise.
    floor = 64 * _EPS * scale
    lam = np.zeros(p)
    start = int(np.argmin(np.diag(Q)))
    lam[start] = 1.0
    grad = Q[:, start].copy()  # grad_j = <z, v_j>
    gap = np.inf
    for it in range(max_iters + 1):
        zz = float(lam @ grad)
        s = int(np.argmin(grad))
        gap = zz - float(grad[s])
        if inside_tol is not None and zz <= inside_tol**2:
            return lam, gap, it, "inside"
        if sep_tol is not None and zz > 0 and grad[s] >= sep_tol * np.sqrt(zz) and grad[s] > floor:
            return lam, gap, it, "separated"
        if gap <= max(gap_tol, floor):
            return lam, max(gap, 0.0), it, "optimal"
        if it == max_iters:
            break
        support = np.flatnonzero(lam > 0)
        a = int(support[np.argmax(grad[support])])
        if a == s:
            return lam, max(gap, 0.0), it, "optimal"
        curv = Q[s, s] + Q[a, a] - 2.0 * Q[s, a]
        if curv <= 0:
            gamma = lam[a]
        else:
            gamma = min((grad[a] - grad[s]) / curv, lam[a])
        if gamma <= 0:
            return lam, max(gap, 0.0), it, "optimal"
        lam[s] += gamma
        if gamma == lam[a]:
            lam[a] = 0.0
        else:
            lam[a] -= gamma
        lam = _affine_correction(Q, lam)
        grad = Q @ lam
    return lam, gap, max_iters, "maxiter"


def _affine_correction(Q, lam):
    """Wolfe minor cycle: move toward the min-norm point of the support's affine hull.

    Never increases the objective; when the affine minimizer has nonnegative
    weights it is taken outright, which makes the method finite on small
    problems where plain pairwise steps zig-zag.
    """
    for _ in range(len(lam)):
        S = np.flatnonzero(lam > 0)
        k = len(S)
        if k == 1:
            return lam
        kkt = np.zeros((k + 1, k + 1))
        kkt[:k, :k] = Q[np.ix_(S, S)]
        kkt[:k, k] = kkt[k, :k] = 1.0
        rhs = np.zeros(k + 1)
        rhs[k] = 1.0
        sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
        # one refinement step; the bordered Gram system is often ill-conditioned
        sol += np.linalg.lstsq(kkt, rhs - kkt @ sol, rcond=None)[0]
        mu = sol[:k]
        if not np.all(np.isfinite(mu)) or abs(mu.sum() - 1.0) > 1e-9:
            return lam
        cur = lam[S]
        if mu @ Q[np.ix_(S, S)] @ mu > cur @ Q[np.ix_(S, S)] @ cur:
            return lam
        if np.all(mu > 0):
            lam = np.zeros_like(lam)
            lam[S] = mu
            return lam
        neg = mu <= 0
        step = np.min(cur[neg] / (cur[neg] - mu[neg]))
        new = cur + step * (mu - cur)
        new[new <= 1e-15] = 0.0
        lam = np.zeros_like(lam)
        lam[S] = new / new.sum()
    return lam


def simplex_qp(vectors, gap_tol=1e-12, max_iters=10_000):
    """Minimize ``0.5 * ||sum lam_i v_i||**2`` over the simplex.

    Uses Frank-Wolfe with pairwise (toward/away) steps and exact line
    search, starting from the shortest vertex (lowest index on ties).

    Parameters
    ----------
    vectors : array_like of shape (p, d)
    gap_tol : float
        Stop once the duality gap is below this value. Gaps under the
        floating-point floor ``64 * eps * max ||v_i||**2`` count as zero.
    max_iters : int

    Returns
    -------
    SimplexWeights

    Raises
    ------
    ConvergenceError
        If ``max_iters`` is reached with the gap still above tolerance; the
        best gap is attached as ``err.best``.
    """
    V = as_vector_list(vectors)
    lam, gap, iters, status = _pairwise_fw(V, float(gap_tol), int(max_iters))
    if status == "maxiter":
        raise ConvergenceError(
            f"simplex QP did not reach gap {gap_tol:g} in {max_iters} iterations", best=gap
        )
    lam = np.maximum(lam, 0.0)
    lam /= lam.sum()
    return SimplexWeights(lam=lam, point=lam @ V, gap=float(gap), iterations=iters)


def hull_distance_decision(vectors, tol, max_iters=10_000):
    """Decide whether the origin lies within ``tol`` of ``conv(vectors)``.

    Returns ``(inside, z)`` where ``z`` is the best hull point found. The
    answer is certified in both directions except when the iteration cap
    is hit, in which case the current distance ``||z||`` decides.
    """
    V = as_vector_list(vectors)
    lam, _, _, status = _pairwise_fw(V, 0.0, max_iters, sep_tol=tol, inside_tol=tol)
    z = lam @ V
    if status == "inside":
        return True, z
    if status == "separated":
        return False, z
    return bool(np.linalg.norm(z) <= tol), z


def in_convex_hull(point, vertices, tol=1e-9):
    """True if ``point`` is within ``tol`` (relative to the data scale) of conv(vertices)."""
    V = as_vector_list(vertices)
    c = np.asarray(point, dtype=float)
    scale = max(1.0, float(np.max(np.linalg.norm(V, axis=1))), float(np.linalg.norm(c)))
    inside, _ = hull_distance_decision((V - c) / scale, tol)
    return inside
