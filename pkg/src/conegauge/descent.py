"""K-steepest descent for ``min_K F(x)`` over R^n.

At ``x`` the direction solves ``min_d max_{c in C} <c, J d> + 0.5 ||d||^2``;
its dual is the min-norm point of ``conv{J^T c_i}``, so ``d = -sum lam_i J^T c_i``
and the optimal value is ``theta = -0.5 ||d||^2``. Steps are accepted by an
Armijo rule in the K-order.
"""

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ._validation import as_vector
from .exceptions import DimensionError
from .simplex import SimplexWeights, simplex_qp


class Termination(str, enum.Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    LINE_SEARCH_FAILED = "line_search_failed"


@dataclass
class VectorObjective:
    """Smooth ``F: R^n -> R^m`` with optional Jacobian.

    Without ``jac`` the Jacobian is formed by forward differences with step
    ``1e-7 * (1 + ||x||_inf)``.
    """

    n: int
    m: int
    fun: Callable[[np.ndarray], np.ndarray]
    jac: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __call__(self, x):
        F = np.atleast_1d(np.asarray(self.fun(x), dtype=float))
        if F.shape != (self.m,):
            raise DimensionError(f"objective returned shape {F.shape}, expected ({self.m},)")
        return F

    def jacobian(self, x):
        x = np.asarray(x, dtype=float)
        if self.jac is not None:
            J = np.asarray(self.jac(x), dtype=float).reshape(self.m, self.n)
        else:
            J = finite_difference_jacobian(self, x)
        return J


def finite_difference_jacobian(obj, x, F0=None):
    x = np.asarray(x, dtype=float)
    h = 1e-7 * (1.0 + np.max(np.abs(x)))
    F0 = obj(x) if F0 is None else F0
    J = np.empty((obj.m, obj.n))
    for j in range(obj.n):
        xp = x.copy()
        xp[j] += h
        J[:, j] = (obj(xp) - F0) / h
    return J


def check_jacobian(obj, n_probes=100, seed=42, rtol=1e-4):
    """Largest relative mismatch between the supplied Jacobian and finite differences.

    Returns ``(ok, worst)`` where the mismatch of a probe is
    ``||J - J_fd|| / max(1, ||J||)``.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_probes):
        x = rng.standard_normal(obj.n)
        J = obj.jacobian(x)
        J_fd = finite_difference_jacobian(obj, x)
        worst = max(worst, float(np.linalg.norm(J - J_fd) / max(1.0, np.linalg.norm(J))))
    return worst <= rtol, worst


@dataclass(frozen=True)
class DescentConfig:
    beta: float = 0.1
    shrink: float = 0.5
    t0: float = 1.0
    theta_tol: float = 1e-8
    max_iters: int = 500
    max_backtracks: int = 60

    def __post_init__(self):
        if not 0 < self.beta < 1:
            raise ValueError("beta must be in (0, 1)")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must be in (0, 1)")
        if not self.t0 > 0:
            raise ValueError("t0 must be positive")
        if not self.theta_tol >= 0:
            raise ValueError("theta_tol must be nonnegative")
        if self.max_iters < 0 or self.max_backtracks < 0:
            raise ValueError("iteration caps must be nonnegative")


@dataclass
class DescentTrace:
    iterates: list = field(default_factory=list)
    objective_values: list = field(default_factory=list)
    theta_values: list = field(default_factory=list)
    step_sizes: list = field(default_factory=list)
    termination: Optional[Termination] = None

    @property
    def n_iters(self):
        return len(self.step_sizes)

    def to_dict(self):
        return {
            "iterates": [np.asarray(x).tolist() for x in self.iterates],
            "objective_values": [np.asarray(f).tolist() for f in self.objective_values],
            "theta": [float(t) for t in self.theta_values],
            "steps": [float(t) for t in self.step_sizes],
            "termination": self.termination.value if self.termination else None,
        }


def steepest_descent_direction(J, g):
    """Direction, criticality value and simplex weights at a point with Jacobian ``J``.

    Returns ``(d, theta, weights)`` with ``d = -sum lam_i J^T c_i`` and
    ``theta = -0.5 ||d||^2 <= 0``; ``theta == 0`` means K-critical.
    """
    J = np.atleast_2d(np.asarray(J, dtype=float))
    if J.shape[0] != g.cone.dim:
        raise DimensionError(f"Jacobian has {J.shape[0]} rows, cone dimension is {g.cone.dim}")
    Q = g.dual_set @ J  # rows q_i = J^T c_i
    weights = simplex_qp(Q)
    d = -np.asarray(weights.point)
    theta = -0.5 * float(d @ d) + 0.0  # no negative zero
    return d, theta, weights


def armijo_linesearch(obj, x, d, J, g, cfg=DescentConfig(), F0=None):
    """Backtracking in the K-order.

    Accepts the first ``t = t0 * shrink**k`` (``k = 0..max_backtracks``) with
    ``max_c <c, F(x + t d) - F(x) - beta t J d> <= 0``. Returns
    ``(t, accepted)``; on failure ``t`` is the last trial.
    """
    d = np.asarray(d, dtype=float)
    if not np.any(d):
        raise ValueError("line search needs a descent direction (theta < 0), got d = 0")
    x = np.asarray(x, dtype=float)
    F0 = obj(x) if F0 is None else F0
    Jd = np.atleast_2d(J) @ d
    C = g.dual_set
    t = cfg.t0
    for k in range(cfg.max_backtracks + 1):
        if k:
            t *= cfg.shrink
        lhs = obj(x + t * d) - F0 - cfg.beta * t * Jd
        if np.max(C @ lhs) <= 0:
            return t, True
    return t, False


def solve(obj, g, x0, cfg=DescentConfig()):
    """Run K-steepest descent from ``x0``.

    Stops when ``|theta| <= theta_tol`` (converged), after ``max_iters``
    steps, or when the line search fails, which leaves the last iterate in
    place so every recorded step is K-decreasing.

    Raises
    ------
    FloatingPointError
        If ``F`` or its Jacobian is not finite at an iterate.
    """
    if g.cone.dim != obj.m:
        raise DimensionError(f"cone dimension {g.cone.dim} != objective range {obj.m}")
    x = as_vector(x0, obj.n, name="x0").copy()
    trace = DescentTrace()
    F = _finite(obj(x), x)
    trace.iterates.append(x.copy())
    trace.objective_values.append(F)
    while True:
        J = _finite(obj.jacobian(x), x)
        d, theta, _ = steepest_descent_direction(J, g)
        trace.theta_values.append(theta)
        if abs(theta) <= cfg.theta_tol:
            trace.termination = Termination.CONVERGED
            break
        if trace.n_iters >= cfg.max_iters:
            trace.termination = Termination.MAX_ITERS
            break
        t, ok = armijo_linesearch(obj, x, d, J, g, cfg, F0=F)
        if not ok:
            trace.termination = Termination.LINE_SEARCH_FAILED
            break
        x = x + t * d
        F = _finite(obj(x), x)
        trace.iterates.append(x.copy())
        trace.objective_values.append(F)
        trace.step_sizes.append(t)
    return trace


def _finite(v, x):
    if not np.all(np.isfinite(v)):
        raise FloatingPointError(f"non-finite objective data at x = {np.asarray(x).tolist()}")
    return v


__all__ = [
    "DescentConfig",
    "DescentTrace",
    "SimplexWeights",
    "Termination",
    "VectorObjective",
    "armijo_linesearch",
    "check_jacobian",
    "simplex_qp",
    "solve",
    "steepest_descent_direction",
]
