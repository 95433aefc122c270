"""Built-in vector objectives addressable by name from problem files."""

import numpy as np

from .descent import VectorObjective


def biobjective_quadratic(n=1):
    """``F(x) = (x^2, (x - 1)^2)`` on R; Pareto-critical set is ``[0, 1]``."""
    if n != 1:
        raise ValueError("biobjective-quadratic is defined on R (n = 1)")
    return VectorObjective(
        n=1,
        m=2,
        fun=lambda x: np.array([x[0] ** 2, (x[0] - 1.0) ** 2]),
        jac=lambda x: np.array([[2.0 * x[0]], [2.0 * (x[0] - 1.0)]]),
    )


def scalar_quadratic(n=2):
    """``F(x) = ||x||^2`` with m = 1."""
    return VectorObjective(n=n, m=1, fun=lambda x: np.array([x @ x]), jac=lambda x: 2.0 * x[None, :])


def jos1(n=2):
    """``F(x) = (||x||^2 / n, ||x - 2||^2 / n)``."""
    return VectorObjective(
        n=n,
        m=2,
        fun=lambda x: np.array([x @ x, (x - 2.0) @ (x - 2.0)]) / n,
        jac=lambda x: np.vstack([2.0 * x, 2.0 * (x - 2.0)]) / n,
    )


PROBLEMS = {
    "biobjective-quadratic": biobjective_quadratic,
    "scalar-quadratic": scalar_quadratic,
    "jos1": jos1,
}


def get_problem(name, n):
    try:
        factory = PROBLEMS[name]
    except KeyError:
        raise KeyError(f"unknown problem {name!r}; known: {', '.join(sorted(PROBLEMS))}") from None
    return factory(n)
