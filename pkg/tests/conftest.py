import numpy as np
import pytest
from scipy.optimize import linprog

from conegauge import PolyhedralCone

ACCEPTANCE_RESULTS = []


def random_cone(rng, dim, n_extra=0):
    """Random pointed full-dimensional polyhedral cone in R^2 or R^3.

    ``n_extra`` additional generators are positive combinations of the
    others, so they are not extreme rays.
    """
    if dim == 2:
        a = rng.uniform(0, 2 * np.pi)
        width = rng.uniform(0.2, np.pi - 0.2)
        angles = [a, a + width]
        G = np.array([[np.cos(t), np.sin(t)] for t in angles]) * rng.uniform(0.5, 3.0, size=(2, 1))
    else:
        axis = rng.standard_normal(dim)
        axis /= np.linalg.norm(axis)
        k = int(rng.integers(3, 7))
        G = []
        for i in range(k):
            v = rng.standard_normal(dim)
            v -= (v @ axis) * axis
            v /= np.linalg.norm(v)
            # spread the rays around the axis so none is far inside
            G.append(axis + rng.uniform(0.4, 1.5) * v)
        G = np.array(G) * rng.uniform(0.5, 3.0, size=(k, 1))
    extras = []
    for _ in range(n_extra):
        w = rng.exponential(size=len(G))
        extras.append(w @ G)
    if extras:
        G = np.vstack([G, extras])
        G = G[rng.permutation(len(G))]
    return PolyhedralCone(G)


def extreme_rays_oracle(G):
    """Generators not in the conic hull of the others (LP feasibility)."""
    G = np.asarray(G, float)
    U = G / np.linalg.norm(G, axis=1, keepdims=True)
    keep = []
    for i in range(len(U)):
        others = np.delete(U, i, axis=0)
        if len(others) == 0:
            keep.append(i)
            continue
        res = linprog(
            np.zeros(len(others)), A_eq=others.T, b_eq=U[i], bounds=[(0, None)] * len(others), method="highs"
        )
        if res.status != 0:
            keep.append(i)
    return G[keep]


def origin_in_hull_lp(V):
    """LP feasibility: exists lam >= 0, sum lam = 1, V^T lam = 0."""
    V = np.asarray(V, float)
    p, d = V.shape
    A_eq = np.vstack([V.T, np.ones((1, p))])
    b_eq = np.r_[np.zeros(d), 1.0]
    res = linprog(np.zeros(p), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * p, method="highs")
    return res.status == 0


def interior_lp(W):
    """LP feasibility: exists x with <x, w> >= 1 for every row w."""
    W = np.asarray(W, float)
    res = linprog(np.zeros(W.shape[1]), A_ub=-W, b_ub=-np.ones(len(W)), bounds=[(None, None)] * W.shape[1], method="highs")
    return res.status == 0


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
