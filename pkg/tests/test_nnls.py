import numpy as np
import pytest
import itertools

from conegauge import ConvergenceError
from conegauge.nnls import nnls


def nnls_by_enumeration(A, b):
    """Best residual over all supports with a nonnegative least-squares solution."""
    best = np.linalg.norm(b)
    for k in range(1, A.shape[1] + 1):
        for S in itertools.combinations(range(A.shape[1]), k):
            z = np.linalg.lstsq(A[:, S], b, rcond=None)[0]
            if np.all(z >= 0):
                best = min(best, np.linalg.norm(A[:, S] @ z - b))
    return best


@pytest.mark.parametrize("seed", range(30))
def test_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(2, 6), rng.integers(1, 9)
    A = rng.standard_normal((m, n))
    b = rng.standard_normal(m)
    x, r = nnls(A, b)
    r_ref = nnls_by_enumeration(A, b)
    assert np.all(x >= 0)
    assert r == pytest.approx(r_ref, abs=1e-10)
    # KKT: gradient nonpositive on free coordinates, zero on the support
    w = A.T @ (b - A @ x)
    assert np.all(w <= 1e-10)
    assert np.all(np.abs(w[x > 0]) <= 1e-10)


def test_iteration_cap():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((6, 12))
    b = rng.standard_normal(6)
    with pytest.raises(ConvergenceError):
        nnls(A, b, max_iters=1)
