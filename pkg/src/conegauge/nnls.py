"""Lawson-Hanson active-set nonnegative least squares."""

import numpy as np

from .exceptions import ConvergenceError


def nnls(A, b, max_iters=None, tol=None):
    """Solve ``min ||A x - b||`` subject to ``x >= 0``.

    Parameters
    ----------
    A : ndarray of shape (m, n)
    b : ndarray of shape (m,)
    max_iters : int, optional
        Cap on inner plus outer iterations; default ``100 * n``.
    tol : float, optional
        Dual feasibility tolerance on ``A.T @ (b - A x)``.

    Returns
    -------
    x : ndarray of shape (n,)
    rnorm : float

    Raises
    ------
    ConvergenceError
        When the iteration cap is exhausted.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    if max_iters is None:
        max_iters = 100 * n
    if tol is None:
        tol = 10 * np.finfo(float).eps * max(m, n) * max(1.0, np.linalg.norm(A, 2)) * max(1.0, np.linalg.norm(b))

    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    w = A.T @ b
    iters = 0
    last_entered = -1
    while True:
        cand = np.where(passive, -np.inf, w)
        j = int(np.argmax(cand))
        if cand[j] <= tol:
            break
        passive[j] = True
        while True:
            iters += 1
            if iters > max_iters:
                raise ConvergenceError(
                    f"NNLS exceeded {max_iters} iterations", best=float(np.max(np.maximum(w, 0)))
                )
            idx = np.flatnonzero(passive)
            z = np.zeros(n)
            z[idx] = np.linalg.lstsq(A[:, idx], b, rcond=None)[0]
            if np.all(z[idx] > 0):
                x = z
                break
            bad = idx[z[idx] <= 0]
            alpha = np.min(x[bad] / (x[bad] - z[bad]))
            x = x + alpha * (z - x)
            passive &= x > np.finfo(float).tiny
            x[~passive] = 0.0
            if not passive.any():
                break
        w = A.T @ (b - A @ x)
        # Stagnation: the column just entered was immediately dropped again.
        if not passive[j] and j == last_entered:
            w[j] = 0.0
            break
        last_entered = j
    return x, float(np.linalg.norm(A @ x - b))
