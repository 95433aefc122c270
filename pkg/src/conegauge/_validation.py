"""Input checking shared by the public functions."""

import numpy as np

from .exceptions import DimensionError


def as_points(x, dim=None, name="x"):
    """Return ``(X, single)`` with ``X`` a 2-D float array of points.

    A 1-D input is treated as one point and ``single`` is True so callers can
    squeeze their result back.
    """
    X = np.asarray(x, dtype=float)
    single = X.ndim == 1
    if single:
        X = X[None, :]
    if X.ndim != 2:
        raise DimensionError(f"{name} must be a vector or a 2-D array of points, got shape {X.shape}")
    if X.shape[1] == 0:
        raise DimensionError(f"{name} must have positive dimension")
    if dim is not None and X.shape[1] != dim:
        raise DimensionError(f"{name} has dimension {X.shape[1]}, expected {dim}")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains NaN or inf")
    return X, single


def as_vector(x, dim=None, name="x"):
    X, single = as_points(x, dim, name)
    if not single:
        raise DimensionError(f"{name} must be a single vector, got shape {X.shape}")
    return X[0]


def as_vector_list(vectors, dim=None, name="vectors"):
    """Nonempty list of vectors -> 2-D array, one vector per row."""
    V = np.asarray(vectors, dtype=float)
    if V.ndim == 1:
        V = V[:, None] if dim == 1 else V[None, :]
    if V.ndim != 2 or V.shape[0] == 0:
        raise DimensionError(f"{name} must be a nonempty list of vectors")
    if dim is not None and V.shape[1] != dim:
        raise DimensionError(f"{name} have dimension {V.shape[1]}, expected {dim}")
    if not np.all(np.isfinite(V)):
        raise ValueError(f"{name} contain NaN or inf")
    return V


def check_tol(tol, name="tol"):
    tol = float(tol)
    if not tol >= 0:
        raise ValueError(f"{name} must be nonnegative, got {tol}")
    return tol
