"""Input validation helpers.

These mirror the spirit of ``sklearn.utils.validation`` but raise the
package's own exception types, so callers can tell a shape problem from a
NaN problem.
"""
import numpy as np

from .exceptions import DimensionError, DomainError


def check_matrix(B, *, square=False, name="matrix"):
    """Return ``B`` as a finite 2-D float array."""
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[0] == 0 or B.shape[1] == 0:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {B.shape}")
    if square and B.shape[0] != B.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {B.shape}")
    if not np.all(np.isfinite(B)):
        raise DomainError(f"{name} contains non-finite entries")
    return B


def check_vector(v, size=None, *, name="vector"):
    v = np.asarray(v, dtype=float)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1:
        raise DimensionError(f"{name} must be 1-D, got shape {v.shape}")
    if size is not None and v.shape[0] != size:
        raise DimensionError(f"{name} must have length {size}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise DomainError(f"{name} contains non-finite entries")
    return v


def check_points(P, dim=None, *, name="points"):
    """Return ``P`` as a finite (count, dim) array with at least one row."""
    P = np.asarray(P, dtype=float)
    if P.ndim == 1:
        P = P.reshape(-1, 1) if dim in (None, 1) else P.reshape(1, -1)
    if P.ndim != 2:
        raise DimensionError(f"{name} must be 2-D (count, dim), got shape {P.shape}")
    if P.shape[0] == 0:
        raise DomainError(f"{name} must contain at least one point")
    if dim is not None and P.shape[1] != dim:
        raise DimensionError(f"{name} must have dimension {dim}, got {P.shape[1]}")
    if not np.all(np.isfinite(P)):
        raise DomainError(f"{name} contains non-finite entries")
    return P
