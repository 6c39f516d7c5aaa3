"""Hausdorff distance between finite point sets.

The distance matrix ``D(i, j) = ||S1[i] - S2[j]||_p`` is built in row blocks,
then ``d_H = max(max_i min_j D, max_j min_i D)``. Coordinates are accumulated
one at a time in index order, so each entry is computed by exactly the same
floating-point operations as a scalar double loop would use.
"""
import math

import numpy as np

from ._validation import check_points
from .exceptions import DimensionError, DomainError

_BLOCK_ENTRIES = 1 << 20


def norm_order(p):
    """Normalise a norm order: 1, 2, inf or any real p >= 1."""
    if isinstance(p, str):
        if p.lower() in ("inf", "infinity", "max"):
            return math.inf
        p = float(p)
    p = float(p)
    if not p >= 1:
        raise DomainError(f"norm order must be >= 1, got {p}")
    return p


def _as_points(S, name):
    return check_points(getattr(S, "points", S), name=name)


def _pair(S1, S2):
    P = _as_points(S1, "S1")
    Q = _as_points(S2, "S2")
    if P.shape[1] != Q.shape[1]:
        raise DimensionError(f"point sets live in different dimensions: {P.shape[1]} vs {Q.shape[1]}")
    return P, Q


def _distance_block(P, Q, p):
    acc = None
    for c in range(P.shape[1]):
        diff = np.abs(P[:, c, None] - Q[None, :, c])
        if p == math.inf:
            acc = diff if acc is None else np.maximum(acc, diff)
            continue
        term = diff if p == 1 else diff * diff if p == 2 else diff**p
        acc = term if acc is None else acc + term
    if p == 2:
        return np.sqrt(acc)
    if p in (1, math.inf):
        return acc
    return acc ** (1.0 / p)


def _row_blocks(P, Q):
    step = max(1, _BLOCK_ENTRIES // max(1, Q.shape[0]))
    for start in range(0, P.shape[0], step):
        yield P[start : start + step]


def pairwise_distances(S1, S2, p=2):
    """Full distance matrix between two point sets (rows of S1, columns of S2)."""
    P, Q = _pair(S1, S2)
    p = norm_order(p)
    return np.vstack([_distance_block(rows, Q, p) for rows in _row_blocks(P, Q)])


def _directed_pair(P, Q, p):
    forward = -np.inf
    backward = np.full(Q.shape[0], np.inf)
    for rows in _row_blocks(P, Q):
        D = _distance_block(rows, Q, p)
        forward = max(forward, float(D.min(axis=1).max()))
        np.minimum(backward, D.min(axis=0), out=backward)
    return forward, float(backward.max())


def directed_distance(S1, S2, p=2):
    """``max_{x in S1} min_{y in S2} ||x - y||_p``; zero when S1 is a subset of S2."""
    P, Q = _pair(S1, S2)
    p = norm_order(p)
    forward = -np.inf
    for rows in _row_blocks(P, Q):
        forward = max(forward, float(_distance_block(rows, Q, p).min(axis=1).max()))
    return forward


def hausdorff_distance(S1, S2, p=2):
    """Symmetric Hausdorff distance between two finite point sets."""
    P, Q = _pair(S1, S2)
    return max(_directed_pair(P, Q, norm_order(p)))


def diameter(S, p=2):
    """Largest pairwise distance within one point set; 0 for a singleton."""
    P = _as_points(S, "S")
    p = norm_order(p)
    return max(float(_distance_block(rows, P, p).max()) for rows in _row_blocks(P, P))
