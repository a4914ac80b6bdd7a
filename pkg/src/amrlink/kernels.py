"""Hot numeric kernels: max-pooled cosine similarity.

Candidate ranking computes, for every candidate relation, the maximum
cosine between any question-side token vector and any label token
vector.  At KB scale (thousands of relations per triple) this pairwise
max dominates scoring time, so it ships in two interchangeable
flavours: a numba ``@njit`` kernel and a pure-numpy fallback.  Set
``AMRLINK_NO_NUMBA=1`` to force the numpy path; without numba
installed the fallback is selected automatically.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised via the env flag in tests
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


def numba_enabled() -> bool:
    return HAS_NUMBA and os.environ.get("AMRLINK_NO_NUMBA", "") not in ("1", "true", "yes")


def _normalize_rows(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat, dtype=np.float64)
    if mat.ndim != 2:
        raise ValueError("expected a 2-d matrix of row vectors")
    norms = np.linalg.norm(mat, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return mat / norms


def max_cosine_numpy(a: np.ndarray, b: np.ndarray) -> float:
    """Max over all pairwise cosines between rows of a and rows of b.

    Zero-norm rows are excluded; 0.0 when no valid pair exists.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        return 0.0
    a = a[np.linalg.norm(a, axis=1) > 0]
    b = b[np.linalg.norm(b, axis=1) > 0]
    if a.shape[0] == 0 or b.shape[0] == 0:
        return 0.0
    sims = _normalize_rows(a) @ _normalize_rows(b).T
    return float(sims.max())


@njit(cache=True)
def _max_cosine_jit(a, b):  # pragma: no cover - compiled
    best = 0.0
    found = False
    for i in range(a.shape[0]):
        na = 0.0
        for k in range(a.shape[1]):
            na += a[i, k] * a[i, k]
        if na == 0.0:
            continue
        for j in range(b.shape[0]):
            dot = 0.0
            nb = 0.0
            for k in range(a.shape[1]):
                dot += a[i, k] * b[j, k]
                nb += b[j, k] * b[j, k]
            if nb > 0.0:
                sim = dot / np.sqrt(na * nb)
                if not found or sim > best:
                    best = sim
                    found = True
    return best


def max_cosine_numba(a: np.ndarray, b: np.ndarray) -> float:
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        return 0.0
    return float(_max_cosine_jit(a, b))


def segmented_max_cosine_numpy(q: np.ndarray, flat: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Per-segment max cosine of ``q`` rows against row slices of ``flat``.

    ``offsets`` has R+1 entries; segment r is flat[offsets[r]:offsets[r+1]].
    Empty segments score 0.
    """
    out = np.zeros(len(offsets) - 1, dtype=np.float64)
    if q.shape[0] == 0 or flat.shape[0] == 0:
        return out
    sims = _normalize_rows(flat) @ _normalize_rows(q).T  # (T, m)
    col_max = sims.max(axis=1)  # (T,)
    for r in range(len(out)):
        lo, hi = offsets[r], offsets[r + 1]
        if hi > lo:
            out[r] = col_max[lo:hi].max()
    return out


@njit(cache=True)
def _segmented_max_jit(q, flat, offsets, out):  # pragma: no cover - compiled
    m, d = q.shape
    qn = np.empty((m, d))
    for i in range(m):
        norm = 0.0
        for k in range(d):
            norm += q[i, k] * q[i, k]
        norm = np.sqrt(norm)
        inv = 1.0 / norm if norm > 0.0 else 0.0
        for k in range(d):
            qn[i, k] = q[i, k] * inv
    for r in range(offsets.shape[0] - 1):
        best = 0.0
        found = False
        for j in range(offsets[r], offsets[r + 1]):
            norm = 0.0
            for k in range(d):
                norm += flat[j, k] * flat[j, k]
            norm = np.sqrt(norm)
            inv = 1.0 / norm if norm > 0.0 else 0.0
            for i in range(m):
                dot = 0.0
                for k in range(d):
                    dot += flat[j, k] * qn[i, k]
                sim = dot * inv  # zero-norm rows contribute cosine 0
                if not found or sim > best:
                    best = sim
                    found = True
        out[r] = best if found else 0.0


def segmented_max_cosine_numba(q: np.ndarray, flat: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    out = np.zeros(len(offsets) - 1, dtype=np.float64)
    if q.shape[0] == 0 or flat.shape[0] == 0:
        return out
    _segmented_max_jit(
        np.ascontiguousarray(q, dtype=np.float64),
        np.ascontiguousarray(flat, dtype=np.float64),
        np.ascontiguousarray(offsets, dtype=np.int64),
        out,
    )
    return out


def max_cosine(a: np.ndarray, b: np.ndarray) -> float:
    if numba_enabled():
        return max_cosine_numba(a, b)
    return max_cosine_numpy(a, b)


def segmented_max_cosine(q: np.ndarray, flat: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    if numba_enabled():
        return segmented_max_cosine_numba(q, flat, offsets)
    return segmented_max_cosine_numpy(q, flat, offsets)
