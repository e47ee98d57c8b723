"""Batched subset-inequality kernels.

For a batch of integer degree vectors ``md[N, s]`` with component weights
``w[s]`` (ranks), every nonempty proper subset ``I`` is tested against

    sum_{i in I} md_i  vs  (w_I**2 - w_I) * (g - 1),   w_I = sum_{i in I} w_i

and each row gets a status code: 0 stable (all strict), 1 strictly
semistable (none fail, some tight), 2 unstable (some fail).

Two implementations: a numba ``@njit`` loop and a vectorized numpy path.
Set ``SPECTRAL_BRANES_NO_NUMBA=1`` to force numpy (also used when numba is
not importable).
"""

from __future__ import annotations

import os

import numpy as np

STABLE, SEMISTABLE, UNSTABLE = 0, 1, 2

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def _env_disabled() -> bool:
    return os.environ.get("SPECTRAL_BRANES_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")


USE_NUMBA = HAVE_NUMBA and not _env_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"


def subset_matrix(s: int) -> np.ndarray:
    """Boolean membership matrix of the nonempty proper subsets, in mask order."""
    masks = np.arange(1, (1 << s) - 1, dtype=np.int64)
    return ((masks[:, None] >> np.arange(s, dtype=np.int64)) & 1).astype(bool)


def classify_numpy(md: np.ndarray, weights: np.ndarray, g: int) -> np.ndarray:
    md = np.asarray(md, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)
    member = subset_matrix(md.shape[1]).astype(np.int64)
    lhs = md @ member.T
    w_I = member @ weights
    thr = (w_I * w_I - w_I) * (g - 1)
    failed = (lhs < thr).any(axis=1)
    tight = (lhs == thr).any(axis=1)
    return np.where(failed, UNSTABLE, np.where(tight, SEMISTABLE, STABLE)).astype(np.int8)


@njit(cache=True)
def _classify_loop(md, weights, g):
    n_rows, s = md.shape
    out = np.zeros(n_rows, dtype=np.int8)
    full = (1 << s) - 1
    for row in range(n_rows):
        status = 0
        for mask in range(1, full):
            lhs = 0
            w = 0
            for i in range(s):
                if (mask >> i) & 1:
                    lhs += md[row, i]
                    w += weights[i]
            thr = (w * w - w) * (g - 1)
            if lhs < thr:
                status = 2
                break
            if lhs == thr:
                status = 1
        out[row] = status
    return out


def classify_numba(md: np.ndarray, weights: np.ndarray, g: int) -> np.ndarray:
    md = np.ascontiguousarray(md, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.int64)
    return _classify_loop(md, weights, np.int64(g))


def classify(md, weights, g: int) -> np.ndarray:
    """Status code per row of ``md``; dispatches on the configured backend."""
    md = np.atleast_2d(np.asarray(md, dtype=np.int64))
    if md.shape[0] == 0:
        return np.zeros(0, dtype=np.int8)
    if USE_NUMBA:
        return classify_numba(md, weights, g)
    return classify_numpy(md, weights, g)
