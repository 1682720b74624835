"""NumPy fallback implementations of the hot kernels.

Same signatures as the compiled module gausslab._kernels; selected at import
time by gausslab._backend when the extension is unavailable (or forced via
GAUSSLAB_BACKEND=py).
"""

from __future__ import annotations

import numpy as np

# rows per chunk in the all-character scan; bounds peak memory at
# ~CHUNK * len(offsets) * 8 bytes
_CHUNK = 512


def char_scan_counts(trace_of_power: np.ndarray, offsets: np.ndarray, p: int) -> np.ndarray:
    """counts[i, t] = #{o in offsets : trace_of_power[(i + o) mod q1] == t}.

    Row i corresponds to the character indexed by a = g^i.  offsets must lie
    in [0, q1).
    """
    q1 = trace_of_power.shape[0]
    k = offsets.shape[0]
    counts = np.empty((q1, p), dtype=np.int64)
    for lo in range(0, q1, _CHUNK):
        hi = min(lo + _CHUNK, q1)
        idx = np.arange(lo, hi, dtype=np.int64)[:, None] + offsets[None, :]
        idx[idx >= q1] -= q1
        vals = trace_of_power[idx]
        flat = np.arange(hi - lo, dtype=np.int64)[:, None] * p + vals
        counts[lo:hi] = np.bincount(flat.ravel(), minlength=(hi - lo) * p).reshape(
            hi - lo, p
        )
    return counts


def pair_sum_hist(
    da: np.ndarray, db: np.ndarray, p: int, powp: np.ndarray, q: int
) -> np.ndarray:
    """Histogram over labels of all digitwise sums of rows of da and db."""
    labels = (((da[:, None, :] + db[None, :, :]) % p) * powp).sum(axis=-1)
    return np.bincount(labels.ravel(), minlength=q)


def pair_mul_hist(la: np.ndarray, lb: np.ndarray, exp_table: np.ndarray) -> np.ndarray:
    """Histogram over labels of all products; la, lb are discrete logs of
    nonzero elements (zero factors are accounted for by the caller)."""
    q1 = exp_table.shape[0]
    idx = (la[:, None] + lb[None, :]) % q1
    labels = exp_table[idx]
    return np.bincount(labels.ravel(), minlength=q1 + 1)
