# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: all-character histogram scans and pairwise
sum/product histograms.  Mirrors gausslab._kernels_py."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def char_scan_counts(cnp.int64_t[::1] trace_of_power, cnp.int64_t[::1] offsets, int p):
    cdef Py_ssize_t q1 = trace_of_power.shape[0]
    cdef Py_ssize_t k = offsets.shape[0]
    out = np.zeros((q1, p), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] counts = out
    cdef Py_ssize_t i, j
    cdef cnp.int64_t idx
    for i in range(q1):
        for j in range(k):
            idx = i + offsets[j]
            if idx >= q1:
                idx -= q1
            counts[i, trace_of_power[idx]] += 1
    return out


def pair_sum_hist(cnp.int64_t[:, ::1] da, cnp.int64_t[:, ::1] db, int p,
                  cnp.int64_t[::1] powp, cnp.int64_t q):
    cdef Py_ssize_t na = da.shape[0]
    cdef Py_ssize_t nb = db.shape[0]
    cdef Py_ssize_t m = da.shape[1]
    out = np.zeros(q, dtype=np.int64)
    cdef cnp.int64_t[::1] hist = out
    cdef Py_ssize_t i, j, d
    cdef cnp.int64_t lab, s
    for i in range(na):
        for j in range(nb):
            lab = 0
            for d in range(m):
                s = da[i, d] + db[j, d]
                if s >= p:
                    s -= p
                lab += s * powp[d]
            hist[lab] += 1
    return out


def pair_mul_hist(cnp.int64_t[::1] la, cnp.int64_t[::1] lb,
                  cnp.int64_t[::1] exp_table):
    cdef Py_ssize_t na = la.shape[0]
    cdef Py_ssize_t nb = lb.shape[0]
    cdef Py_ssize_t q1 = exp_table.shape[0]
    out = np.zeros(q1 + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] hist = out
    cdef Py_ssize_t i, j
    cdef cnp.int64_t idx
    for i in range(na):
        for j in range(nb):
            idx = la[i] + lb[j]
            if idx >= q1:
                idx -= q1
            hist[exp_table[idx]] += 1
    return out
