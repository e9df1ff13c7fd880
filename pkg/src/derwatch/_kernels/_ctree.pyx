# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled tree traversal kernels; see _pytree.py for the packed layout."""

import numpy as np

IS_COMPILED = True


def predict_weighted_sum(const int[::1] feature, const double[::1] threshold,
                         const int[::1] left, const int[::1] right,
                         const double[::1] value, const int[::1] offsets,
                         const double[::1] weights, const double[:, ::1] X,
                         double init):
    """init + sum_t weights[t] * tree_t(x) for every row of X."""
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t n_trees = offsets.shape[0] - 1
    out_arr = np.full(n, init, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t t, i
    cdef int node, f, root
    cdef double w
    for t in range(n_trees):
        root = offsets[t]
        w = weights[t]
        for i in range(n):
            node = root
            f = feature[node]
            while f >= 0:
                if X[i, f] <= threshold[node]:
                    node = left[node]
                else:
                    node = right[node]
                f = feature[node]
            out[i] += w * value[node]
    return out_arr


def predict_matrix(const int[::1] feature, const double[::1] threshold,
                   const int[::1] left, const int[::1] right,
                   const double[::1] value, const int[::1] offsets,
                   const double[:, ::1] X):
    """(n_rows, n_trees) matrix of per-tree predictions."""
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t n_trees = offsets.shape[0] - 1
    out_arr = np.empty((n, n_trees), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t t, i
    cdef int node, f, root
    for t in range(n_trees):
        root = offsets[t]
        for i in range(n):
            node = root
            f = feature[node]
            while f >= 0:
                if X[i, f] <= threshold[node]:
                    node = left[node]
                else:
                    node = right[node]
                f = feature[node]
            out[i, t] = value[node]
    return out_arr
