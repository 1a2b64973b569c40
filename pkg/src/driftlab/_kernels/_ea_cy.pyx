# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the (1+1) EA inner loop.

Mirrors ``_ea_py`` operation for operation and consumes the PCG64 stream
in exactly the same order, so both backends produce identical runs for
the same seed.
"""

import numpy as np

from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.stdint cimport int64_t
from numpy.random cimport bitgen_t


cdef inline double _potential_sum(unsigned char *bits, const double *pot_w, Py_ssize_t n) nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        if bits[i]:
            s += pot_w[i]
    return s


cdef bitgen_t *_get_bitgen(object rng):
    capsule = rng.bit_generator.capsule
    return <bitgen_t *> PyCapsule_GetPointer(capsule, "BitGenerator")


def run_linear(
    const double[::1] weights,
    unsigned char[::1] x,
    const double[::1] flip_cdf,
    long max_iters,
    bint stop_at_zero,
    object rng,
    pot_weights=None,
    long record_stride=0,
    bint collect_level_stats=False,
):
    """See ``_ea_py.run_linear``; identical contract and stream usage."""
    cdef Py_ssize_t n = weights.shape[0]
    cdef bitgen_t *bg = _get_bitgen(rng)

    cdef bint record = record_stride > 0
    cdef const double[::1] pw_view
    cdef const double *pw = NULL
    trace = None
    cdef double[::1] trace_view
    cdef double *trace_buf = NULL
    cdef Py_ssize_t trace_len = 0
    if record:
        pw_view = np.ascontiguousarray(pot_weights, dtype=np.float64)
        pw = &pw_view[0]
        trace = np.empty(2 + max_iters // record_stride, dtype=np.float64)
        trace_view = trace
        trace_buf = &trace_view[0]

    cdef int64_t[::1] counts_v, dsum_v, dsq_v
    cdef int64_t *counts = NULL
    cdef int64_t *dsum = NULL
    cdef int64_t *dsq = NULL
    stats = None
    if collect_level_stats:
        stats_counts = np.zeros(n + 1, dtype=np.int64)
        stats_dsum = np.zeros(n + 1, dtype=np.int64)
        stats_dsq = np.zeros(n + 1, dtype=np.int64)
        counts_v = stats_counts
        dsum_v = stats_dsum
        dsq_v = stats_dsq
        counts = &counts_v[0]
        dsum = &dsum_v[0]
        dsq = &dsq_v[0]
        stats = (stats_counts, stats_dsum, stats_dsq)

    idx_arr = np.arange(n, dtype=np.int64)
    js_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] idx = idx_arr
    cdef int64_t[::1] js = js_arr

    cdef unsigned char *bits = &x[0]
    cdef const double *w = &weights[0]
    cdef const double *cdf = &flip_cdf[0]

    cdef long ones = 0
    cdef Py_ssize_t i
    for i in range(n):
        if bits[i]:
            ones += 1

    if record:
        trace_buf[trace_len] = _potential_sum(bits, pw, n)
        trace_len += 1

    cdef long t = 0
    cdef bint capped = False
    cdef bint finished = stop_at_zero and ones == 0
    cdef double u, r, df
    cdef long k, dones, ones_pre, d
    cdef Py_ssize_t j, p, tmp

    with rng.bit_generator.lock:
        while not finished and t < max_iters:
            t += 1
            ones_pre = ones
            u = bg.next_double(bg.state)
            k = 0
            while u >= cdf[k]:
                k += 1
            if k:
                for i in range(k):
                    r = bg.next_double(bg.state)
                    j = i + <Py_ssize_t>(r * (n - i))
                    if j >= n:
                        j = n - 1
                    js[i] = j
                    tmp = idx[i]
                    idx[i] = idx[j]
                    idx[j] = tmp
                df = 0.0
                dones = 0
                for i in range(k):
                    p = idx[i]
                    if bits[p]:
                        df -= w[p]
                        dones -= 1
                    else:
                        df += w[p]
                        dones += 1
                if df <= 0.0:
                    for i in range(k):
                        bits[idx[i]] ^= 1
                    ones += dones
                for i in range(k - 1, -1, -1):
                    j = js[i]
                    tmp = idx[i]
                    idx[i] = idx[j]
                    idx[j] = tmp
            if collect_level_stats:
                d = ones_pre - ones
                counts[ones_pre] += 1
                dsum[ones_pre] += d
                dsq[ones_pre] += d * d
            if record and t % record_stride == 0:
                trace_buf[trace_len] = _potential_sum(bits, pw, n)
                trace_len += 1
            if stop_at_zero and ones == 0:
                finished = True

    if stop_at_zero and not finished:
        capped = True
        t = max_iters

    if record and t % record_stride != 0:
        trace_buf[trace_len] = _potential_sum(bits, pw, n)
        trace_len += 1

    trace_out = trace[:trace_len].copy() if record else None
    return t, capped, trace_out, stats


def mutation_stats(Py_ssize_t n, long n_samples, const double[::1] flip_cdf, object rng):
    """See ``_ea_py.mutation_stats``; identical contract and stream usage."""
    cdef bitgen_t *bg = _get_bitgen(rng)
    hist_arr = np.zeros(n + 1, dtype=np.int64)
    pos_arr = np.zeros(n, dtype=np.int64)
    idx_arr = np.arange(n, dtype=np.int64)
    js_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] hist = hist_arr
    cdef int64_t[::1] pos = pos_arr
    cdef int64_t[::1] idx = idx_arr
    cdef int64_t[::1] js = js_arr
    cdef const double *cdf = &flip_cdf[0]

    cdef double u, r
    cdef long k, s
    cdef Py_ssize_t i, j, tmp

    with rng.bit_generator.lock:
        for s in range(n_samples):
            u = bg.next_double(bg.state)
            k = 0
            while u >= cdf[k]:
                k += 1
            hist[k] += 1
            if k:
                for i in range(k):
                    r = bg.next_double(bg.state)
                    j = i + <Py_ssize_t>(r * (n - i))
                    if j >= n:
                        j = n - 1
                    js[i] = j
                    tmp = idx[i]
                    idx[i] = idx[j]
                    idx[j] = tmp
                    pos[idx[i]] += 1
                for i in range(k - 1, -1, -1):
                    j = js[i]
                    tmp = idx[i]
                    idx[i] = idx[j]
                    idx[j] = tmp
    return hist_arr, pos_arr
