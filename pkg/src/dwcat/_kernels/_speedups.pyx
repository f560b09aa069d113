# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: tight loops over the same tables as ``_pure``.

Outputs are bit-identical to the fallback — each scan returns
``(violations, first_flat_index)`` with the row-major first violation —
so the two backends can be swapped or diffed freely.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64

BACKEND = "compiled"


cdef inline i64 _m(i64 x, i64 M) nogil:
    x %= M
    if x < 0:
        x += M
    return x


def cocycle_defects(omega, mul, M):
    cdef i64[:, :, :] w = np.ascontiguousarray(omega, dtype=np.int64)
    cdef i64[:, :] t = np.ascontiguousarray(mul, dtype=np.int64)
    cdef i64 mod = M
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t a, b, c, d
    cdef i64 v
    cdef long long count = 0
    cdef long long first = -1
    cdef long long flat = 0
    with nogil:
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for d in range(n):
                        v = _m(
                            w[b, c, d]
                            - w[t[a, b], c, d]
                            + w[a, t[b, c], d]
                            - w[a, b, t[c, d]]
                            + w[a, b, c],
                            mod,
                        )
                        if v != 0:
                            count += 1
                            if first < 0:
                                first = flat
                        flat += 1
    return int(count), int(first)


def tau_table(omega, mul, inv, conj, M):
    cdef i64[:, :, :] w = np.ascontiguousarray(omega, dtype=np.int64)
    cdef i64[:, :] t = np.ascontiguousarray(mul, dtype=np.int64)
    cdef i64[:, :] cj = np.ascontiguousarray(conj, dtype=np.int64)
    cdef i64 mod = M
    cdef Py_ssize_t n = t.shape[0]
    out_arr = np.empty((n, n, n), dtype=np.int64)
    cdef i64[:, :, :] out = out_arr
    cdef Py_ssize_t h, k, d
    with nogil:
        for h in range(n):
            for k in range(n):
                for d in range(n):
                    out[h, k, d] = _m(
                        w[h, k, d]
                        + w[cj[t[h, k], d], h, k]
                        - w[h, cj[k, d], k],
                        mod,
                    )
    return out_arr


def gamma_table(omega, mul, inv, conj, M):
    cdef i64[:, :, :] w = np.ascontiguousarray(omega, dtype=np.int64)
    cdef i64[:, :] cj = np.ascontiguousarray(conj, dtype=np.int64)
    cdef i64 mod = M
    cdef Py_ssize_t n = cj.shape[0]
    out_arr = np.empty((n, n, n), dtype=np.int64)
    cdef i64[:, :, :] out = out_arr
    cdef Py_ssize_t h, d, f
    with nogil:
        for h in range(n):
            for d in range(n):
                for f in range(n):
                    out[h, d, f] = _m(
                        w[h, d, f]
                        + w[cj[h, d], cj[h, f], h]
                        - w[cj[h, d], h, f],
                        mod,
                    )
    return out_arr


def tau_associativity_defects(tau, gamma, omega, mul, inv, conj, M):
    cdef i64[:, :, :] tt = np.ascontiguousarray(tau, dtype=np.int64)
    cdef i64[:, :] t = np.ascontiguousarray(mul, dtype=np.int64)
    cdef i64[:, :] cj = np.ascontiguousarray(conj, dtype=np.int64)
    cdef i64 mod = M
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t g, h, k, d
    cdef i64 v
    cdef long long count = 0
    cdef long long first = -1
    cdef long long flat = 0
    with nogil:
        for g in range(n):
            for h in range(n):
                for k in range(n):
                    for d in range(n):
                        v = _m(
                            tt[h, k, d]
                            + tt[g, t[h, k], d]
                            - tt[t[g, h], k, d]
                            - tt[g, h, cj[k, d]],
                            mod,
                        )
                        if v != 0:
                            count += 1
                            if first < 0:
                                first = flat
                        flat += 1
    return int(count), int(first)


def gamma_multiplicativity_defects(tau, gamma, omega, mul, inv, conj, M):
    cdef i64[:, :, :] gm = np.ascontiguousarray(gamma, dtype=np.int64)
    cdef i64[:, :, :] w = np.ascontiguousarray(omega, dtype=np.int64)
    cdef i64[:, :] t = np.ascontiguousarray(mul, dtype=np.int64)
    cdef i64[:, :] cj = np.ascontiguousarray(conj, dtype=np.int64)
    cdef i64 mod = M
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t h, a, b, c
    cdef i64 v
    cdef long long count = 0
    cdef long long first = -1
    cdef long long flat = 0
    with nogil:
        for h in range(n):
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        v = _m(
                            gm[h, t[a, b], c]
                            + gm[h, a, b]
                            - w[cj[h, a], cj[h, b], cj[h, c]]
                            - gm[h, a, t[b, c]]
                            - gm[h, b, c]
                            + w[a, b, c],
                            mod,
                        )
                        if v != 0:
                            count += 1
                            if first < 0:
                                first = flat
                        flat += 1
    return int(count), int(first)


def gamma_tau_defects(tau, gamma, omega, mul, inv, conj, M):
    cdef i64[:, :, :] tt = np.ascontiguousarray(tau, dtype=np.int64)
    cdef i64[:, :, :] gm = np.ascontiguousarray(gamma, dtype=np.int64)
    cdef i64[:, :] t = np.ascontiguousarray(mul, dtype=np.int64)
    cdef i64[:, :] cj = np.ascontiguousarray(conj, dtype=np.int64)
    cdef i64 mod = M
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t h, k, d, g
    cdef i64 v
    cdef long long count = 0
    cdef long long first = -1
    cdef long long flat = 0
    with nogil:
        for h in range(n):
            for k in range(n):
                for d in range(n):
                    for g in range(n):
                        v = _m(
                            gm[k, d, g]
                            + gm[h, cj[k, d], cj[k, g]]
                            + tt[h, k, d]
                            + tt[h, k, g]
                            - tt[h, k, t[d, g]]
                            - gm[t[h, k], d, g],
                            mod,
                        )
                        if v != 0:
                            count += 1
                            if first < 0:
                                first = flat
                        flat += 1
    return int(count), int(first)


def braiding_compatibility_defects(tau, gamma, omega, mul, inv, conj, M):
    cdef i64[:, :, :] tt = np.ascontiguousarray(tau, dtype=np.int64)
    cdef i64[:, :, :] gm = np.ascontiguousarray(gamma, dtype=np.int64)
    cdef i64[:, :] cj = np.ascontiguousarray(conj, dtype=np.int64)
    cdef i64 mod = M
    cdef Py_ssize_t n = cj.shape[0]
    cdef Py_ssize_t k, g, h
    cdef i64 v
    cdef long long count = 0
    cdef long long first = -1
    cdef long long flat = 0
    with nogil:
        for k in range(n):
            for g in range(n):
                for h in range(n):
                    v = _m(
                        gm[k, g, h]
                        + tt[cj[k, g], k, h]
                        - gm[k, cj[g, h], g]
                        - tt[k, g, h],
                        mod,
                    )
                    if v != 0:
                        count += 1
                        if first < 0:
                            first = flat
                    flat += 1
    return int(count), int(first)


def inverse_braiding_compatibility_defects(tau, gamma, omega, mul, inv, conj, M):
    cdef i64[:, :, :] tt = np.ascontiguousarray(tau, dtype=np.int64)
    cdef i64[:, :, :] gm = np.ascontiguousarray(gamma, dtype=np.int64)
    cdef i64[:] iv = np.ascontiguousarray(inv, dtype=np.int64)
    cdef i64[:, :] cj = np.ascontiguousarray(conj, dtype=np.int64)
    cdef i64 mod = M
    cdef Py_ssize_t n = cj.shape[0]
    cdef Py_ssize_t k, g, h
    cdef i64 gi, v
    cdef long long count = 0
    cdef long long first = -1
    cdef long long flat = 0
    with nogil:
        for k in range(n):
            for g in range(n):
                gi = iv[g]
                for h in range(n):
                    v = _m(
                        gm[k, h, g]
                        - tt[cj[k, g], cj[k, gi], cj[k, h]]
                        + tt[cj[k, gi], k, h]
                        + tt[g, gi, h]
                        - gm[k, g, cj[gi, h]]
                        - tt[k, gi, h],
                        mod,
                    )
                    if v != 0:
                        count += 1
                        if first < 0:
                            first = flat
                    flat += 1
    return int(count), int(first)


def ribbon_defects(tau, gamma, omega, mul, inv, conj, M):
    cdef i64[:, :, :] tt = np.ascontiguousarray(tau, dtype=np.int64)
    cdef i64[:, :, :] gm = np.ascontiguousarray(gamma, dtype=np.int64)
    cdef i64[:, :] t = np.ascontiguousarray(mul, dtype=np.int64)
    cdef i64[:, :] cj = np.ascontiguousarray(conj, dtype=np.int64)
    cdef i64 mod = M
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t d, f
    cdef i64 v
    cdef long long count = 0
    cdef long long first = -1
    cdef long long flat = 0
    with nogil:
        for d in range(n):
            for f in range(n):
                v = _m(
                    gm[t[d, f], d, f] - tt[cj[d, f], d, d] - tt[d, f, f],
                    mod,
                )
                if v != 0:
                    count += 1
                    if first < 0:
                        first = flat
                flat += 1
    return int(count), int(first)
