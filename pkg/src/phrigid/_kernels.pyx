# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np

from libc.stdint cimport int64_t, uint64_t


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def union_popcount(vmasks, uint64_t mark):
    cdef Py_ssize_t m = len(vmasks)
    cdef Py_ssize_t n = (<Py_ssize_t>1) << m
    cdef uint64_t[::1] vm = np.array([int(v) for v in vmasks] or [0], dtype=np.uint64)
    acc_arr = np.zeros(n, dtype=np.uint64)
    out_arr = np.zeros(n, dtype=np.int64)
    cdef uint64_t[::1] acc = acc_arr
    cdef int64_t[::1] out = out_arr
    cdef uint64_t a, low
    with nogil:
        for a in range(1, <uint64_t>n):
            low = a & (~a + 1)
            acc[a] = acc[a ^ low] | vm[__builtin_ctzll(a)]
            out[a] = __builtin_popcountll(acc[a] & mark)
    return out_arr


def partition_min(values, int m):
    cdef Py_ssize_t n = (<Py_ssize_t>1) << m
    cdef int64_t[::1] val = np.ascontiguousarray(values, dtype=np.int64)
    best_arr = np.zeros(n, dtype=np.int64)
    choice_arr = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] best = best_arr
    cdef int64_t[::1] choice = choice_arr
    cdef uint64_t a, low, rest, sub, blk
    cdef int64_t top, v, pick
    cdef bint first
    with nogil:
        for a in range(1, <uint64_t>n):
            low = a & (~a + 1)
            rest = a ^ low
            sub = rest
            first = True
            top = 0
            pick = 0
            while True:
                blk = sub | low
                v = val[blk] + best[a ^ blk]
                if first or v < top:
                    top = v
                    pick = <int64_t>blk
                    first = False
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            best[a] = top
            choice[a] = pick
    return best_arr, choice_arr


def superset_closure(flags, int m):
    cdef Py_ssize_t n = (<Py_ssize_t>1) << m
    out_arr = (np.asarray(flags) != 0).astype(np.int64)
    cdef int64_t[::1] out = out_arr
    cdef uint64_t a, bit
    cdef int i
    with nogil:
        for i in range(m):
            bit = (<uint64_t>1) << i
            for a in range(<uint64_t>n):
                if (a & bit) and out[a ^ bit]:
                    out[a] = 1
    return out_arr


def component_correction(int m, eu, ev, kind, cls):
    cdef Py_ssize_t n = (<Py_ssize_t>1) << m
    cdef int nv = 1 + max([int(x) for x in list(eu) + list(ev)] or [0])
    cdef int64_t[::1] u_ = np.array(list(eu) or [0], dtype=np.int64)
    cdef int64_t[::1] v_ = np.array(list(ev) or [0], dtype=np.int64)
    cdef int64_t[::1] k_ = np.array(list(kind) or [0], dtype=np.int64)
    cdef int64_t[::1] c_ = np.array([int(c) for c in cls] or [0], dtype=np.int64)
    parent_arr = np.zeros(nv, dtype=np.int64)
    bits_arr = np.zeros(nv, dtype=np.uint64)
    touched_arr = np.zeros(nv, dtype=np.int64)
    out_arr = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] parent = parent_arr
    cdef uint64_t[::1] bits = bits_arr
    cdef int64_t[::1] touched = touched_arr
    cdef int64_t[::1] out = out_arr
    cdef uint64_t a
    cdef int e, x, r, w, rw, ru, nt, t, pc
    cdef int64_t total
    with nogil:
        for a in range(1, <uint64_t>n):
            nt = 0
            for e in range(m):
                if not ((a >> e) & 1) or k_[e] == 2:
                    continue
                x = <int>u_[e]
                if parent[x] == 0:
                    parent[x] = x + 1
                    bits[x] = 0
                    touched[nt] = x
                    nt += 1
                if k_[e] == 0:
                    w = <int>v_[e]
                    if parent[w] == 0:
                        parent[w] = w + 1
                        bits[w] = 0
                        touched[nt] = w
                        nt += 1
                    ru = x
                    while parent[ru] - 1 != ru:
                        ru = <int>parent[ru] - 1
                    rw = w
                    while parent[rw] - 1 != rw:
                        rw = <int>parent[rw] - 1
                    if ru != rw:
                        if ru < rw:
                            parent[rw] = ru + 1
                        else:
                            parent[ru] = rw + 1
            for e in range(m):
                if ((a >> e) & 1) and k_[e] == 1:
                    r = <int>u_[e]
                    while parent[r] - 1 != r:
                        r = <int>parent[r] - 1
                    bits[r] |= (<uint64_t>1) << c_[<int>v_[e]]
            total = 0
            for t in range(nt):
                x = <int>touched[t]
                if parent[x] - 1 == x:
                    pc = __builtin_popcountll(bits[x])
                    if pc > 2:
                        pc = 2
                    total += 2 - pc
            for t in range(nt):
                parent[touched[t]] = 0
            out[a] = total
    return out_arr
