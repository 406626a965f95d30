# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tuple enumeration kernel. Same contract as ``_pykernels``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcmp, memcpy

import numpy as np
cimport numpy as cnp

BACKEND = "cython"

ctypedef cnp.int32_t i32


cdef int _ncycles(const int* p, int d, char* seen) noexcept nogil:
    cdef int x, y, n = 0
    for x in range(d):
        seen[x] = 0
    for x in range(d):
        if not seen[x]:
            n += 1
            y = x
            while not seen[y]:
                seen[y] = 1
                y = p[y]
    return n


cdef void _cycle_type(const int* p, int d, char* seen, int* out) noexcept nogil:
    # out[L] = number of cycles of length L
    cdef int x, y, n
    for x in range(d + 1):
        out[x] = 0
    for x in range(d):
        seen[x] = 0
    for x in range(d):
        if not seen[x]:
            n = 0
            y = x
            while not seen[y]:
                seen[y] = 1
                y = p[y]
                n += 1
            out[n] += 1


cdef int _find(int* parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef bint _transitive(int** perms, int k, int d, int* parent) noexcept nogil:
    cdef int i, x, rx, ry, comps = d
    for x in range(d):
        parent[x] = x
    for i in range(k):
        for x in range(d):
            rx = _find(parent, x)
            ry = _find(parent, perms[i][x])
            if rx != ry:
                parent[rx] = ry
                comps -= 1
                if comps == 1:
                    return True
    return comps == 1


cdef int _canonical(int** perms, int k, int d, unsigned char* best, unsigned char* cur,
                    int* label, int* order) noexcept nogil:
    cdef int start, x, y, i, j, head, nxt, aut = 0, c
    cdef bint have = False
    for start in range(d):
        for x in range(d):
            label[x] = -1
        label[start] = 0
        order[0] = start
        nxt = 1
        head = 0
        while head < nxt:
            x = order[head]
            head += 1
            for i in range(k):
                y = perms[i][x]
                if label[y] < 0:
                    label[y] = nxt
                    order[nxt] = y
                    nxt += 1
        for i in range(k):
            for j in range(d):
                cur[i * d + j] = <unsigned char>label[perms[i][order[j]]]
        if not have:
            memcpy(best, cur, k * d)
            aut = 1
            have = True
        else:
            c = memcmp(cur, best, k * d)
            if c < 0:
                memcpy(best, cur, k * d)
                aut = 1
            elif c == 0:
                aut += 1
    return aut


cdef int _union_into(const int* src, int* dst, const i32* g, int d, int comps) noexcept nogil:
    cdef int x, rx, ry
    for x in range(d):
        dst[x] = src[x]
    for x in range(d):
        rx = x
        while dst[rx] != rx:
            rx = dst[rx]
        ry = g[x]
        while dst[ry] != ry:
            ry = dst[ry]
        if rx != ry:
            dst[rx] = ry
            comps -= 1
    return comps


def canonical_key(perms, int d):
    cdef int k = len(perms)
    cdef int** pp = <int**>malloc(k * sizeof(int*))
    cdef int* store = <int*>malloc(k * d * sizeof(int))
    cdef unsigned char* best = <unsigned char*>malloc(k * d)
    cdef unsigned char* cur = <unsigned char*>malloc(k * d)
    cdef int* label = <int*>malloc(d * sizeof(int))
    cdef int* order = <int*>malloc(d * sizeof(int))
    cdef int i, x, aut
    try:
        if not 1 <= d <= 255:
            raise ValueError("canonical keys need 1 <= d <= 255")
        for i in range(k):
            if len(perms[i]) != d:
                raise ValueError("permutation %d has length %d, expected %d" % (i, len(perms[i]), d))
            for x in range(d):
                store[i * d + x] = perms[i][x]
                if not 0 <= store[i * d + x] < d:
                    raise ValueError("image out of range in permutation %d" % i)
            pp[i] = store + i * d
        if not _transitive(pp, k, d, label):
            raise ValueError("canonical keys are defined for transitive tuples only")
        aut = _canonical(pp, k, d, best, cur, label, order)
        return (<bytes>best[:k * d], aut)
    finally:
        free(pp); free(store); free(best); free(cur); free(label); free(order)


def enumerate_tuples(int d, first, cands, offsets, last_type, rem, bint collect,
                     bint stop_first, long long max_nodes, long lo=0, long hi=-1, genus_cut=None):
    cdef cnp.ndarray[i32, ndim=2, mode="c"] C = np.ascontiguousarray(cands, dtype=np.int32).reshape(-1, d) \
        if len(cands) else np.zeros((0, d), dtype=np.int32)
    cdef int r = len(offsets) - 1
    cdef int k = r + 2
    cdef long long tuples = 0, transitive = 0, nodes = 0
    cdef bint exhausted = False
    cdef int j, x, aut, L
    cdef long c
    classes = {} if collect else None
    solution = None

    cdef long* off = <long*>malloc((r + 1) * sizeof(long))
    cdef long* idx = <long*>malloc((r + 1) * sizeof(long))
    cdef long* endv = <long*>malloc((r + 1) * sizeof(long))
    cdef int* remv = <int*>malloc((r + 1) * sizeof(int))
    cdef int* pre = <int*>malloc((r + 1) * d * sizeof(int))
    cdef int* inv = <int*>malloc(d * sizeof(int))
    cdef int* mids = <int*>malloc((r * d + 1) * sizeof(int))
    cdef int* want = <int*>malloc((d + 1) * sizeof(int))
    cdef int* got = <int*>malloc((d + 1) * sizeof(int))
    cdef int* parent = <int*>malloc(d * sizeof(int))
    cdef int* label = <int*>malloc(d * sizeof(int))
    cdef int* order = <int*>malloc(d * sizeof(int))
    cdef char* seen = <char*>malloc(d)
    cdef int** perms = <int**>malloc(k * sizeof(int*))
    cdef unsigned char* best = <unsigned char*>malloc(k * d)
    cdef unsigned char* cur = <unsigned char*>malloc(k * d)
    cdef const i32* g
    cdef int* P
    cdef int* Q
    cdef bint ok
    cdef bint prune_orbits = genus_cut is not None
    cdef int cut_total = 0, cut_twice_g = 0, moved
    cdef cnp.ndarray[i32, ndim=1, mode="c"] f32
    cdef int* ufp = <int*>malloc((r + 1) * d * sizeof(int))
    cdef int* comps = <int*>malloc((r + 1) * sizeof(int))
    try:
        if prune_orbits:
            cut_total, cut_twice_g = genus_cut
        for j in range(r + 1):
            off[j] = offsets[j]
            remv[j] = rem[j]
        for x in range(d + 1):
            want[x] = 0
        for L in last_type:
            want[L] += 1
        for x in range(d):
            pre[x] = first[x]
        if prune_orbits:
            first32 = np.ascontiguousarray(first, dtype=np.int32)
            f32 = first32
            for x in range(d):
                inv[x] = x
            comps[0] = _union_into(inv, ufp, &f32[0], d, d)
        if hi < 0:
            hi = (off[1] - off[0]) if r else 1

        if r == 0:
            if lo == 0 and hi > 0:
                _cycle_type(pre, d, seen, got)
                ok = True
                for x in range(d + 1):
                    if got[x] != want[x]:
                        ok = False
                        break
                if ok:
                    tuples += 1
                    perms[0] = pre
                    perms[1] = pre
                    if _transitive(perms, 2, d, parent):
                        transitive += 1
                        if collect:
                            for x in range(d):
                                inv[pre[x]] = x
                            perms[1] = inv
                            aut = _canonical(perms, 2, d, best, cur, label, order)
                            classes[<bytes>best[:2 * d]] = aut
                        if stop_first:
                            solution = []
            return tuples, transitive, classes, solution, nodes, exhausted

        j = 0
        idx[0] = off[0] + lo
        endv[0] = off[0] + hi
        while j >= 0:
            if idx[j] >= endv[j]:
                j -= 1
                if j >= 0:
                    idx[j] += 1
                continue
            nodes += 1
            if max_nodes and nodes > max_nodes:
                exhausted = True
                break
            c = idx[j]
            g = &C[c, 0]
            P = pre + j * d
            Q = pre + (j + 1) * d
            for x in range(d):
                Q[x] = P[g[x]]
            moved = d - _ncycles(Q, d, seen)
            if moved > remv[j + 1]:
                idx[j] += 1
                continue
            if prune_orbits:
                comps[j + 1] = _union_into(ufp + j * d, ufp + (j + 1) * d, g, d, comps[j])
                if (2 * (comps[j + 1] - 1) > remv[j + 1] - moved
                        or cut_total - remv[j + 1] + moved - 2 * d + 2 * comps[j + 1] > cut_twice_g):
                    idx[j] += 1
                    continue
            if j + 1 < r:
                j += 1
                idx[j] = off[j]
                endv[j] = off[j + 1]
                continue
            # leaf: Q is the full prefix product; last factor is its inverse
            _cycle_type(Q, d, seen, got)
            ok = True
            for x in range(d + 1):
                if got[x] != want[x]:
                    ok = False
                    break
            if ok:
                tuples += 1
                perms[0] = pre
                for L in range(r):
                    for x in range(d):
                        mids[L * d + x] = C[idx[L], x]
                    perms[L + 1] = mids + L * d
                for x in range(d):
                    inv[Q[x]] = x
                perms[r + 1] = inv
                ok = _transitive(perms, k, d, parent)
                if ok:
                    transitive += 1
                    if collect:
                        aut = _canonical(perms, k, d, best, cur, label, order)
                        classes[<bytes>best[:k * d]] = aut
                    if stop_first:
                        solution = [idx[x] for x in range(r)]
                        break
            idx[j] += 1
        return tuples, transitive, classes, solution, nodes, exhausted
    finally:
        free(off); free(idx); free(endv); free(remv); free(pre); free(inv); free(mids); free(want)
        free(got); free(parent); free(label); free(order); free(seen); free(perms)
        free(best); free(cur); free(ufp); free(comps)
