# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; results match ``antiramsey._pykernels`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free, qsort

cnp.import_array()

ctypedef cnp.int64_t i64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef class _Csr:
    cdef i64[::1] indptr
    cdef i64[::1] indices
    cdef Py_ssize_t n

    def __init__(self, indptr, indices, Py_ssize_t n):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.n = n


cdef void _cycles_from(_Csr g, Py_ssize_t s, Py_ssize_t ell, i64* path, char* on_path,
                       char* adj_s, Py_ssize_t depth, list out):
    cdef i64 last = path[depth - 1]
    cdef i64 k, w
    if depth == ell:
        if adj_s[last] and path[1] < last:
            out.append(tuple([path[i] for i in range(ell)]))
        return
    for k in range(g.indptr[last], g.indptr[last + 1]):
        w = g.indices[k]
        if w <= s or on_path[w]:
            continue
        if depth == ell - 1 and w < path[1]:
            continue
        on_path[w] = 1
        path[depth] = w
        _cycles_from(g, s, ell, path, on_path, adj_s, depth + 1, out)
        on_path[w] = 0


def fixed_length_cycles(indptr, indices, Py_ssize_t n, Py_ssize_t ell):
    cdef _Csr g = _Csr(indptr, indices, n)
    cdef list out = []
    if n == 0:
        return out
    cdef i64* path = <i64*> malloc(ell * sizeof(i64))
    cdef char* on_path = <char*> malloc(n)
    cdef char* adj_s = <char*> malloc(n)
    cdef Py_ssize_t s, i
    cdef i64 k
    try:
        for i in range(n):
            on_path[i] = 0
            adj_s[i] = 0
        for s in range(n):
            if g.indptr[s + 1] - g.indptr[s] < 2:
                continue
            for k in range(g.indptr[s], g.indptr[s + 1]):
                adj_s[g.indices[k]] = 1
            path[0] = s
            on_path[s] = 1
            _cycles_from(g, s, ell, path, on_path, adj_s, 1, out)
            on_path[s] = 0
            for k in range(g.indptr[s], g.indptr[s + 1]):
                adj_s[g.indices[k]] = 0
    finally:
        free(path)
        free(on_path)
        free(adj_s)
    return out


def subset_edge_counts(Py_ssize_t n, nbr_masks):
    cdef cnp.ndarray[i64, ndim=1] counts = np.zeros(1 << n, dtype=np.int64)
    cdef unsigned long long[::1] masks = np.ascontiguousarray(
        [int(x) for x in nbr_masks], dtype=np.uint64)
    cdef Py_ssize_t b
    cdef unsigned long long lo, m
    for b in range(n):
        lo = 1ULL << b
        for m in range(lo):
            counts[lo + m] = counts[m] + __builtin_popcountll(m & masks[b])
    return counts


# -- bounded dense subgraph search -------------------------------------------

cdef struct _Search:
    Py_ssize_t n
    i64* indptr
    i64* indices
    char* allowed
    int* in_s
    int* excl
    i64* s_list
    Py_ssize_t size
    i64 num
    i64 den
    Py_ssize_t kmax
    i64 root


cdef inline i64 _fval(_Search* st, i64 edges, i64 size):
    return st.den * edges - st.num * size


cdef int _cmp_desc(const void* a, const void* b) noexcept nogil:
    cdef int x = (<int*> a)[0]
    cdef int y = (<int*> b)[0]
    return y - x


cdef bint _bound_ok(_Search* st, i64 edges, i64* ext, Py_ssize_t next_):
    cdef Py_ssize_t room = st.kmax - st.size
    cdef Py_ssize_t r, i
    cdef i64 gain = 0
    cdef int* degs
    if _fval(st, edges, st.size) >= 0:
        return True
    degs = <int*> malloc((next_ + 1) * sizeof(int))
    for i in range(next_):
        degs[i] = st.in_s[ext[i]]
    qsort(degs, next_, sizeof(int), _cmp_desc)
    for r in range(1, room + 1):
        if r - 1 < next_:
            gain += degs[r - 1]
        if _fval(st, edges + gain + r * (r - 1) // 2, st.size + r) >= 0:
            free(degs)
            return True
    free(degs)
    return False


cdef i64 _add(_Search* st, i64 v):
    cdef i64 k, w
    cdef i64 gained = st.in_s[v]
    st.s_list[st.size] = v
    st.size += 1
    for k in range(st.indptr[v], st.indptr[v + 1]):
        w = st.indices[k]
        if st.allowed[w]:
            st.in_s[w] += 1
            st.excl[w] += 1
    st.excl[v] += 1
    return gained


cdef void _remove(_Search* st, i64 v):
    cdef i64 k, w
    st.size -= 1
    for k in range(st.indptr[v], st.indptr[v + 1]):
        w = st.indices[k]
        if st.allowed[w]:
            st.in_s[w] -= 1
            st.excl[w] -= 1
    st.excl[v] -= 1


cdef bint _extend(_Search* st, i64* ext, Py_ssize_t next_, i64 edges):
    """Mirror of the pure-Python ``extend``; ``ext`` is owned by the caller."""
    cdef Py_ssize_t i, j, best, m
    cdef i64 w, u, k, tmp, gained
    cdef i64* work
    cdef i64* child
    cdef bint found
    if _fval(st, edges, st.size) >= 0:
        return True
    if st.size == st.kmax or next_ == 0:
        return False
    if not _bound_ok(st, edges, ext, next_):
        return False
    work = <i64*> malloc(next_ * sizeof(i64))
    for i in range(next_):
        work[i] = ext[i]
    # order by (-in_s, vertex): selection sort, ext lists are short
    for i in range(next_):
        best = i
        for j in range(i + 1, next_):
            if (st.in_s[work[j]] > st.in_s[work[best]] or
                    (st.in_s[work[j]] == st.in_s[work[best]] and work[j] < work[best])):
                best = j
        tmp = work[i]
        work[i] = work[best]
        work[best] = tmp
    child = <i64*> malloc((next_ + st.n) * sizeof(i64))
    found = False
    for i in range(next_):
        w = work[i]
        m = 0
        for j in range(i + 1, next_):
            child[m] = work[j]
            m += 1
        for k in range(st.indptr[w], st.indptr[w + 1]):
            u = st.indices[k]
            if st.allowed[u] and u > st.root and st.excl[u] == 0:
                child[m] = u
                m += 1
        gained = _add(st, w)
        found = _extend(st, child, m, edges + gained)
        if found:
            break
        _remove(st, w)
    free(child)
    free(work)
    return found


def dense_subgraph_search(indptr, indices, Py_ssize_t n, i64 num, i64 den,
                          Py_ssize_t kmax, allowed):
    cdef i64[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef i64[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef cnp.int8_t[::1] al = np.ascontiguousarray(np.asarray(allowed, dtype=bool), dtype=np.int8)
    cdef _Search st
    cdef Py_ssize_t v, i
    cdef i64 k, u
    cdef i64* ext
    cdef Py_ssize_t next_
    cdef list result = None
    if n == 0:
        return None
    st.n = n
    st.indptr = &ip[0]
    st.indices = &ix[0] if ix.shape[0] > 0 else NULL
    st.allowed = <char*> &al[0]
    st.in_s = <int*> malloc(n * sizeof(int))
    st.excl = <int*> malloc(n * sizeof(int))
    st.s_list = <i64*> malloc((kmax + 1) * sizeof(i64))
    st.size = 0
    st.num = num
    st.den = den
    st.kmax = kmax
    ext = <i64*> malloc((n + 1) * sizeof(i64))
    try:
        for i in range(n):
            st.in_s[i] = 0
            st.excl[i] = 0
        for v in range(n):
            if not st.allowed[v]:
                continue
            st.root = v
            _add(&st, v)
            next_ = 0
            for k in range(st.indptr[v], st.indptr[v + 1]):
                u = st.indices[k]
                if st.allowed[u] and u > v:
                    ext[next_] = u
                    next_ += 1
            if _extend(&st, ext, next_, 0):
                result = sorted([st.s_list[i] for i in range(st.size)])
                break
            _remove(&st, v)
    finally:
        free(st.in_s)
        free(st.excl)
        free(st.s_list)
        free(ext)
    return result
