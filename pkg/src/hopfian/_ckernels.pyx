# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled hot loops; same contract as ``_pykernels``."""
from libc.string cimport memcmp
from libc.stdlib cimport malloc, free


def assoc_witness(const long long[:, ::1] t):
    cdef Py_ssize_t n = t.shape[0], x, y, z
    cdef long long xy
    for x in range(n):
        for y in range(n):
            xy = t[x, y]
            for z in range(n):
                if t[xy, z] != t[x, t[y, z]]:
                    return (x, y, z)
    return None


def light_witness(const long long[:, ::1] t, const long long[::1] gens):
    cdef Py_ssize_t n = t.shape[0], x, y, k
    cdef long long g, xg
    for k in range(gens.shape[0]):
        g = gens[k]
        for x in range(n):
            xg = t[x, g]
            for y in range(n):
                if t[xg, y] != t[x, t[g, y]]:
                    return (x, g, y)
    return None


def hom_witness(const long long[:, ::1] src, const long long[:, ::1] dst,
                const long long[::1] f):
    cdef Py_ssize_t n = src.shape[0], x, y
    for x in range(n):
        for y in range(n):
            if f[src[x, y]] != dst[f[x], f[y]]:
                return (x, y)
    return None


def hom_failures(const long long[:, ::1] src, const long long[:, ::1] dst,
                 const long long[::1] f):
    cdef Py_ssize_t n = src.shape[0], x, y, count = 0
    for x in range(n):
        for y in range(n):
            if f[src[x, y]] != dst[f[x], f[y]]:
                count += 1
    return count


def is_closed(const long long[:, ::1] t, const long long[::1] members):
    cdef Py_ssize_t n = t.shape[0], m = members.shape[0], i, j
    cdef char *inside = <char *> malloc(n)
    if inside == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            inside[i] = 0
        for i in range(m):
            inside[members[i]] = 1
        for i in range(m):
            for j in range(m):
                if not inside[t[members[i], members[j]]]:
                    return False
        return True
    finally:
        free(inside)


def closure(const long long[:, ::1] t, const long long[::1] seeds):
    cdef Py_ssize_t n = t.shape[0], i, j, count = 0
    cdef long long x, y, p
    cdef long long *elems = <long long *> malloc(n * sizeof(long long))
    cdef char *inside = <char *> malloc(n)
    if elems == NULL or inside == NULL:
        free(elems)
        free(inside)
        raise MemoryError()
    try:
        for i in range(n):
            inside[i] = 0
        for i in range(seeds.shape[0]):
            if not inside[seeds[i]]:
                inside[seeds[i]] = 1
                elems[count] = seeds[i]
                count += 1
        i = 0
        while i < count:
            x = elems[i]
            for j in range(i + 1):
                y = elems[j]
                p = t[x, y]
                if not inside[p]:
                    inside[p] = 1
                    elems[count] = p
                    count += 1
                p = t[y, x]
                if not inside[p]:
                    inside[p] = 1
                    elems[count] = p
                    count += 1
            i += 1
        return [k for k in range(n) if inside[k]]
    finally:
        free(elems)
        free(inside)


cdef Py_ssize_t _leftmost(const unsigned char[::1] w, list lhs,
                          Py_ssize_t start, Py_ssize_t *rule):
    cdef Py_ssize_t n = w.shape[0], p, i, m, nr = len(lhs)
    cdef bytes b
    for p in range(start, n):
        for i in range(nr):
            b = <bytes> lhs[i]
            m = len(b)
            if m <= n - p and memcmp(&w[p], <const char *> b, m) == 0:
                rule[0] = i
                return p
    rule[0] = -1
    return -1


def reduce_once(bytes w, list lhs, list rhs):
    cdef Py_ssize_t i, p
    if len(w) == 0:
        return None
    p = _leftmost(w, lhs, 0, &i)
    if i < 0:
        return None
    return w[:p] + rhs[i] + w[p + len(lhs[i]):]


def normal_form(bytes w, list lhs, list rhs, long long limit):
    cdef Py_ssize_t i, p, start = 0, back = 0
    cdef long long steps = 0
    if not lhs or len(w) == 0:
        return w, 0, True
    for b in lhs:
        if len(b) - 1 > back:
            back = len(b) - 1
    while True:
        p = _leftmost(w, lhs, start, &i)
        if i < 0:
            return w, steps, True
        if steps >= limit:
            return w, steps, False
        w = w[:p] + rhs[i] + w[p + len(lhs[i]):]
        steps += 1
        start = p - back if p > back else 0
