# cython: language_level=3
"""Compiled versions of the search kernels in ``_pysearch``.

Structures are limited to 64 vertices and 8 relations (one machine word
per bitmask row); the dispatcher in ``search`` falls back to Python above
those limits.
"""
from libc.stdint cimport uint64_t

cdef enum:
    MAXV = 64
    MAXR = 8

BOUNDARY = 254
DIAGONAL = 255


cdef inline int bit(uint64_t row, int k) nogil:
    return <int>((row >> k) & 1)


cdef void _signature(uint64_t[MAXR][MAXV] rel, int nrel, int v, int size,
                     int *out) nogil:
    cdef int r, u, c
    cdef uint64_t x
    for r in range(nrel):
        x = rel[r][v]
        c = 0
        while x:
            x &= x - 1
            c += 1
        out[3 * r] = c
        c = 0
        for u in range(size):
            c += bit(rel[r][u], v)
        out[3 * r + 1] = c
        out[3 * r + 2] = bit(rel[r][v], v)


def find_maps(a_rel, b_rel, int na, int nb, bint bijective, int limit=0,
              int forced_a=-1, int forced_b=-1):
    cdef uint64_t A[MAXR][MAXV]
    cdef uint64_t B[MAXR][MAXV]
    cdef uint64_t allowed[MAXV]
    cdef int image[MAXV]
    cdef int nextj[MAXV]
    cdef uint64_t used = 0
    cdef int sa[3 * MAXR]
    cdef int sb[3 * MAXR]
    cdef int nrel = len(a_rel)
    cdef int i, j, r, d, k, mi, ok
    cdef uint64_t ad, bj

    if bijective and na != nb:
        return []
    if na > nb:
        return []
    if nb > MAXV or nrel > MAXR:
        raise ValueError("structure too large for compiled kernel")
    for r in range(nrel):
        for i in range(na):
            A[r][i] = a_rel[r][i]
        for j in range(nb):
            B[r][j] = b_rel[r][j]

    for i in range(na):
        allowed[i] = 0
        if bijective:
            _signature(A, nrel, i, na, sa)
        for j in range(nb):
            ok = 1
            if bijective:
                _signature(B, nrel, j, nb, sb)
                for k in range(3 * nrel):
                    if sa[k] != sb[k]:
                        ok = 0
                        break
            else:
                for r in range(nrel):
                    if bit(A[r][i], i) != bit(B[r][j], j):
                        ok = 0
                        break
            if ok:
                allowed[i] |= (<uint64_t>1) << j
    if forced_a >= 0:
        if not bit(allowed[forced_a], forced_b):
            return []
        for i in range(na):
            if i == forced_a:
                allowed[i] = (<uint64_t>1) << forced_b
            else:
                allowed[i] &= ~((<uint64_t>1) << forced_b)

    results = []
    if na == 0:
        return [()]
    d = 0
    nextj[0] = 0
    while d >= 0:
        j = nextj[d]
        found = 0
        while j < nb:
            if bit(allowed[d], j) and not bit(used, j):
                ok = 1
                for r in range(nrel):
                    ad = A[r][d]
                    bj = B[r][j]
                    for i in range(d):
                        mi = image[i]
                        if bit(ad, i) != bit(bj, mi) or bit(A[r][i], d) != bit(B[r][mi], j):
                            ok = 0
                            break
                    if not ok:
                        break
                if ok:
                    found = 1
                    break
            j += 1
        if not found:
            d -= 1
            if d >= 0:
                used &= ~((<uint64_t>1) << image[d])
            continue
        image[d] = j
        nextj[d] = j + 1
        if d + 1 == na:
            results.append(tuple([image[k] for k in range(na)]))
            if limit and len(results) >= limit:
                return results
            continue
        used |= (<uint64_t>1) << j
        d += 1
        nextj[d] = 0
    return results


def relate_table(nums, long long denom, int n):
    cdef Py_ssize_t size = len(nums)
    cdef long long[:] v
    cdef Py_ssize_t i, j
    cdef long long t
    cdef bytearray out = bytearray(size * size)
    cdef unsigned char *p = out
    import array
    arr = array.array("q", nums)
    v = arr
    for i in range(size):
        for j in range(size):
            if i == j:
                p[i * size + j] = 255
                continue
            t = (v[i] - v[j]) % denom
            if t < 0:
                t += denom
            t *= n
            if t % denom == 0:
                p[i * size + j] = 254
            else:
                p[i * size + j] = <unsigned char>(t // denom)
    return bytes(out)
