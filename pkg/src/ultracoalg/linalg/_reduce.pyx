# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Dense Gauss-Jordan over Z/p^L with word-size residues.

Same pivot rule and precision bookkeeping as ``_reduce_py.minval_reduce``;
requires ``p^L < 2^62`` so that products fit in 128 bits.
"""

cdef extern from *:
    ctypedef long long int128 "__int128"


cdef inline long long _mulmod(long long a, long long b, long long m) nogil:
    return <long long>((<int128>a * <int128>b) % <int128>m)


cdef long long _inverse(long long a, long long m) nogil:
    cdef long long t = 0, nt = 1, r = m, nr = a % m, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += m
    return t


cdef inline int _val(long long x, long long p) nogil:
    cdef int v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def minval_reduce_dense(long long[:] a, int nrows, int ncols, long long[:] prec,
                        long long p, int L, int need):
    """Mutates the row-major matrix ``a`` and ``prec``; returns the pivot list.

    Returns ``None`` when a pivot would leave fewer than ``need`` digits.
    """
    cdef long long[:] pw
    cdef int i, r, c, s, cc, k, v, P, Ps, best_v, best_r, best_c
    cdef long long x, pk, inv, M, Ms, av, y
    cdef bint found
    pw_list = [int(p) ** j for j in range(L + 1)]
    import array
    pw = array.array('q', pw_list)
    cdef unsigned char[:] is_active = array.array('B', [1] * nrows)
    pivots = []
    while True:
        found = False
        best_v = 0
        best_r = 0
        best_c = 0
        for r in range(nrows):
            if not is_active[r]:
                continue
            for c in range(ncols):
                x = a[r * ncols + c]
                if x == 0:
                    continue
                v = _val(x, p)
                if not found or v < best_v:
                    found = True
                    best_v = v
                    best_r = r
                    best_c = c
            if found and best_v == 0:
                break
        if not found:
            break
        k = best_v
        r = best_r
        c = best_c
        P = <int>prec[r] - k
        if P < need:
            return None
        M = pw[P]
        pk = pw[k]
        inv = _inverse((a[r * ncols + c] // pk) % M, M)
        for cc in range(ncols):
            x = a[r * ncols + cc]
            if x != 0:
                a[r * ncols + cc] = _mulmod((x // pk) % M, inv, M)
        prec[r] = P
        for s in range(nrows):
            if s == r:
                continue
            av = a[s * ncols + c]
            if av == 0:
                continue
            Ps = <int>prec[s]
            v = P + _val(av, p)
            if v < Ps:
                Ps = v
            Ms = pw[Ps]
            for cc in range(ncols):
                x = a[r * ncols + cc]
                y = a[s * ncols + cc] % Ms
                if x != 0:
                    y = (y - _mulmod(av % Ms, x % Ms, Ms)) % Ms
                    if y < 0:
                        y += Ms
                a[s * ncols + cc] = y
            prec[s] = Ps
        is_active[r] = 0
        pivots.append((r, c))
    return pivots
