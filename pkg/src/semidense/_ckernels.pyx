# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; signatures mirror ``_kernels_py``."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef enum:
    MAXN = 32

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int popcount(u64 x) nogil:
    return __builtin_popcountll(x)


cdef int* _copy_table(flat, int n) except NULL:
    cdef int size = n * n
    cdef int* t = <int*>malloc(size * sizeof(int))
    if t == NULL:
        raise MemoryError()
    cdef int p
    for p in range(size):
        t[p] = flat[p]
    return t


def first_nonassociative(flat, int n):
    cdef int* t = _copy_table(flat, n)
    cdef int i, j, k, ij
    try:
        for i in range(n):
            for j in range(n):
                ij = t[i * n + j]
                for k in range(n):
                    if t[ij * n + k] != t[i * n + t[j * n + k]]:
                        return (i, j, k)
        return None
    finally:
        free(t)


cdef bint _cell_consistent(int* t, int n, int i, int j) nogil:
    cdef int x = t[i * n + j]
    cdef int a, b, c, xc, bc, ab, lhs, rhs
    for c in range(n):
        xc = t[x * n + c]
        bc = t[j * n + c]
        if xc < 0 or bc < 0:
            continue
        rhs = t[i * n + bc]
        if rhs >= 0 and rhs != xc:
            return False
    for a in range(n):
        ab = t[a * n + i]
        if ab < 0:
            continue
        lhs = t[ab * n + j]
        rhs = t[a * n + x]
        if lhs >= 0 and rhs >= 0 and lhs != rhs:
            return False
    for a in range(n):
        for b in range(n):
            if t[a * n + b] != i:
                continue
            bc = t[b * n + j]
            if bc < 0:
                continue
            rhs = t[a * n + bc]
            if rhs >= 0 and rhs != x:
                return False
    for b in range(n):
        for c in range(n):
            if t[b * n + c] != j:
                continue
            ab = t[i * n + b]
            if ab < 0:
                continue
            lhs = t[ab * n + c]
            if lhs >= 0 and lhs != x:
                return False
    return True


cdef bint _is_canonical(int* t, int n, int* perms, int nperms, bint anti) nogil:
    cdef int size = n * n
    cdef int inv[MAXN]
    cdef int q, k, pos, x, y, val, cur, tr, ntr
    cdef int* p
    ntr = 2 if anti else 1
    for q in range(nperms):
        p = perms + q * n
        for k in range(n):
            inv[p[k]] = k
        for tr in range(ntr):
            for pos in range(size):
                if tr == 0:
                    x = pos // n
                    y = pos % n
                else:
                    y = pos // n
                    x = pos % n
                val = p[t[inv[x] * n + inv[y]]]
                cur = t[pos]
                if val < cur:
                    return False
                if val > cur:
                    break
    return True


cdef int* _copy_perms(perms, int n, int* count) except NULL:
    cdef int m = len(perms)
    cdef int* out = <int*>malloc((m * n + 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    cdef int q, k
    for q in range(m):
        row = perms[q]
        for k in range(n):
            out[q * n + k] = row[k]
    count[0] = m
    return out


def is_canonical(flat, int n, perms, bint anti):
    cdef int nperms = 0
    cdef int* t = _copy_table(flat, n)
    cdef int* pp
    try:
        pp = _copy_perms(perms, n, &nperms)
    except BaseException:
        free(t)
        raise
    try:
        return _is_canonical(t, n, pp, nperms, anti)
    finally:
        free(t)
        free(pp)


def enumerate_tables(int n, first_row, int dedup, perms):
    cdef int size = n * n
    cdef int nperms = 0
    cdef int* t = <int*>malloc(size * sizeof(int))
    cdef int* pp = _copy_perms(perms, n, &nperms)
    cdef int* fixed = <int*>malloc(n * sizeof(int))
    cdef int pos, i, j, v, k
    cdef bint anti = dedup == 2
    out = []
    try:
        for k in range(size):
            t[k] = -1
        for k in range(n):
            fixed[k] = first_row[k]
        # iterative DFS: t[pos] holds the value being tried at pos
        pos = 0
        while pos >= 0:
            if pos == size:
                if dedup == 0 or _is_canonical(t, n, pp, nperms, anti):
                    out.append(tuple([t[k] for k in range(size)]))
                pos -= 1
                continue
            i = pos // n
            j = pos % n
            if i == 0:
                if t[pos] < 0:
                    t[pos] = fixed[j]
                    if _cell_consistent(t, n, i, j):
                        pos += 1
                        continue
                t[pos] = -1
                pos -= 1
                continue
            v = t[pos] + 1
            t[pos] = -1
            while v < n:
                t[pos] = v
                if _cell_consistent(t, n, i, j):
                    break
                v += 1
            if v < n:
                pos += 1
                if pos < size:
                    t[pos] = -1
            else:
                t[pos] = -1
                pos -= 1
        return out
    finally:
        free(t)
        free(pp)
        free(fixed)


def invariant_subsets(flat, int n):
    cdef int* t = _copy_table(flat, n)
    cdef u64 k, img, rest
    cdef u64 top = (<u64>1) << n
    cdef int s, y
    cdef bint ok
    found = []
    try:
        k = 1
        while k < top:
            ok = True
            for s in range(n):
                img = 0
                rest = k
                while rest:
                    y = __builtin_ctzll(rest)
                    rest &= rest - 1
                    img |= (<u64>1) << t[s * n + y]
                if img != k:
                    ok = False
                    break
            if ok:
                found.append(k)
            k += 1
        return found
    finally:
        free(t)


def dt_oracle(pre, int n):
    cdef int m = len(pre)
    cdef u64 masks[MAXN]
    cdef int q
    for q in range(m):
        masks[q] = pre[q]
    cdef u64 f, best_f = 0
    cdef u64 top = (<u64>1) << n
    cdef long long best_num = 2, best_den = 1, size, c, mx
    f = 1
    while f < top:
        size = popcount(f)
        mx = 0
        for q in range(m):
            c = popcount(f & masks[q])
            if c > mx:
                mx = c
                if mx * best_den >= best_num * size:
                    break
        if mx * best_den < best_num * size:
            best_num = mx
            best_den = size
            best_f = f
            if mx == 0:
                break
        f += 1
    return best_num, best_den, best_f
