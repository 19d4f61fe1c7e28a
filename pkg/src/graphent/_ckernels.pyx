# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels (graphs of at most 64 vertices).

Same contracts as ``graphent._pykernels``; results must agree bit for bit.
"""

ctypedef unsigned long long u64


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _popcount(u64 x) nogil:
    return __builtin_popcountll(x)


cdef inline int _highbit(u64 x) nogil:
    return 63 - __builtin_clzll(x)


cdef inline int _lowbit(u64 x) nogil:
    return __builtin_ctzll(x)


cdef int _rank(u64* rows, int count) nogil:
    cdef u64 piv[64]
    cdef int i, h, rank = 0
    cdef u64 r
    for i in range(64):
        piv[i] = 0
    for i in range(count):
        r = rows[i]
        while r:
            h = _highbit(r)
            if piv[h]:
                r ^= piv[h]
            else:
                piv[h] = r
                rank += 1
                break
    return rank


cdef int _cut_rank(u64* adj, int n, u64 mask) nogil:
    cdef u64 rows[64]
    cdef u64 full = (<u64>1 << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
    cdef u64 other = full & ~mask
    cdef u64 m = mask
    cdef int count = 0, v
    while m:
        v = _lowbit(m)
        rows[count] = adj[v] & other
        count += 1
        m &= m - 1
    return _rank(rows, count)


def gf2_rank(list rows):
    cdef u64 buf[64]
    cdef int count = len(rows), i
    if count > 64:
        raise ValueError("compiled gf2_rank handles at most 64 rows")
    for i in range(count):
        buf[i] = <u64>rows[i]
    return _rank(buf, count)


def cut_rank(list adj, int n, mask):
    cdef u64 a[64]
    cdef int i
    for i in range(n):
        a[i] = <u64>adj[i]
    return _cut_rank(a, n, <u64>mask)


def max_cut_rank(list adj, int n, int ceiling):
    cdef u64 a[64]
    cdef int i, pc, lo, r, best = -1
    cdef u64 mask, best_mask = 0, top
    for i in range(n):
        a[i] = <u64>adj[i]
    top = <u64>1 << (n - 1)
    with nogil:
        mask = 1
        while mask < top:
            pc = _popcount(mask)
            lo = pc if pc < n - pc else n - pc
            if lo > best:
                r = _cut_rank(a, n, mask)
                if r > best:
                    best = r
                    best_mask = mask
                    if best >= ceiling:
                        break
            mask += 1
    return best, best_mask


cdef struct MisState:
    u64 comp[64]
    int best_size
    u64 best_mask
    int found
    int stop_at
    long long nodes
    long long budget
    int aborted


cdef void _expand(MisState* st, u64 r, int size, u64 p) nogil:
    cdef int order[64]
    cdef int colours[64]
    cdef int count = 0, colour = 0, v, i
    cdef u64 q = p, avail, bit, pn
    st.nodes += 1
    if st.nodes > st.budget:
        st.aborted = 1
        return
    while q:
        colour += 1
        avail = q
        while avail:
            v = _lowbit(avail)
            bit = <u64>1 << v
            q &= ~bit
            avail &= ~bit & ~st.comp[v]
            order[count] = v
            colours[count] = colour
            count += 1
    i = count - 1
    while i >= 0:
        if size + colours[i] <= st.best_size or st.best_size >= st.stop_at:
            return
        v = order[i]
        bit = <u64>1 << v
        pn = p & st.comp[v]
        if pn:
            _expand(st, r | bit, size + 1, pn)
            if st.aborted:
                return
        elif size + 1 > st.best_size:
            st.best_size = size + 1
            st.best_mask = r | bit
            st.found = 1
        p &= ~bit
        i -= 1


def mis_search(list adj, int n, int lower, int stop_at, long long budget):
    cdef MisState st
    cdef u64 full = (<u64>1 << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
    cdef int v
    for v in range(n):
        st.comp[v] = full & ~(<u64>adj[v]) & ~(<u64>1 << v)
    st.best_size = lower
    st.best_mask = 0
    st.found = 0
    st.stop_at = stop_at
    st.nodes = 0
    st.budget = budget
    st.aborted = 0
    if n and lower < stop_at:
        with nogil:
            _expand(&st, 0, 0, full)
    mask = int(st.best_mask) if st.found else -1
    return mask, st.best_size, st.nodes, not st.aborted
