# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel; contract-identical to the pure-Python twin.

See _pykernel.py for the semantics. The DFS runs without the GIL; found masks
go into a growable C buffer converted to a list at the end.
"""

from libc.stdint cimport int8_t, int64_t, uint64_t
from libc.stdlib cimport free, malloc, realloc

BACKEND = "cython"

cdef uint64_t HASH_MULT = 0x9E3779B97F4A7C15UL

cdef struct ScanState:
    int m
    int half
    int nshift
    int quota
    bint row_sum_on
    bint track_balance
    bint paf_prefix_on
    uint64_t adm_mask
    uint64_t cc_threshold
    int8_t r[33]
    int64_t partial[17]
    uint64_t reached
    uint64_t crosschecked
    uint64_t mismatches
    uint64_t* found_buf
    size_t found_len
    size_t found_cap
    bint out_of_memory


cdef inline bint _crosscheck_selected(uint64_t mask, uint64_t threshold) noexcept nogil:
    return (mask * HASH_MULT) >> 32 < threshold


cdef inline bint _bound_violated(ScanState* st, int k) noexcept nogil:
    cdef int s, top
    cdef int64_t p, remaining
    top = k if k < st.nshift else st.nshift
    for s in range(1, top + 1):
        p = st.partial[s]
        remaining = st.m - (k + 1 - s)
        if p > remaining or -p > remaining:
            return True
    return False


cdef bint _gram_hadamard(ScanState* st) noexcept nogil:
    # Direct gram product of the circulant against m*I; the ground-truth oracle,
    # deliberately not the autocorrelation shortcut.
    cdef int a, b, k, m
    cdef int64_t acc
    m = st.m
    for a in range(m):
        for b in range(a + 1, m):
            acc = 0
            for k in range(m):
                acc += st.r[(k - a + m) % m] * st.r[(k - b + m) % m]
            if acc != 0:
                return False
    return True


cdef inline void _assign(ScanState* st, int k, int bit) noexcept nogil:
    cdef int s, top
    st.r[k] = -1 if bit else 1
    top = k if k < st.nshift else st.nshift
    for s in range(1, top + 1):
        st.partial[s] += st.r[k - s] * st.r[k]


cdef inline void _unassign(ScanState* st, int k) noexcept nogil:
    cdef int s, top
    top = k if k < st.nshift else st.nshift
    for s in range(1, top + 1):
        st.partial[s] -= st.r[k - s] * st.r[k]


cdef void _push_found(ScanState* st, uint64_t mask) noexcept nogil:
    cdef size_t cap
    cdef uint64_t* grown
    if st.found_len == st.found_cap:
        cap = st.found_cap * 2 if st.found_cap else 64
        grown = <uint64_t*>realloc(st.found_buf, cap * sizeof(uint64_t))
        if grown == NULL:
            st.out_of_memory = True
            return
        st.found_buf = grown
        st.found_cap = cap
    st.found_buf[st.found_len] = mask
    st.found_len += 1


cdef void _visit_leaf(ScanState* st, uint64_t mask, int negs, int evens, int odds) noexcept nogil:
    cdef int s, i
    cdef int64_t total
    cdef bint flat, gram_ok
    if st.row_sum_on and not (st.adm_mask >> negs) & 1:
        return
    if st.track_balance and evens != odds:
        return
    st.reached += 1
    flat = True
    for s in range(1, st.nshift + 1):
        total = st.partial[s]
        for i in range(st.m - s, st.m):
            total += st.r[i] * st.r[i + s - st.m]
        if total != 0:
            flat = False
            break
    if st.cc_threshold != 0 and _crosscheck_selected(mask, st.cc_threshold):
        st.crosschecked += 1
        gram_ok = _gram_hadamard(st)
        if gram_ok != flat:
            st.mismatches += 1
    if flat:
        _push_found(st, mask)


cdef void _descend(ScanState* st, int k, uint64_t mask, int negs, int evens, int odds) noexcept nogil:
    cdef int bit, negs2, evens2, odds2
    cdef uint64_t window
    if st.out_of_memory:
        return
    if k == st.m:
        _visit_leaf(st, mask, negs, evens, odds)
        return
    for bit in range(2):
        negs2 = negs + bit
        if st.row_sum_on:
            window = (st.adm_mask >> negs2) & ((<uint64_t>1 << (st.m - k)) - 1)
            if window == 0:
                continue
        _assign(st, k, bit)
        evens2 = evens
        odds2 = odds
        if st.track_balance and k >= st.half:
            if st.r[k - st.half] == st.r[k]:
                evens2 += 1
            else:
                odds2 += 1
            if evens2 > st.quota or odds2 > st.quota:
                _unassign(st, k)
                continue
        if st.paf_prefix_on and _bound_violated(st, k):
            _unassign(st, k)
            continue
        _descend(st, k + 1, (mask << 1) | <uint64_t>bit, negs2, evens2, odds2)
        _unassign(st, k)


def scan_subtree(int m, unsigned long long prefix, int depth,
                 bint row_sum_on, unsigned long long adm_mask,
                 bint balance_on, bint paf_prefix_on,
                 unsigned long long cc_threshold):
    """Enumerate the masks under (prefix, depth); see _pykernel.scan_subtree."""
    if m < 1 or m > 32:
        raise ValueError(f"order {m} outside the compiled kernel's 1..32 range")
    if depth < 0 or depth > m:
        raise ValueError(f"invalid subtree depth {depth} for order {m}")
    cdef ScanState st
    cdef int k, bit, s
    cdef int negs = 0, evens = 0, odds = 0
    cdef size_t i
    st.m = m
    st.half = m // 2
    st.nshift = m // 2
    st.quota = m // 4
    st.row_sum_on = row_sum_on
    st.track_balance = balance_on and m % 4 == 0
    st.paf_prefix_on = paf_prefix_on
    st.adm_mask = adm_mask
    st.cc_threshold = cc_threshold
    st.reached = 0
    st.crosschecked = 0
    st.mismatches = 0
    st.found_buf = NULL
    st.found_len = 0
    st.found_cap = 0
    st.out_of_memory = False
    for s in range(st.nshift + 1):
        st.partial[s] = 0

    with nogil:
        for k in range(depth):
            bit = <int>((prefix >> (depth - 1 - k)) & 1)
            _assign(&st, k, bit)
            negs += bit
            if st.track_balance and k >= st.half:
                if st.r[k - st.half] == st.r[k]:
                    evens += 1
                else:
                    odds += 1
        if depth == m:
            _visit_leaf(&st, prefix, negs, evens, odds)
        else:
            _descend(&st, depth, prefix, negs, evens, odds)

    try:
        if st.out_of_memory:
            raise MemoryError("found-mask buffer allocation failed")
        found = [st.found_buf[i] for i in range(st.found_len)]
    finally:
        free(st.found_buf)
    return st.reached, found, st.crosschecked, st.mismatches
