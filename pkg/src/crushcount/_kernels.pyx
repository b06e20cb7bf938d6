# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Moser-Tardos and Monte Carlo kernels.

Bit-identical twin of ``_fallback.py``; see that module for the table layout.
All loops release the GIL so worker threads run concurrently.
"""
from libc.stdint cimport uint64_t, uint32_t, int32_t, int64_t
from libc.stdlib cimport malloc, free

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t absorb(uint64_t h, uint64_t x) noexcept nogil:
    return mix64(h ^ mix64(x + GAMMA))


cdef inline uint64_t next_u64(uint64_t* state) noexcept nogil:
    state[0] += GAMMA
    return mix64(state[0])


cdef inline int32_t below(uint64_t* state, uint32_t n) noexcept nogil:
    cdef uint64_t m = (next_u64(state) >> 32) * n
    cdef uint32_t low = <uint32_t>m
    cdef uint32_t threshold
    if low < n:
        threshold = (<uint32_t>(0x100000000ULL - n)) % n
        while low < threshold:
            m = (next_u64(state) >> 32) * n
            low = <uint32_t>m
    return <int32_t>(m >> 32)


cdef int64_t mt_core(const int32_t[:, ::1] ev, const int32_t[::1] vrank,
                     const int32_t[::1] cover, const int32_t[::1] cover_end,
                     int32_t* colors, Py_ssize_t n_vertices, uint32_t c,
                     uint64_t* state, int64_t budget, bint rewind) noexcept nogil:
    cdef Py_ssize_t n_edges = ev.shape[0]
    cdef Py_ssize_t k = ev.shape[1]
    cdef Py_ssize_t v, i, j, start = 0
    cdef int64_t count = 0
    cdef int32_t first, u
    for v in range(n_vertices):
        colors[v] = below(state, c)
    while True:
        j = start
        while j < n_edges:
            first = colors[ev[j, 0]]
            i = 1
            while i < k and colors[ev[j, i]] == first:
                i += 1
            if i == k:
                break
            j += 1
        if j == n_edges:
            return count
        if count >= budget:
            return -1
        count += 1
        if rewind:
            for i in range(cover_end[j]):
                colors[cover[i]] = below(state, c)
            start = 0
        else:
            start = n_edges
            for i in range(k):
                u = ev[j, i]
                colors[u] = below(state, c)
                if vrank[u] < start:
                    start = vrank[u]


def mt_fill(const int32_t[:, ::1] ev, const int32_t[::1] vrank, const int32_t[::1] cover,
            const int32_t[::1] cover_end, int32_t[::1] colors_out, uint32_t c, uint64_t seed,
            int64_t budget, bint rewind):
    cdef uint64_t state = seed
    cdef int64_t r
    with nogil:
        r = mt_core(ev, vrank, cover, cover_end, &colors_out[0] if colors_out.shape[0] else NULL,
                    colors_out.shape[0], c, &state, budget, rewind)
    return r


def mt_batch(const int32_t[:, ::1] ev, const int32_t[::1] vrank, const int32_t[::1] cover,
             const int32_t[::1] cover_end, Py_ssize_t n_vertices, uint32_t c, uint64_t level_seed,
             int64_t start, int64_t stop, int64_t budget, bint rewind,
             int32_t[:, ::1] out_colors, int64_t[::1] out_resamples):
    cdef int64_t i, r, failed = -1
    cdef Py_ssize_t v
    cdef uint64_t state
    cdef int32_t* colors = <int32_t*>malloc((n_vertices + 1) * sizeof(int32_t))
    if colors == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(start, stop):
                state = absorb(level_seed, <uint64_t>i)
                r = mt_core(ev, vrank, cover, cover_end, colors, n_vertices, c, &state, budget, rewind)
                if r < 0:
                    failed = i
                    break
                for v in range(n_vertices):
                    out_colors[i - start, v] = colors[v]
                out_resamples[i - start] = r
    finally:
        free(colors)
    return failed


def level_batch(const int32_t[:, ::1] ev, const int32_t[::1] vrank, const int32_t[::1] cover,
                const int32_t[::1] cover_end, const int32_t[:, ::1] end_ev, Py_ssize_t n_vertices,
                uint32_t c, uint64_t level_seed, int64_t start, int64_t stop, int64_t budget,
                bint rewind):
    cdef int64_t i, r, hits = 0, total = 0, failed = -1
    cdef Py_ssize_t j, a
    cdef Py_ssize_t m = end_ev.shape[0]
    cdef Py_ssize_t k = end_ev.shape[1]
    cdef int32_t first
    cdef bint ok
    cdef uint64_t state
    cdef int32_t* colors = <int32_t*>malloc((n_vertices + 1) * sizeof(int32_t))
    if colors == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(start, stop):
                state = absorb(level_seed, <uint64_t>i)
                r = mt_core(ev, vrank, cover, cover_end, colors, n_vertices, c, &state, budget, rewind)
                if r < 0:
                    failed = i
                    break
                total += r
                ok = True
                for j in range(m):
                    first = colors[end_ev[j, 0]]
                    a = 1
                    while a < k and colors[end_ev[j, a]] == first:
                        a += 1
                    if a == k:
                        ok = False
                        break
                if ok:
                    hits += 1
    finally:
        free(colors)
    return hits, total, failed


def mc_batch(const int32_t[:, ::1] ev, Py_ssize_t n_vertices, uint32_t c, uint64_t level_seed,
             int64_t start, int64_t stop):
    cdef int64_t i, hits = 0
    cdef Py_ssize_t v, j, a
    cdef Py_ssize_t n_edges = ev.shape[0]
    cdef Py_ssize_t k = ev.shape[1]
    cdef int32_t first
    cdef bint ok
    cdef uint64_t state
    cdef int32_t* colors = <int32_t*>malloc((n_vertices + 1) * sizeof(int32_t))
    if colors == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(start, stop):
                state = absorb(level_seed, <uint64_t>i)
                for v in range(n_vertices):
                    colors[v] = below(&state, c)
                ok = True
                for j in range(n_edges):
                    first = colors[ev[j, 0]]
                    a = 1
                    while a < k and colors[ev[j, a]] == first:
                        a += 1
                    if a == k:
                        ok = False
                        break
                if ok:
                    hits += 1
    finally:
        free(colors)
    return hits
