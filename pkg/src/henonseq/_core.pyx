# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; drop-in replacements for ``henonseq._pure``.

Built with ``-ffp-contract=off`` so the map update is never fused into an
FMA and stays bit-identical to the Python fallback.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs
from libc.stdint cimport uint8_t, uint64_t, int64_t
from libc.stdlib cimport calloc, free

from .errors import DivergenceError

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline bint _escaped(double x, double y, double bound) noexcept nogil:
    return not (fabs(x) <= bound and fabs(y) <= bound)


def advance(double alpha, double beta, double x, double y, k, Py_ssize_t n,
            double bound):
    cdef double na = -alpha, xn
    cdef Py_ssize_t i
    cdef bint bad = False
    with nogil:
        for i in range(n):
            xn = ((na * x) * x + y) + 1.0
            y = beta * x
            x = xn
            if _escaped(x, y, bound):
                bad = True
                break
    if bad:
        raise DivergenceError(k + i + 1, x, y, bound)
    return x, y, k + n


def orbit_block(double alpha, double beta, double x, double y, k,
                Py_ssize_t n, double bound):
    cdef cnp.ndarray[cnp.float64_t] xs_arr = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t] ys_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] xs = xs_arr
    cdef double[::1] ys = ys_arr
    cdef double na = -alpha, xn
    cdef Py_ssize_t i
    cdef bint bad = False
    with nogil:
        for i in range(n):
            xn = ((na * x) * x + y) + 1.0
            y = beta * x
            x = xn
            if _escaped(x, y, bound):
                bad = True
                break
            xs[i] = x
            ys[i] = y
    if bad:
        raise DivergenceError(k + i + 1, x, y, bound)
    return xs_arr, ys_arr, x, y, k + n


def henon_bits(double alpha, double beta, double x, double y, k,
               double tau_x, double tau_y, Py_ssize_t P, Py_ssize_t n,
               int p2, int p1, double bound):
    out = bytearray((n + 7) // 8)
    cdef uint8_t[::1] buf
    if n > 0:
        buf = out
    cdef double na = -alpha, xn
    cdef Py_ssize_t j, r, done = 0
    cdef int bx, by, o
    cdef bint bad = False
    with nogil:
        for j in range(n):
            for r in range(P):
                xn = ((na * x) * x + y) + 1.0
                y = beta * x
                x = xn
                if _escaped(x, y, bound):
                    bad = True
                    break
            if bad:
                done = j * P + r + 1
                break
            bx = x > tau_x
            by = y > tau_y
            if p2 == 0:
                o = bx ^ p1
            else:
                o = by ^ p1
            if o:
                buf[j >> 3] |= <uint8_t>(0x80 >> (j & 7))
            p2 = p1
            p1 = by
    if bad:
        raise DivergenceError(k + done, x, y, bound)
    return bytes(out), x, y, k + n * P, p2, p1


def berlekamp_massey(bits, bint want_profile):
    cdef const uint8_t[::1] s = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef Py_ssize_t N = s.shape[0]
    cdef Py_ssize_t W = N // 64 + 3
    cdef Py_ssize_t n, i, w, top, sw
    cdef int64_t L = 0, m = 1
    cdef int sh, d
    cdef uint64_t acc, word, lo
    profile_arr = np.empty(N if want_profile else 0, dtype=np.int64)
    cdef int64_t[::1] profile = profile_arr
    # rev holds the sequence reversed so that s[n - i], i = 0.., is the
    # contiguous bit run starting at N - 1 - n
    cdef uint64_t *rev = <uint64_t *> calloc(W, sizeof(uint64_t))
    cdef uint64_t *C = <uint64_t *> calloc(W, sizeof(uint64_t))
    cdef uint64_t *B = <uint64_t *> calloc(W, sizeof(uint64_t))
    cdef uint64_t *T = <uint64_t *> calloc(W, sizeof(uint64_t))
    if rev == NULL or C == NULL or B == NULL or T == NULL:
        free(rev); free(C); free(B); free(T)
        raise MemoryError()
    try:
        with nogil:
            for i in range(N):
                if s[i]:
                    n = N - 1 - i
                    rev[n >> 6] |= (<uint64_t>1) << (n & 63)
            C[0] = 1
            B[0] = 1
            for n in range(N):
                # polynomials have degree <= n + 1 before the update
                top = ((n + 1) >> 6) + 1
                sw = (N - 1 - n) >> 6
                sh = (N - 1 - n) & 63
                acc = 0
                for w in range(((L) >> 6) + 1):
                    lo = rev[sw + w]
                    if sh:
                        word = (lo >> sh) | (rev[sw + w + 1] << (64 - sh))
                    else:
                        word = lo
                    acc ^= C[w] & word
                d = __builtin_popcountll(acc) & 1
                if d:
                    if 2 * L <= n:
                        for w in range(top + 1):
                            T[w] = C[w]
                        _xor_shifted(C, B, m, top + 1)
                        L = n + 1 - L
                        for w in range(top + 1):
                            B[w] = T[w]
                        m = 1
                    else:
                        _xor_shifted(C, B, m, top + 1)
                        m += 1
                else:
                    m += 1
                if want_profile:
                    profile[n] = L
        conn = 0
        for w in range((N + 1) // 64 + 1):
            if C[w]:
                conn |= int(C[w]) << (64 * w)
    finally:
        free(rev); free(C); free(B); free(T)
    return int(L), conn, (profile_arr if want_profile else None)


cdef inline void _xor_shifted(uint64_t *C, uint64_t *B, int64_t m,
                              Py_ssize_t nwords) noexcept nogil:
    # C ^= B << m over the first nwords words of C
    cdef Py_ssize_t ws = m >> 6
    cdef int bs = m & 63
    cdef Py_ssize_t w
    cdef uint64_t v
    for w in range(nwords - 1, ws - 1, -1):
        v = B[w - ws] << bs
        if bs and w - ws - 1 >= 0:
            v |= B[w - ws - 1] >> (64 - bs)
        C[w] ^= v
