"""Pure-Python kernels.

Reference implementations of the hot loops.  ``_core.pyx`` mirrors every
function here with the same signature and must stay bit-identical to it.
"""

import numpy as np

from .errors import DivergenceError


def _check(x, y, k, bound):
    # written as a negation so NaN fails the test
    if not (abs(x) <= bound and abs(y) <= bound):
        raise DivergenceError(k, x, y, bound)


def advance(alpha, beta, x, y, k, n, bound):
    """Iterate the map ``n`` times from ``(x, y)`` without storing the states."""
    na = -alpha
    for _ in range(n):
        x, y = ((na * x) * x + y) + 1.0, beta * x
        k += 1
        _check(x, y, k, bound)
    return x, y, k


def orbit_block(alpha, beta, x, y, k, n, bound):
    """Iterate ``n`` times and return the visited x and y values as arrays."""
    xs = np.empty(n, dtype=np.float64)
    ys = np.empty(n, dtype=np.float64)
    na = -alpha
    for i in range(n):
        x, y = ((na * x) * x + y) + 1.0, beta * x
        k += 1
        _check(x, y, k, bound)
        xs[i] = x
        ys[i] = y
    return xs, ys, x, y, k


def henon_bits(alpha, beta, x, y, k, tau_x, tau_y, P, n, p2, p1, bound):
    """Produce ``n`` combined output bits, packed MSB-first.

    Every ``P``-th iterate contributes one x-bit and one y-bit; the output
    bit is selected by the two previous y-bits ``(p2, p1)``.  Returns the
    packed bytes together with the continuation state
    ``(x, y, k, p2, p1)``.
    """
    out = bytearray((n + 7) // 8)
    na = -alpha
    for j in range(n):
        for _ in range(P):
            x, y = ((na * x) * x + y) + 1.0, beta * x
            k += 1
            if not (abs(x) <= bound and abs(y) <= bound):
                raise DivergenceError(k, x, y, bound)
        bx = 1 if x > tau_x else 0
        by = 1 if y > tau_y else 0
        if p2 == 0:
            o = bx ^ p1
        else:
            o = by ^ p1
        if o:
            out[j >> 3] |= 0x80 >> (j & 7)
        p2, p1 = p1, by
    return bytes(out), x, y, k, p2, p1


def berlekamp_massey(bits, want_profile):
    """Binary Berlekamp-Massey over a 0/1 uint8 array.

    Returns ``(L, connection, profile)``: the linear complexity, the
    connection polynomial as an int (bit i is the coefficient of D^i) and,
    if requested, the int64 array of prefix complexities.
    """
    N = len(bits)
    seq = bits.tolist()
    profile = np.empty(N, dtype=np.int64) if want_profile else None
    C = 1
    B = 1
    L = 0
    m = 1
    window = 0  # bit i holds s[n - i]
    for n in range(N):
        window = (window << 1) | seq[n]
        d = (C & window).bit_count() & 1
        if d:
            if 2 * L <= n:
                T = C
                C ^= B << m
                L = n + 1 - L
                B = T
                m = 1
            else:
                C ^= B << m
                m += 1
        else:
            m += 1
        if want_profile:
            profile[n] = L
    return L, C, profile

