"""NumPy fallback for the inclusion-exclusion kernels.

Every routine here reproduces the summation order of the compiled module
exactly (row sums in increasing row index, column DP left to right,
subset terms accumulated sequentially in increasing binary order), so the
two backends agree bit for bit on the same input.
"""
import numpy as np

_BLOCK_BITS = 12


def _block_row_sums(A, lo_bits, base, hi):
    """Row sums c[T, j] for T in [base, min(base + 2**lo_bits, hi))."""
    m, n = A.shape
    size = 1 << lo_bits
    c = np.zeros((1, n))
    # doubling over the low rows; c[T] = c[T without top bit] + A[top bit]
    for i in range(lo_bits):
        c = np.concatenate((c, c + A[i]), axis=0)
    for i in range(lo_bits, m):
        if (base >> i) & 1:
            c = c + A[i]
    stop = min(size, hi - base)
    return c[:stop]


def _parity(lo_bits, base, count, m):
    bits = np.arange(count, dtype=np.int64) + base
    pop = np.zeros(count, dtype=np.int64)
    for i in range(m):
        pop += (bits >> i) & 1
    return np.where((m - pop) % 2 == 0, 1.0, -1.0)


def _blocks(m, lo, hi):
    lo_bits = min(m, _BLOCK_BITS)
    size = 1 << lo_bits
    base = (lo // size) * size
    while base < hi:
        yield lo_bits, base
        base += size


def _accumulate(total, terms):
    # np.cumsum is strictly sequential: matches `total += term` in C
    return np.cumsum(np.concatenate(([total], terms)))[-1]


def ie_poly_real(A, lam, lo, hi):
    """Partial inclusion-exclusion sum for F over subsets T in [lo, hi)."""
    A = np.asarray(A, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    m, n = A.shape
    total = 0.0
    for lo_bits, base in _blocks(m, lo, hi):
        c = _block_row_sums(A, lo_bits, base, hi)
        first = max(lo - base, 0)
        c = c[first:]
        count = c.shape[0]
        coef = np.zeros((m + 1, count))
        coef[0] = 1.0
        for j in range(n):
            cj = c[:, j] * lam[j]
            for k in range(min(j + 1, m), 0, -1):
                coef[k] += coef[k - 1] * cj
        sign = _parity(lo_bits, base + first, count, m)
        total = _accumulate(total, sign * coef[m])
    return float(total)


def ie_poly_complex(A, zre, zim, lo, hi):
    """Complex-argument counterpart of ie_poly_real; returns (re, im).

    Real and imaginary parts are kept in separate float arrays: NumPy's
    complex multiply may fuse operations, which would break bit agreement.
    """
    A = np.asarray(A, dtype=np.float64)
    zre = np.asarray(zre, dtype=np.float64)
    zim = np.asarray(zim, dtype=np.float64)
    m, n = A.shape
    tre = 0.0
    tim = 0.0
    for lo_bits, base in _blocks(m, lo, hi):
        c = _block_row_sums(A, lo_bits, base, hi)
        first = max(lo - base, 0)
        c = c[first:]
        count = c.shape[0]
        are = np.zeros((m + 1, count))
        aim = np.zeros((m + 1, count))
        are[0] = 1.0
        for j in range(n):
            cre = c[:, j] * zre[j] - 0.0 * zim[j]
            cim = c[:, j] * zim[j] + 0.0 * zre[j]
            for k in range(min(j + 1, m), 0, -1):
                pre = are[k - 1] * cre - aim[k - 1] * cim
                pim = are[k - 1] * cim + aim[k - 1] * cre
                are[k] += pre
                aim[k] += pim
        sign = _parity(lo_bits, base + first, count, m)
        tre = _accumulate(tre, sign * are[m])
        tim = _accumulate(tim, sign * aim[m])
    return float(tre), float(tim)


def ie_companion_real(A, lam, lo, hi):
    """Partial sum for R, using factors (lam_j + s * c_j(T))."""
    A = np.asarray(A, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    m, n = A.shape
    total = 0.0
    for lo_bits, base in _blocks(m, lo, hi):
        c = _block_row_sums(A, lo_bits, base, hi)
        first = max(lo - base, 0)
        c = c[first:]
        count = c.shape[0]
        coef = np.zeros((m + 1, count))
        coef[0] = 1.0
        for j in range(n):
            cj = c[:, j]
            lj = lam[j]
            for k in range(min(j + 1, m), 0, -1):
                coef[k] = coef[k] * lj + coef[k - 1] * cj
            coef[0] = coef[0] * lj
        sign = _parity(lo_bits, base + first, count, m)
        total = _accumulate(total, sign * coef[m])
    return float(total)


def permanent_ryser(B):
    """Ryser's formula with Gray-code subset order."""
    B = np.asarray(B, dtype=np.float64)
    k = B.shape[0]
    rowsums = np.zeros(k)
    total = 0.0
    prev = 0
    for step in range(1, 1 << k):
        gray = step ^ (step >> 1)
        flip = (gray ^ prev).bit_length() - 1
        if gray & (1 << flip):
            rowsums = rowsums + B[:, flip]
        else:
            rowsums = rowsums - B[:, flip]
        prev = gray
        prod = 1.0
        for v in rowsums:
            prod *= v
        if (k - bin(gray).count("1")) % 2:
            total -= prod
        else:
            total += prod
    return float(total)
