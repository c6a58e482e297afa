"""Evaluation of the permanental polynomial F_A and its companion R.

For a non-negative M x N matrix A (M < N)::

    F_A(lam) = sum_{|S| = M} Per(A_S) prod_{j in S} lam_j
    R(lam)   = sum_{|S| = M} Per(A_S) prod_{j not in S} lam_j

F_A(lam) is the coefficient of x_1...x_M in prod_j (1 + lam_j sum_i A[i, j] x_i).
The fast evaluator extracts that coefficient by inclusion-exclusion over
row subsets T, each term being a degree-capped univariate product::

    F_A(lam) = sum_T (-1)^(M - |T|) [s^M] prod_j (1 + s lam_j c_j(T)),
    c_j(T) = sum_{i in T} A[i, j]

which costs O(2^M N M) and is exponential only in the row count.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _backend

MAX_ROWS = 24


class DimensionError(ValueError):
    """Shapes of matrix and point do not fit together."""


class DomainError(ValueError):
    """Operation undefined at this input (zero polynomial, F = 0, ...)."""


def _has_row_saturating_matching(support):
    """Kuhn's augmenting-path matching on the bipartite graph rows -> columns."""
    m, n = support.shape
    match_col = [-1] * n

    def augment(i, seen):
        for j in np.flatnonzero(support[i]):
            if seen[j]:
                continue
            seen[j] = True
            if match_col[j] < 0 or augment(match_col[j], seen):
                match_col[j] = i
                return True
        return False

    return all(augment(i, [False] * n) for i in range(m))


@dataclass(frozen=True, eq=False)
class NonNegMatrix:
    """Validated non-negative M x N matrix with 1 <= M < N.

    The zero-polynomial flag is computed once at construction: F_A vanishes
    identically iff no injection rows -> columns picks only positive entries.
    """

    entries: np.ndarray
    is_zero: bool = field(init=False)

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.float64, copy=True)
        if a.ndim != 2:
            raise DimensionError(f"matrix must be 2-dimensional, got shape {a.shape}")
        m, n = a.shape
        if m < 1:
            raise DimensionError("matrix needs at least one row")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        if np.any(a < 0):
            i, j = np.argwhere(a < 0)[0]
            raise ValueError(f"negative entry {a[i, j]!r} at row {i}, column {j}")
        if m >= n:
            raise DimensionError(f"requires M < N, got {m}x{n}")
        if m > MAX_ROWS:
            raise DimensionError(f"at most {MAX_ROWS} rows supported, got {m}")
        a = np.ascontiguousarray(a)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "is_zero", not _has_row_saturating_matching(a > 0))

    @property
    def M(self):
        return self.entries.shape[0]

    @property
    def N(self):
        return self.entries.shape[1]

    @property
    def shape(self):
        return self.entries.shape

    def scaled(self, c):
        return NonNegMatrix(self.entries * c)

    def __repr__(self):
        return f"NonNegMatrix({self.entries.tolist()!r})"


def as_matrix(A):
    return A if isinstance(A, NonNegMatrix) else NonNegMatrix(A)


@dataclass(frozen=True)
class EvalValue:
    value: float
    zero_flag: bool

    def __float__(self):
        return float(self.value)

    def __complex__(self):
        return complex(self.value)


def _point(A, lam, name="lambda"):
    lam = np.ascontiguousarray(lam, dtype=np.float64)
    if lam.ndim != 1 or lam.shape[0] != A.N:
        raise DimensionError(f"{name} must have length N={A.N}, got shape {lam.shape}")
    return lam


def _ranges(m, workers):
    total = 1 << m
    workers = max(1, min(int(workers), total))
    bounds = [total * w // workers for w in range(workers + 1)]
    return list(zip(bounds[:-1], bounds[1:]))


def _run(kernel, args, m, workers):
    if workers == 1:
        return kernel(*args, 0, 1 << m)
    ranges = _ranges(m, workers)
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        parts = list(pool.map(lambda r: kernel(*args, r[0], r[1]), ranges))
    # per-worker accumulators merged in worker-index order
    if isinstance(parts[0], tuple):
        re = im = 0.0
        for pre, pim in parts:
            re += pre
            im += pim
        return re, im
    total = 0.0
    for p in parts:
        total += p
    return total


def permanent_square(B, backend=None):
    """Permanent of a square matrix by Ryser's formula (Gray-code order)."""
    B = np.ascontiguousarray(B, dtype=np.float64)
    if B.ndim != 2 or B.shape[0] != B.shape[1] or B.shape[0] < 1:
        raise DimensionError(f"permanent needs a non-empty square matrix, got shape {B.shape}")
    return float(_backend.get_backend(backend).permanent_ryser(B))


def subset_permanents(A, backend=None):
    """All (S, Per(A_S)) over M-subsets S of the columns, lexicographic order."""
    A = as_matrix(A)
    return [
        (S, permanent_square(A.entries[:, S], backend=backend))
        for S in combinations(range(A.N), A.M)
    ]


def eval_F_bruteforce(A, lam, backend=None):
    """Reference oracle: enumerate all C(N, M) column subsets."""
    A = as_matrix(A)
    lam = _point(A, lam)
    total = 0.0
    for S, per in subset_permanents(A, backend=backend):
        total += per * float(np.prod(lam[list(S)]))
    return EvalValue(total, A.is_zero)


def _nonneg(value, point):
    # all coefficients are >= 0, so a negative result on the orthant is
    # cancellation noise
    if value < 0.0 and np.all(point >= 0):
        return 0.0
    return value


def _F(A, lam, workers=1, backend=None):
    kernels = _backend.get_backend(backend)
    return _nonneg(float(_run(kernels.ie_poly_real, (A.entries, lam), A.M, workers)), lam)


def eval_F_fast(A, lam, workers=1, backend=None):
    """F_A(lam) by inclusion-exclusion over row subsets, O(2^M N M).

    With workers > 1 the subset range is split into contiguous chunks run on
    threads; the result is deterministic for a fixed worker count but not
    bit-identical to the sequential sum.
    """
    A = as_matrix(A)
    lam = _point(A, lam)
    if A.is_zero:
        return EvalValue(0.0, True)
    return EvalValue(_F(A, lam, workers, backend), False)


def eval_F_complex(A, z, workers=1, backend=None):
    """F_A at a complex point; bit-identical to eval_F_fast on real input."""
    A = as_matrix(A)
    z = np.asarray(z, dtype=np.complex128)
    if z.ndim != 1 or z.shape[0] != A.N:
        raise DimensionError(f"z must have length N={A.N}, got shape {z.shape}")
    if A.is_zero:
        return 0j
    kernels = _backend.get_backend(backend)
    zre = np.ascontiguousarray(z.real)
    zim = np.ascontiguousarray(z.imag)
    re, im = _run(kernels.ie_poly_complex, (A.entries, zre, zim), A.M, workers)
    if not np.any(zim):
        re = _nonneg(re, zre)
    return complex(re, im)


def eval_R(A, lam, workers=1, backend=None):
    """Companion polynomial R(lam) = prod(lam) * F_A(1/lam), complement form."""
    A = as_matrix(A)
    lam = _point(A, lam)
    if A.is_zero:
        return EvalValue(0.0, True)
    kernels = _backend.get_backend(backend)
    value = float(_run(kernels.ie_companion_real, (A.entries, lam), A.M, workers))
    return EvalValue(_nonneg(value, lam), False)


def grad_F(A, lam, backend=None):
    """Exact gradient from multilinearity: dF/dlam_j = F|lam_j=1 - F|lam_j=0."""
    A = as_matrix(A)
    lam = _point(A, lam)
    grad = np.zeros(A.N)
    if A.is_zero:
        return grad
    probe = lam.copy()
    for j in range(A.N):
        probe[j] = 1.0
        hi = _F(A, probe, backend=backend)
        probe[j] = 0.0
        lo = _F(A, probe, backend=backend)
        probe[j] = lam[j]
        grad[j] = max(hi - lo, 0.0) if lam.min() >= 0 else hi - lo
    return grad


def grad_log_F(A, lam, backend=None):
    A = as_matrix(A)
    lam = _point(A, lam)
    value = 0.0 if A.is_zero else _F(A, lam, backend=backend)
    if not value > 0.0:
        raise DomainError("log undefined at this point: F(lambda) = 0")
    return grad_F(A, lam, backend=backend) / value


def is_zero_polynomial(A):
    """True iff F_A vanishes identically, i.e. F_A(1, ..., 1) = 0.

    All coefficients are non-negative, so F_A(1, ..., 1) = 0 exactly when no
    row-to-column injection uses only positive entries; that is decided by
    bipartite matching instead of a floating-point comparison.
    """
    return as_matrix(A).is_zero
