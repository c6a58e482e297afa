"""Independent reference computations used only by the tests."""
from itertools import permutations

import numpy as np


def permanent_by_permutations(B):
    B = np.asarray(B, dtype=float)
    k = B.shape[0]
    return sum(np.prod([B[i, s[i]] for i in range(k)]) for s in permutations(range(k)))


def F_by_injections(A, lam):
    """Sum over injections rows -> columns of prod A[i, s(i)] lam[s(i)]."""
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    total = 0.0
    for s in permutations(range(n), m):
        total += np.prod([A[i, s[i]] * lam[s[i]] for i in range(m)])
    return total


def R_by_injections(A, lam):
    """Complement form: each injection's column set S weighted by prod over S-bar."""
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    total = 0.0
    for s in permutations(range(n), m):
        rest = [j for j in range(n) if j not in s]
        total += np.prod([A[i, s[i]] for i in range(m)]) * np.prod([lam[j] for j in rest])
    return total


def central_difference(f, x, h=1e-5):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for j in range(len(x)):
        e = np.zeros_like(x)
        e[j] = h
        out[j] = (f(x + e) - f(x - e)) / (2 * h)
    return out
