"""Maximization of log F_A over the probability simplex.

log F_A is concave on the non-negative orthant, so the Frank-Wolfe gap

    gap(lam) = max_j g_j - <g, lam>,   g = grad log F_A(lam)

bounds log F_A(lam*) - log F_A(lam) from above and serves as a stopping
certificate.

Each iteration moves along a single vertex direction, lam -> (1 - a) lam + a e_j.
Because F_A is multilinear and homogeneous of degree M, the objective on
that segment has the closed form

    F((1 - a) lam + a e_j) = (1 - a)^(M-1) ((1 - a) F + a dF/dlam_j),

and its maximizer is a* = (r - M) / (M (r - 1)), r = g_j. The step starts
from a* clipped to the feasible interval, then halves until the objective
does not decrease (up to rounding, see ROUNDING_SLACK).
"""
from dataclasses import dataclass, field

import numpy as np

from .core_eval import DomainError, _F, as_matrix, grad_F, subset_permanents

# Near the optimum a step gains about gap**2 in log F, far below the rounding
# of a direct evaluation. A step the closed-form model certifies as an ascent
# is accepted when its evaluated objective is within this many ulps.
ROUNDING_SLACK = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class MaximizeConfig:
    max_iters: int = 10000
    gap_tol: float = 1e-8
    line_search_shrink: float = 0.5
    seed: int = 0
    max_halvings: int = 60
    away_steps: bool = True
    step: str = "exact"

    def __post_init__(self):
        if not self.gap_tol > 0:
            raise ValueError("gap_tol must be positive")
        if not 0 < self.line_search_shrink < 1:
            raise ValueError("line_search_shrink must lie in (0, 1)")
        if self.step not in ("exact", "backtracking"):
            raise ValueError(f"unknown step rule {self.step!r}")


@dataclass
class MaximizeReport:
    argmax: list
    log_value: float
    fw_gap: float
    iterations: int
    converged: bool
    trace: list = field(default_factory=list)

    def to_dict(self):
        return {
            "argmax": self.argmax,
            "log_value": self.log_value,
            "value": float(np.exp(self.log_value)),
            "fw_gap": self.fw_gap,
            "iterations": self.iterations,
            "converged": self.converged,
            "trace": [{"log_value": lv, "fw_gap": g} for lv, g in self.trace],
        }


def _log_grad(A, lam):
    value = _F(A, lam)
    if not value > 0:
        raise DomainError("log undefined at this point: F(lambda) = 0")
    return value, grad_F(A, lam) / value


def _simplex_point(A, lam):
    lam = np.asarray(lam, dtype=np.float64)
    if lam.shape != (A.N,):
        raise DomainError(f"lambda must have length N={A.N}")
    if np.any(lam < 0) or abs(lam.sum() - 1.0) > 1e-12:
        raise DomainError("lambda must lie on the probability simplex")
    return lam


def fw_gap(A, lam):
    """max_j d_j log F - sum_j lam_j d_j log F at a simplex point."""
    A = as_matrix(A)
    lam = _simplex_point(A, lam)
    if A.is_zero:
        raise DomainError("log undefined at this point: F(lambda) = 0")
    _, g = _log_grad(A, lam)
    return float(np.max(g) - g @ lam)


def _exact_step(r, m, lo, hi):
    """Maximizer of (1 - a)^(m-1) ((1 - a) + a r) over [lo, hi]."""
    slope = r - m  # derivative of the log at a = 0
    if slope > 0:
        return min(hi, slope / (m * (r - 1.0)))
    if slope < 0:
        if r > 1.0:
            return max(lo, slope / (m * (r - 1.0)))
        return lo
    return 0.0


def _model_gain(r, m, a):
    """Exact change of log F along the segment, from the closed form."""
    return (m - 1) * np.log1p(-a) + np.log1p(a * (r - 1.0))


def _move(lam, j, a, lo):
    new = (1.0 - a) * lam
    new[j] += a
    if a == lo:
        new[j] = 0.0
    np.clip(new, 0.0, None, out=new)
    return new / new.sum()


def maximize_log_F(A, config=None):
    """Frank-Wolfe ascent of log F_A on the simplex from the uniform point.

    The forward direction is the vertex with the largest partial derivative
    (lowest index on ties). With config.away_steps the iteration may instead
    move away from the support vertex with the smallest partial, which
    removes the zig-zagging of plain Frank-Wolfe at optima on the boundary
    of the simplex. Hitting max_iters is not an error: the report then
    carries converged=False.
    """
    A = as_matrix(A)
    config = config or MaximizeConfig()
    if A.is_zero:
        raise DomainError("F_A is the zero polynomial; log F is undefined everywhere")
    m = A.M
    lam = np.full(A.N, 1.0 / A.N)
    value, g = _log_grad(A, lam)
    log_value = float(np.log(value))
    trace = []
    iterations = 0
    while True:
        inner = float(g @ lam)
        s = int(np.argmax(g))
        gap = float(g[s] - inner)
        trace.append((log_value, gap))
        if gap <= config.gap_tol or iterations >= config.max_iters:
            break
        j, lo, hi = s, 0.0, 1.0
        if config.away_steps:
            support = np.flatnonzero(lam > 0)
            a_idx = int(support[np.argmin(g[support])])
            if inner - g[a_idx] > gap and lam[a_idx] < 1.0:
                j, lo, hi = a_idx, -lam[a_idx] / (1.0 - lam[a_idx]), 0.0
        if config.step == "exact":
            a = _exact_step(g[j], m, lo, hi)
        else:
            a = hi if j == s else lo
        slack = ROUNDING_SLACK * max(1.0, abs(log_value))
        accepted = False
        for _ in range(config.max_halvings + 1):
            if a == 0.0:
                break
            cand = _move(lam, j, a, lo)
            if np.array_equal(cand, lam):
                break
            cand_value = _F(A, cand)
            if cand_value > 0:
                cand_log = np.log(cand_value)
                if cand_log >= log_value or (
                    _model_gain(g[j], m, a) > 0 and cand_log >= log_value - slack
                ):
                    accepted = True
                    break
            a *= config.line_search_shrink
        if not accepted:
            break
        lam = cand
        value, g = _log_grad(A, lam)
        log_value = float(np.log(value))
        iterations += 1
    return MaximizeReport(
        argmax=[float(v) for v in lam],
        log_value=log_value,
        fw_gap=gap,
        iterations=iterations,
        converged=bool(gap <= config.gap_tol),
        trace=trace,
    )


def _compositions(total, parts):
    """All non-negative integer vectors of length `parts` summing to `total`."""
    if parts == 1:
        return np.array([[total]])
    if parts == 2:
        a = np.arange(total + 1)
        return np.stack((a, total - a), axis=1)
    if parts == 3:
        i, j = np.triu_indices(total + 1)
        return np.stack((i, j - i, total - j), axis=1)
    return np.concatenate([
        np.concatenate((np.full((len(sub), 1), k), sub), axis=1)
        for k in range(total + 1)
        for sub in [_compositions(total - k, parts - 1)]
    ])


def grid_search_oracle(A, resolution=1e-3, max_n=4):
    """Exhaustive maximization of log F on the simplex lattice of step `resolution`.

    Independent of the inclusion-exclusion evaluator: F is rebuilt from its
    brute-force coefficients Per(A_S). Returns (best point, best log value).
    """
    A = as_matrix(A)
    if A.N > max_n:
        raise ValueError(f"grid oracle is limited to N <= {max_n}, got N={A.N}")
    steps = int(round(1.0 / resolution))
    terms = subset_permanents(A)
    best_val = -np.inf
    best_pt = None
    # chunk on the first coordinate to bound memory
    for first in range(steps + 1):
        rest = _compositions(steps - first, A.N - 1)
        pts = np.concatenate((np.full((len(rest), 1), first), rest), axis=1) / steps
        vals = np.zeros(len(pts))
        for S, per in terms:
            vals += per * np.prod(pts[:, list(S)], axis=1)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best_pt = vals[i], pts[i]
    log_best = float(np.log(best_val)) if best_val > 0 else float("-inf")
    return [float(v) for v in best_pt], log_best
