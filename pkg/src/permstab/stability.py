"""Sampled certificates for the stability consequences of F_A.

H-stability itself (no zeros when every Re z_j > 0) cannot be established by
sampling. What can be checked numerically, at explicit tolerances, are its
testable faces:

* modulus dominance  |F(x + iy)| >= F(x)  for x > 0,
* real, non-positive roots of every restriction t -> F(tX + Y),
* midpoint log-concavity of F and concavity of F^(1/M).

Each check is a falsifiable detector. The t^2 + 1 control in the test suite
shows that the root certificate does reject.
"""
from dataclasses import asdict, dataclass, field

import numpy as np

from .core_eval import DomainError, as_matrix, eval_F_complex, eval_F_fast

X_BOX = (0.1, 1.1)
Y_HALF_WIDTH = 1.0


@dataclass(frozen=True)
class CertifyConfig:
    samples: int = 1000
    seed: int = 42
    tol: float = 1e-9
    imag_tol: float = 1e-6
    real_tol: float = 1e-8


@dataclass
class CheckResult:
    name: str
    passed: bool
    samples: int
    worst_margin: float
    details: dict = field(default_factory=dict)


@dataclass
class CertifyReport:
    seed: int
    zero_polynomial: bool
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.zero_polynomial and all(c.passed for c in self.checks)

    @property
    def verdict(self):
        if self.zero_polynomial:
            return "zero_polynomial"
        return "pass" if self.passed else "fail"

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "seed": self.seed,
            "zero_polynomial": self.zero_polynomial,
            "checks": [asdict(c) for c in self.checks],
        }


@dataclass
class RootCertificate:
    """Roots of a univariate restriction and the realness verdict.

    `coefficients` are in increasing power order. `roots` carries every root
    with multiplicity, including the exact zeros split off from vanishing
    low-order coefficients. Vanishing high-order coefficients (a lower true
    degree) are dropped.
    """

    coefficients: list
    roots: list
    max_imag_abs: float
    max_real_part: float
    passed: bool
    iterations: int
    converged: bool

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    @property
    def degree(self):
        return len(self.roots)


def _f(A, lam):
    return eval_F_fast(A, lam).value


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _require_nonzero(A):
    if A.is_zero:
        raise DomainError("F_A is the zero polynomial")


def restrict_bivariate(A, X, Y, nodes="roots_of_unity"):
    """Coefficients (increasing powers) of q(t) = F_A(tX + Y), degree <= M.

    q is sampled at M + 1 nodes and interpolated. The default nodes are the
    (M+1)-th roots of unity, where the interpolation is a discrete Fourier
    transform and perfectly conditioned. nodes="integer" samples at
    t = 0, 1, ..., M and solves the Vandermonde system instead; its error
    grows roughly like the Vandermonde condition number (~1e-10 relative at
    M = 6, ~1e-7 at M = 8).
    """
    A = as_matrix(A)
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    if X.shape != (A.N,) or Y.shape != (A.N,):
        raise DomainError(f"X and Y must have length N={A.N}")
    if np.any(X < 0) or np.any(Y < 0) or not np.all(X + Y > 0):
        raise DomainError("X, Y must be non-negative with X + Y strictly positive")
    n = A.M + 1
    if nodes == "integer":
        t = np.arange(n, dtype=np.float64)
        values = np.array([_f(A, tk * X + Y) for tk in t])
        return np.linalg.solve(np.vander(t, increasing=True), values)
    if nodes != "roots_of_unity":
        raise ValueError(f"unknown node set {nodes!r}")
    t = np.exp(2j * np.pi * np.arange(n) / n)
    values = np.array([eval_F_complex(A, tk * X + Y) for tk in t])
    values[0] = _f(A, X + Y)
    return np.fft.fft(values).real / n


def _polyval(c, z):
    """Horner evaluation of p and p' for ascending coefficients c."""
    p = np.full_like(z, c[-1])
    dp = np.zeros_like(z)
    for a in c[-2::-1]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def aberth(coeffs, max_iter=500, tol=1e-12):
    """All roots of the polynomial with ascending coefficients `coeffs`.

    Simultaneous Aberth-Ehrlich iteration started from points on a circle
    whose radius is the Cauchy bound; the start is deterministic. Returns
    (roots, iterations, converged).
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, dtype=np.complex128), 0, True
    lead = c[-1]
    radius = 1.0 + np.max(np.abs(c[:-1] / lead))
    k = np.arange(n)
    z = radius * np.exp(1j * (2 * np.pi * k / n + 0.4))
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        p, dp = _polyval(c, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = p / dp
            step = w / (1.0 - w * s)
        step = np.where(np.isfinite(step), step, 0.0)
        step[p == 0] = 0.0
        z = z - step
        if np.all(np.abs(step) <= tol * (1.0 + np.abs(z))):
            converged = True
            break
    return z, it, converged


def _taylor_shift(c, x):
    """Coefficients of p(x + u) in u, by repeated synthetic division."""
    b = np.array(c, dtype=np.result_type(c, x))
    n = len(b) - 1
    for k in range(n):
        for i in range(n - 1, k - 1, -1):
            b[i] += x * b[i + 1]
    return b


def _polish(c, x, k, steps=60):
    """Newton on p^(k-1), for which a k-fold root of p is a simple root."""
    d = np.polynomial.polynomial.polyder(c, k - 1)
    dd = np.polynomial.polynomial.polyder(d)
    for _ in range(steps):
        f = np.polynomial.polynomial.polyval(x, d)
        g = np.polynomial.polynomial.polyval(x, dd)
        if g == 0:
            break
        dx = f / g
        x = x - dx
        if abs(dx) <= 4 * np.finfo(float).eps * (1 + abs(x)):
            break
    return x


def _merge_clusters(c, z, radius, mult_tol):
    """Collapse root clusters that are consistent with an exact multiple root.

    A k-fold root is only resolved to about eps**(1/k) from its coefficients,
    so Aberth returns a spread cluster. Roots are grouped by single linkage
    (relative `radius`); a group of size k is replaced by k copies of its
    polished centre x when the Taylor coefficients b_0..b_{k-1} of p at x all
    fall below mult_tol times their absolute-value bound. Groups failing the
    test are left untouched.
    """
    n = len(z)
    label = list(range(n))

    def find(i):
        while label[i] != i:
            label[i] = label[label[i]]
            i = label[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            scale = 1.0 + max(abs(z[i]), abs(z[j]))
            if abs(z[i] - z[j]) <= radius * scale:
                label[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = np.array(z, dtype=np.complex128)
    for members in groups.values():
        k = len(members)
        if k == 1:
            continue
        x = _polish(c, complex(np.mean(z[members])), k)
        b = np.abs(_taylor_shift(c.astype(np.complex128), x))
        bound = _taylor_shift(np.abs(c), abs(x))
        if np.all(b[:k] <= mult_tol * bound[:k]):
            out[members] = x
    return out


def certify_roots(coeffs, imag_tol=1e-6, real_tol=1e-8, trim_tol=1e-11,
                  cluster_tol=1e-2, mult_tol=1e-9):
    """Check that a restriction has only real, non-positive roots.

    Passes iff every root r satisfies |Im r| <= imag_tol * (1 + |r|) and
    Re r <= real_tol * (1 + |r|). Coefficients below trim_tol * max|c| count
    as zero; `cluster_tol` and `mult_tol` control multiple-root detection.
    """
    c = np.asarray(coeffs, dtype=np.float64)
    if c.ndim != 1 or not np.any(c != 0):
        raise DomainError("coefficient vector is identically zero")
    cut = trim_tol * np.max(np.abs(c))
    big = np.flatnonzero(np.abs(c) > cut)
    lo, hi = big[0], big[-1]
    core = c[lo:hi + 1]
    found, iterations, converged = aberth(core)
    found = _merge_clusters(core, found, cluster_tol, mult_tol)
    roots = np.concatenate((np.zeros(lo, dtype=np.complex128), found))
    if len(roots):
        scale = 1.0 + np.abs(roots)
        passed = bool(np.all(np.abs(roots.imag) <= imag_tol * scale)
                      and np.all(roots.real <= real_tol * scale))
        max_imag = float(np.max(np.abs(roots.imag)))
        max_real = float(np.max(roots.real))
    else:
        passed, max_imag, max_real = True, 0.0, float("-inf")
    order = np.lexsort((roots.imag, roots.real))
    return RootCertificate(
        coefficients=[float(v) for v in c],
        roots=[complex(r) for r in roots[order]],
        max_imag_abs=max_imag,
        max_real_part=max_real,
        passed=passed,
        iterations=int(iterations),
        converged=bool(converged),
    )


def dominance_margin(A, x, y):
    """(|F(x + iy)|, F(x)) for one sample."""
    A = as_matrix(A)
    x = np.asarray(x, dtype=np.float64)
    lhs = abs(eval_F_complex(A, x + 1j * np.asarray(y, dtype=np.float64)))
    return lhs, _f(A, x)


def _dominance(A, rng, samples, tol, imag_scale=Y_HALF_WIDTH):
    worst = float("inf")
    worst_raw = float("inf")
    for _ in range(samples):
        x = rng.uniform(*X_BOX, size=A.N)
        y = rng.uniform(-1.0, 1.0, size=A.N) * imag_scale
        lhs, rhs = dominance_margin(A, x, y)
        raw = lhs - rhs
        worst_raw = min(worst_raw, raw)
        worst = min(worst, raw / max(1.0, rhs))
    if samples == 0:
        worst = worst_raw = 0.0
    return CheckResult(
        name="dominance",
        passed=bool(worst >= -tol),
        samples=samples,
        worst_margin=float(worst),
        details={"worst_raw_margin": float(worst_raw), "tol": tol},
    )


def certify_dominance(A, samples=1000, seed=42, tol=1e-9, imag_scale=Y_HALF_WIDTH):
    """Sample |F(x + iy)| >= F(x) with x in (0.1, 1.1)^N, y in (-1, 1)^N.

    worst_margin is min (|F(x+iy)| - F(x)) / max(1, F(x)); the check passes
    iff it is >= -tol. `imag_scale` rescales the y box (0 forces y = 0).
    """
    A = as_matrix(A)
    _require_nonzero(A)
    check = _dominance(A, _rng(seed), samples, tol, imag_scale)
    return CertifyReport(seed=seed, zero_polynomial=False, checks=[check])


def midpoint_margins(A, u, v):
    """Relative midpoint margins (log-concavity, M-th-root concavity).

    Returns F(m)^2 / (F(u) F(v)) - 1 and F(m)^(1/M) / mean(F(u)^(1/M), F(v)^(1/M)) - 1
    with m = (u + v) / 2; None where the right-hand side is zero and the
    inequality holds trivially.
    """
    A = as_matrix(A)
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    fu, fv, fm = _f(A, u), _f(A, v), _f(A, 0.5 * (u + v))
    prod = fu * fv
    lc = fm * fm / prod - 1.0 if prod > 0 else None
    root_mean = 0.5 * (fu ** (1.0 / A.M) + fv ** (1.0 / A.M))
    pm = max(fm, 0.0) ** (1.0 / A.M) / root_mean - 1.0 if root_mean > 0 else None
    return lc, pm


def _sample_pair(rng, n):
    u = rng.uniform(0.0, 1.0, size=n)
    v = rng.uniform(0.0, 1.0, size=n)
    # exercise the boundary of the orthant
    u[rng.random(n) < 0.25] = 0.0
    v[rng.random(n) < 0.25] = 0.0
    both = (u + v) == 0
    u[both] = rng.uniform(0.1, 1.0, size=int(both.sum()))
    return u, v


def _log_concavity(A, rng, samples, tol):
    worst_lc = worst_pm = float("inf")
    trivial_lc = trivial_pm = bad_lc = bad_pm = 0
    for _ in range(samples):
        u, v = _sample_pair(rng, A.N)
        lc, pm = midpoint_margins(A, u, v)
        if lc is None:
            trivial_lc += 1
        else:
            worst_lc = min(worst_lc, lc)
            bad_lc += lc < -tol
        if pm is None:
            trivial_pm += 1
        else:
            worst_pm = min(worst_pm, pm)
            bad_pm += pm < -tol
    worst_lc = 0.0 if worst_lc == float("inf") else worst_lc
    worst_pm = 0.0 if worst_pm == float("inf") else worst_pm
    return [
        CheckResult("log_concavity", bool(worst_lc >= -tol), samples, float(worst_lc),
                    {"violations": bad_lc, "trivial_samples": trivial_lc, "tol": tol}),
        CheckResult("root_concavity", bool(worst_pm >= -tol), samples, float(worst_pm),
                    {"violations": bad_pm, "trivial_samples": trivial_pm, "tol": tol}),
    ]


def certify_log_concavity(A, samples=1000, seed=42, tol=1e-9):
    """Midpoint tests of concavity for log F and F^(1/M) on random pairs."""
    A = as_matrix(A)
    _require_nonzero(A)
    checks = _log_concavity(A, _rng(seed), samples, tol)
    return CertifyReport(seed=seed, zero_polynomial=False, checks=checks)


def _roots(A, rng, samples, imag_tol, real_tol):
    worst_imag = 0.0
    worst_real = float("-inf")
    failures = 0
    for _ in range(samples):
        X = rng.uniform(0.0, 1.0, size=A.N)
        Y = rng.uniform(*X_BOX, size=A.N)
        cert = certify_roots(restrict_bivariate(A, X, Y), imag_tol, real_tol)
        for r in cert.roots:
            scale = 1.0 + abs(r)
            worst_imag = max(worst_imag, abs(r.imag) / scale)
            worst_real = max(worst_real, r.real / scale)
        failures += not cert.passed
    if worst_real == float("-inf"):
        worst_real = 0.0
    # margin: how far inside the tighter of the two tolerances the worst root sits
    margin = min(imag_tol - worst_imag, real_tol - worst_real)
    return CheckResult(
        name="roots",
        passed=failures == 0,
        samples=samples,
        worst_margin=float(margin),
        details={
            "failures": failures,
            "worst_rel_imag": float(worst_imag),
            "worst_rel_real": float(worst_real),
            "imag_tol": imag_tol,
            "real_tol": real_tol,
        },
    )


def certify_all(A, config=None):
    """Zero detection, then dominance, log-concavity and root certificates.

    A zero polynomial is reported through `zero_polynomial`; the other
    checks are skipped. Each check draws from its own child seed, so the
    report depends only on (matrix, config).
    """
    A = as_matrix(A)
    config = config or CertifyConfig()
    report = CertifyReport(seed=config.seed, zero_polynomial=A.is_zero)
    if A.is_zero:
        return report
    dom_seq, lc_seq, root_seq = np.random.SeedSequence(config.seed).spawn(3)
    report.checks.append(_dominance(A, np.random.default_rng(dom_seq), config.samples, config.tol))
    report.checks.extend(_log_concavity(A, np.random.default_rng(lc_seq), config.samples, config.tol))
    report.checks.append(_roots(A, np.random.default_rng(root_seq), config.samples,
                                config.imag_tol, config.real_tol))
    return report
