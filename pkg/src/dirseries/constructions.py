"""The concrete series families and their root-finding companions.

Covers the prime-power series g and its truncations, the two series
realizing a prescribed gap between the absolute-convergence abscissa and
its smooth-subseries counterpart, the reciprocal family 1/(alpha - g)
with the roots rho and rho_n, and the ordered-factorization coefficients
of 1/(2 - zeta^m).
"""

from dataclasses import dataclass, field
from math import isqrt, log
from typing import Optional

import numpy as np

from .errors import NoRootError
from .primes import factorize, first_n_primes, is_prime_power, sieve_primes
from .series import (
    CoefficientSequence,
    _fmt_param,
    dirichlet_convolve,
    drop_unit,
    ones,
    power_shift,
    reciprocal_coeffs,
    unit,
    zeta_real,
)


@dataclass
class RhoResult:
    rho: float
    bracket: tuple
    residual: float
    iterations: int
    smooth_index: Optional[int] = None


def _prime_power_value(r, p, exact):
    return p ** (int(r) - 1) if exact else float(p) ** (r - 1)


def g_coeffs(r, n=None):
    """Coefficients of sum_p p^{r-1-s}/(1 - p^{-s}).

    Expanding each summand geometrically puts p^{r-1} at every prime
    power p^k (k >= 1) and 0 elsewhere, including 0 at index 1.
    """
    if r < 0:
        raise ValueError(f"need r >= 0, got {r}")
    exact = float(r).is_integer() and r >= 1
    zero = 0 if exact else 0.0

    def fill(N):
        c = [zero] * N
        if N >= 2:
            for p in sieve_primes(N).primes:
                val = _prime_power_value(r, p, exact)
                q = p
                while q <= N:
                    c[q - 1] = val
                    q *= p
        return c

    def value_at(m):
        if m == 1:
            return zero
        p = is_prime_power(m)
        if p is None:
            return zero
        return _prime_power_value(r, p, exact)

    return CoefficientSequence(
        fill,
        "int" if exact else "real",
        f"g:r={_fmt_param(r)}",
        value_at=value_at,
        growth_exponent=max(0.0, r - 1.0),
    )


def g_truncated_eval(r, index, sigma):
    """Closed-form sum_{j<=n} p_j^{r-1-sigma}/(1 - p_j^{-sigma}), sigma > 0."""
    if sigma <= 0:
        raise ValueError(f"need sigma > 0, got {sigma}")
    total = 0.0
    for p in first_n_primes(index):
        total += p ** (r - 1 - sigma) / (1.0 - p ** (-sigma))
    return total


def _unit_plus_g(r):
    g = g_coeffs(r)
    one = 1 if g.kind == "int" else 1.0

    def fill(N):
        v = g.materialize(N)
        return [one] + v[1:]

    return CoefficientSequence(
        fill, g.kind, f"1+g:r={_fmt_param(r)}",
        value_at=lambda m: one if m == 1 else g.at(m),
    )


def construction_i_coeffs(r, n=None):
    """Coefficients of (sum_m m^{r-1} m^{-s}) * (1 + g(s)).

    All positive; c_p = 2 p^{r-1} at primes and c_1 = 1.
    """
    if r < 0:
        raise ValueError(f"need r >= 0, got {r}")
    base = power_shift(r - 1)
    eg = _unit_plus_g(r)
    seq = dirichlet_convolve(base, eg, label=f"ci:r={_fmt_param(r)}")

    def value_at(m):
        # divisor sum directly; the sparse factor has support {1} U prime powers
        total = 0 if seq.kind == "int" else 0.0
        for d in _divisors(m):
            w = eg.at(m // d)
            if w != 0:
                total += base.at(d) * w
        return total

    seq._value_at = value_at
    if n is not None:
        seq.materialize(n)
    return seq


def _divisors(m):
    out = [1]
    for p, e in factorize(m):
        out = [d * p**k for d in out for k in range(e + 1)]
    out.sort()
    return out


def construction_ii_coeffs(r, n=None):
    """Multiplicative sequence with c at p^k equal to p^{r-1}: c_m = radical(m)^{r-1}."""
    if r < 0:
        raise ValueError(f"need r >= 0, got {r}")
    exact = float(r).is_integer() and r >= 1

    def fill(N):
        rad = np.ones(N + 1, dtype=np.int64)
        mask = np.ones(N + 1, dtype=bool)
        mask[:2] = False
        for p in range(2, N + 1):
            if mask[p]:
                if p * p <= N:
                    mask[p * p :: p] = False
                rad[p::p] *= p
        if exact:
            vals = rad[1:] ** (int(r) - 1)
            return [int(v) for v in vals]
        return list(np.asarray(rad[1:], dtype=float) ** (r - 1.0))

    def value_at(m):
        val = 1 if exact else 1.0
        for p, _ in factorize(m):
            val *= _prime_power_value(r, p, exact)
        return val

    seq = CoefficientSequence(
        fill,
        "int" if exact else "real",
        f"cii:r={_fmt_param(r)}",
        value_at=value_at,
        growth_exponent=max(0.0, r - 1.0),
    )
    if n is not None:
        seq.materialize(n)
    return seq


def find_rho(g_eval, alpha, tol=1e-10, domain_min=0.0, max_expand=200):
    """Solve g(rho) = alpha for a strictly decreasing g on (domain_min, inf).

    A bracket [lo, hi] with g(lo) > alpha > g(hi) is grown by halving lo
    toward domain_min and doubling hi outward; bisection then shrinks it
    until both the width and the midpoint residual are within tol.
    """
    if alpha <= 0:
        raise ValueError(f"need alpha > 0, got {alpha}")

    def g(x):
        try:
            return g_eval(x)
        except OverflowError:
            return float("inf")

    lo = domain_min + 1.0
    steps = 0
    while g(lo) <= alpha:
        lo = domain_min + (lo - domain_min) / 2.0
        steps += 1
        if steps > max_expand:
            raise NoRootError(f"no sigma with g > {alpha} found near the domain edge")
    hi = lo + 1.0
    step = 1.0
    steps = 0
    while g(hi) >= alpha:
        step *= 2.0
        hi += step
        steps += 1
        if steps > max_expand:
            raise NoRootError(f"g stays above {alpha}; no root to the right")

    iterations = 0
    mid = 0.5 * (lo + hi)
    residual = abs(g(mid) - alpha)
    while (hi - lo > tol or residual > tol) and iterations < 500:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # float resolution exhausted
            break
        gm = g(mid)
        residual = abs(gm - alpha)
        if gm > alpha:
            lo = mid
        else:
            hi = mid
        iterations += 1
    return RhoResult(0.5 * (lo + hi), (lo, hi), residual, iterations)


class _SmoothSeriesEvaluator:
    """Smooth-restricted partial sums of a base series with controlled tails.

    The enumeration limit starts at `limit` and doubles until the per-prime
    geometric (Rankin) tail estimate at the requested sigma drops below the
    precision target; the enumerated support is cached and reused.
    """

    MAX_TERMS = 2_000_000

    def __init__(self, base, index, limit):
        self.base = base
        self.index = index
        self.primes = first_n_primes(index)
        self.limit = int(limit)
        self._values = None
        self._support_limit = 0

    def _tail_bound(self, sigma, L):
        t = self.base.growth_exponent or 0.0
        if sigma <= t:
            return float("inf")
        best = float("inf")
        for frac in np.linspace(0.1, 0.9, 9):
            theta = frac * (sigma - t)
            bound = L ** (-theta)
            for p in self.primes:
                bound /= 1.0 - p ** (t - sigma + theta)
            best = min(best, bound)
        return best

    def _required_limit(self, sigma, eps):
        L = self.limit
        while self._tail_bound(sigma, L) > eps and L < 10**30:
            L *= 2
        return L

    def _ensure_support(self, L):
        from .primes import smooth_numbers

        if L <= self._support_limit:
            return
        support = smooth_numbers(self.index, L)
        if len(support) > self.MAX_TERMS:
            raise NoRootError(
                f"smooth support for index {self.index} exceeds "
                f"{self.MAX_TERMS} terms at limit {L}"
            )
        self._support = support
        self._floats = np.array([float(j) for j in support])
        self._values = np.array([float(self.base.at(j)) for j in support])
        self._support_limit = L

    def eval(self, sigma, eps):
        """Partial sum over smooth j >= 2, with tail below eps when possible."""
        L = self._required_limit(sigma, eps)
        self._ensure_support(L)
        terms = self._values * self._floats ** (-sigma)
        # fsum: exactly rounded, independent of any partition of the work
        from math import fsum

        return fsum(terms), self._tail_bound(sigma, L)


def rho_smooth(g_base, alpha, index, tol=1e-8, limit=10**6):
    """Root of the p_index-smooth restriction g_n(rho_n) = alpha.

    Evaluation precision follows the bisection: coarse while the sign
    decision is clear, tol/10 near the root.
    """
    evaluator = _SmoothSeriesEvaluator(g_base, index, limit)

    def g(sigma):
        eps = 1e-3
        while True:
            val, err = evaluator.eval(sigma, eps)
            if err <= tol / 10.0 or err <= abs(val - alpha) / 4.0:
                return val
            eps = max(tol / 10.0, abs(val - alpha) / 8.0, eps / 100.0)
            if eps <= tol / 10.0:
                val, err = evaluator.eval(sigma, tol / 10.0)
                return val

    res = find_rho(g, alpha, tol=tol, domain_min=0.0)
    res.smooth_index = index
    return res


def rho_sequence(g_base, alpha, n_max, tol=1e-8, limit=10**6):
    """Roots rho_n for n = 1..n_max; indices whose bracket search fails
    (alpha out of range for that smooth truncation) are skipped."""
    results = []
    for index in range(1, n_max + 1):
        try:
            results.append(rho_smooth(g_base, alpha, index, tol=tol, limit=limit))
        except NoRootError:
            continue
    return results


def ordered_factorizations_bruteforce(n, min_factor=2):
    """Count ordered tuples of integers >= min_factor with product n.

    Pure enumeration over first factors (no memoized counts), so it stays
    independent of the reciprocal recurrence it is used to check.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n == 1:
        return 1
    total = 0
    for d in _divisors(n):
        if d >= min_factor:
            total += ordered_factorizations_bruteforce(n // d, min_factor)
    return total


def zeta_power_minus_one(m):
    """Coefficients of zeta^m - 1 (exact integers)."""
    acc = ones()
    for _ in range(m - 1):
        acc = dirichlet_convolve(acc, ones())
    return drop_unit(acc, label=f"zeta^{m}-1")


def kalmar_dm_coeffs(m, n=None):
    """Integer coefficients of 1/(2 - zeta^m).

    With b the coefficients of zeta^m - 1 this is 1/(1 - b), i.e. the
    reciprocal recurrence at alpha = 1; for m = 1 the coefficients count
    ordered factorizations into factors >= 2.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    seq = reciprocal_coeffs(1, zeta_power_minus_one(m), label=f"kalmar:m={m}")
    if n is not None:
        seq.materialize(n)
    return seq


def rho_m(m, tol=1e-10):
    """The root of zeta(sigma)^m = 2 on (1, inf)."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")

    def g(sigma):
        return zeta_real(sigma, tol=min(1e-13, tol / 100.0)) ** m - 1.0

    return find_rho(g, 1.0, tol=tol, domain_min=1.0)
