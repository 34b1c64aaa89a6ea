"""Coefficient-sequence algebra and numerical evaluation of Dirichlet series.

A CoefficientSequence is a lazily materialized a_1..a_N with either an
exact-integer or a binary64 payload.  Dirichlet convolution, multiplicative
extension and the reciprocal recurrence all act at the coefficient level
and are exact for the first N coefficients (divisors of n never exceed n,
so truncation cannot contaminate earlier entries).

Partial sums are accumulated ascending in n with Kahan compensation, so
results are reproducible whatever the surrounding parallelism.
"""

from dataclasses import dataclass
from math import isqrt, log
from typing import Optional, Union

import numpy as np

from .errors import SingularInputError
from .primes import first_n_primes, smooth_numbers


class _Kahan:
    """Compensated accumulator; works for float and complex alike."""

    __slots__ = ("total", "comp")

    def __init__(self, zero=0.0):
        self.total = zero
        self.comp = zero

    def add(self, x):
        y = x - self.comp
        t = self.total + y
        self.comp = (t - self.total) - y
        self.total = t


@dataclass
class EvalResult:
    value: Union[float, complex]
    terms_used: int
    tail_bound: Optional[float]  # None means "unavailable"


class CoefficientSequence:
    """Lazily materialized coefficients a_1..a_N of a Dirichlet series.

    kind is "int" (exact integers) or "real" (binary64).  A fill function
    produces any requested prefix deterministically; an optional pointwise
    accessor serves sparse queries (e.g. at smooth indices) without
    materializing everything below.  growth_exponent, when set, is a t
    with |a_n| <= n^t for all n; it backs the tail bounds.
    """

    def __init__(self, fill, kind, label, value_at=None, growth_exponent=None):
        if kind not in ("int", "real"):
            raise ValueError(f"unknown payload kind {kind!r}")
        self._fill = fill
        self.kind = kind
        self.label = label
        self._value_at = value_at
        self.growth_exponent = growth_exponent
        self._cache = []

    def __repr__(self):
        return f"CoefficientSequence({self.label!r}, kind={self.kind})"

    def materialize(self, n):
        """a_1..a_n as a list; prefixes of longer materializations."""
        if n < 1:
            raise ValueError(f"need n >= 1, got {n}")
        if n > len(self._cache):
            self._cache = list(self._fill(n))
            if len(self._cache) != n:
                raise RuntimeError(f"fill for {self.label} returned wrong length")
        return self._cache[:n]

    def at(self, n):
        """Single coefficient a_n."""
        if n < 1:
            raise ValueError(f"need n >= 1, got {n}")
        if self._value_at is not None:
            return self._value_at(n)
        if n > len(self._cache):
            self.materialize(n)
        return self._cache[n - 1]

    @property
    def has_pointwise(self):
        return self._value_at is not None


def ones(n=None):
    """a_j = 1 for all j: the zeta-function coefficients."""
    seq = CoefficientSequence(
        lambda N: [1] * N, "int", "zeta", value_at=lambda j: 1, growth_exponent=0.0
    )
    if n is not None:
        seq.materialize(n)
    return seq


def unit(n=None):
    """e = (1, 0, 0, ...): the two-sided convolution identity."""
    seq = CoefficientSequence(
        lambda N: [1] + [0] * (N - 1),
        "int",
        "unit",
        value_at=lambda j: 1 if j == 1 else 0,
        growth_exponent=0.0,
    )
    if n is not None:
        seq.materialize(n)
    return seq


def power_shift(t, n=None):
    """a_m = m^t.  Exact integers when t is a non-negative integer."""
    if t == 0:
        return ones(n)
    if float(t).is_integer() and t > 0:
        ti = int(t)
        seq = CoefficientSequence(
            lambda N: [m**ti for m in range(1, N + 1)],
            "int",
            f"power:t={_fmt_param(t)}",
            value_at=lambda j: j**ti,
            growth_exponent=float(t),
        )
    else:
        # m^t as exp(t ln m); relative error a few ulp
        seq = CoefficientSequence(
            lambda N: [float(m) ** t for m in range(1, N + 1)],
            "real",
            f"power:t={_fmt_param(t)}",
            value_at=lambda j: float(j) ** t,
            growth_exponent=float(t) if t > 0 else 0.0,
        )
    if n is not None:
        seq.materialize(n)
    return seq


def _fmt_param(v):
    if float(v).is_integer():
        return str(int(v))
    return repr(float(v))


def dirichlet_convolve(a, b, n=None, label=None):
    """c = a * b with c_m = sum_{d|m} a_d b_{m/d}; O(N log N)."""
    kind = "int" if a.kind == "int" and b.kind == "int" else "real"
    zero = 0 if kind == "int" else 0.0

    def fill(N):
        av = a.materialize(N)
        bv = b.materialize(N)
        c = [zero] * N
        for d in range(1, N + 1):
            ad = av[d - 1]
            if ad == 0:
                continue
            for m in range(d, N + 1, d):
                c[m - 1] += ad * bv[m // d - 1]
        return c

    seq = CoefficientSequence(fill, kind, label or f"conv({a.label},{b.label})")
    if n is not None:
        seq.materialize(n)
    return seq


def multiplicative_extend(h, n=None, label="multiplicative"):
    """c_1 = 1 and c_m = prod h(p, e) over the factorization of m."""
    probe = h(2, 1)
    kind = "int" if isinstance(probe, int) else "real"
    one = 1 if kind == "int" else 1.0

    def fill(N):
        spf = _spf_sieve(N)
        c = [one] * N
        for m in range(2, N + 1):
            rem = m
            val = one
            while rem > 1:
                p = int(spf[rem])
                e = 0
                while rem % p == 0:
                    e += 1
                    rem //= p
                val *= h(p, e)
            c[m - 1] = val
        return c

    def value_at(m):
        from .primes import factorize

        val = one
        for p, e in factorize(m):
            val *= h(p, e)
        return val

    seq = CoefficientSequence(fill, kind, label, value_at=value_at)
    if n is not None:
        seq.materialize(n)
    return seq


def _spf_sieve(limit):
    """Smallest prime factor table for 2..limit."""
    spf = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == p:
            sl = spf[p * p :: p]
            sl[sl == np.arange(p * p, limit + 1, p)] = p
    return spf


def reciprocal_coeffs(alpha, b, n=None, label=None):
    """Coefficients of 1/(alpha - g) where g has coefficients b, b_1 = 0.

    From f*(alpha*e - b) = e:  c_1 = 1/alpha and
    c_m = (1/alpha) * sum_{d|m, d>=2} b_d c_{m/d} for m >= 2.
    Integer payload is kept when alpha = 1 and b is exact.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    int_mode = b.kind == "int" and alpha == 1

    def fill(N):
        bv = b.materialize(N)
        if bv[0] != 0:
            raise ValueError("reciprocal base must have first coefficient 0")
        c = [0] * N if int_mode else [0.0] * N
        c[0] = 1 if int_mode else 1.0 / alpha
        if N == 1:
            return c
        divisors = [[] for _ in range(N + 1)]
        for d in range(2, N + 1):
            if bv[d - 1] != 0:
                for m in range(d, N + 1, d):
                    divisors[m].append(d)
        for m in range(2, N + 1):
            acc = 0 if int_mode else 0.0
            for d in divisors[m]:
                acc += bv[d - 1] * c[m // d - 1]
            c[m - 1] = acc if int_mode else acc / alpha
        return c

    seq = CoefficientSequence(
        fill, "int" if int_mode else "real", label or f"recip:alpha={_fmt_param(alpha)},base={b.label}"
    )
    if n is not None:
        seq.materialize(n)
    return seq


def drop_unit(a, label=None):
    """Same series with the n = 1 coefficient replaced by 0."""
    zero = 0 if a.kind == "int" else 0.0

    def fill(N):
        v = a.materialize(N)
        return [zero] + v[1:]

    value_at = None
    if a.has_pointwise:
        value_at = lambda j: zero if j == 1 else a.at(j)
    return CoefficientSequence(
        fill, a.kind, label or f"{a.label}-minus-unit", value_at=value_at,
        growth_exponent=a.growth_exponent,
    )


def _power_term(base, exponent):
    """base^exponent for real or complex exponent, base a positive integer."""
    return base ** exponent


def evaluate(a, s, n, tail=False):
    """Partial sum of a's Dirichlet series at s over the first n terms.

    Ascending n with compensated summation.  The tail bound is the
    integral comparison for |a_m| <= m^t envelopes and is reported only
    when Re(s) > t + 1; otherwise it is unavailable (None).
    """
    s = complex(s)
    real_mode = s.imag == 0.0
    av = a.materialize(n)
    if real_mode:
        sigma = s.real
        acc = _Kahan(0.0)
        for m, am in enumerate(av, 1):
            if am == 0:
                continue
            acc.add(am * m ** (-sigma))
        value = acc.total
    else:
        acc = _Kahan(0j)
        for m, am in enumerate(av, 1):
            if am == 0:
                continue
            acc.add(am * m ** (-s))
        value = acc.total
    return EvalResult(value, n, _integral_tail(a, s.real, n) if tail else None)


def _integral_tail(a, sigma, n):
    t = a.growth_exponent
    if t is None or sigma <= t + 1:
        return None
    # sum_{m>n} m^{t-sigma} <= integral_n^inf x^{t-sigma} dx
    return n ** (t + 1 - sigma) / (sigma - t - 1)


def evaluate_smooth(a, s, index, limit, tail=True):
    """Partial sum restricted to indices whose gpf is at most p_index."""
    s = complex(s)
    support = smooth_numbers(index, limit)
    real_mode = s.imag == 0.0
    acc = _Kahan(0.0 if real_mode else 0j)
    exponent = -s.real if real_mode else -s
    for j in support:
        aj = a.at(j)
        if aj == 0:
            continue
        acc.add(aj * j ** exponent)
    bound = rankin_tail_bound(a, s.real, index, limit) if tail else None
    return EvalResult(acc.total, len(support), bound)


def rankin_tail_bound(a, sigma, index, limit):
    """Bound on the smooth tail beyond `limit` via Rankin's trick.

    For |a_j| <= j^t:  sum_{smooth j > L} j^{t-sigma}
      <= L^{-theta} * prod_{j<=n} (1 - p_j^{t-sigma+theta})^{-1}
    for any 0 < theta < sigma - t; minimized over a theta grid.
    """
    t = a.growth_exponent
    if t is None or sigma <= t:
        return None
    primes = first_n_primes(index)
    best = None
    span = sigma - t
    for frac in np.linspace(0.05, 0.95, 19):
        theta = frac * span
        try:
            bound = limit ** (-theta)
            for p in primes:
                x = p ** (t - sigma + theta)
                bound /= 1.0 - x
        except OverflowError:
            continue
        if best is None or bound < best:
            best = bound
    return best


def euler_product_zeta_n(index, s):
    """The finite product prod_{j<=n} (1 - p_j^{-s})^{-1}."""
    s = complex(s)
    primes = first_n_primes(index)
    product = 1.0 + 0j
    for p in primes:
        x = p ** (-s)
        if abs(1.0 - x) < 1e-15:
            raise SingularInputError(f"1 - {p}^(-s) vanishes at s = {s}")
        product /= 1.0 - x
    return product if s.imag != 0 else product.real


def euler_product_construction_ii(index, r, s):
    """prod_{j<=n} (1 + p_j^{r-1-s} / (1 - p_j^{-s})), Re(s) > 0."""
    s = complex(s)
    if s.real <= 0:
        raise ValueError(f"need Re(s) > 0, got {s}")
    primes = first_n_primes(index)
    product = 1.0 + 0j
    for p in primes:
        x = p ** (-s)
        product *= 1.0 + p ** (r - 1 - s) / (1.0 - x)
    return product if s.imag != 0 else product.real


def zeta_real(sigma, tol=1e-12):
    """Riemann zeta on the real axis, sigma > 1, to absolute accuracy ~tol.

    Euler-Maclaurin with correction terms through the B_4 term; the cutoff
    M is chosen so the first omitted term (the standard remainder bound)
    is below tol/2.
    """
    if sigma <= 1:
        raise ValueError(f"zeta_real needs sigma > 1, got {sigma}")
    rising5 = sigma * (sigma + 1) * (sigma + 2) * (sigma + 3) * (sigma + 4)
    M = 16
    while rising5 / 30240.0 * M ** (-sigma - 5) > tol / 2 and M < 1 << 26:
        M *= 2
    acc = _Kahan()
    for m in range(1, M + 1):
        acc.add(m ** (-sigma))
    acc.add(M ** (1 - sigma) / (sigma - 1))
    acc.add(-0.5 * M ** (-sigma))
    acc.add(sigma / 12.0 * M ** (-sigma - 1))
    acc.add(-sigma * (sigma + 1) * (sigma + 2) / 720.0 * M ** (-sigma - 3))
    return acc.total
