"""The acceptance battery behind `ds verify`.

Each check is a desk-scale numerical reproduction of an identity the
series constructions must satisfy.  Checks are deterministic: randomized
inputs draw from a seeded generator.  `quick` runs reduced sizes.
"""

import io
import math
import random
import time
from dataclasses import dataclass

from . import cli as _cli
from .abscissa import estimate_delta_a, estimate_sigma_a, estimate_sigma_a_smooth
from .constructions import (
    construction_i_coeffs,
    construction_ii_coeffs,
    kalmar_dm_coeffs,
    rho_m,
    rho_sequence,
    zeta_power_minus_one,
)
from .kernel import KernelSpec, gram_matrix, kappa, membership_ratio
from .primes import sieve_primes
from .series import (
    drop_unit,
    euler_product_zeta_n,
    evaluate_smooth,
    ones,
    power_shift,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def check_euler_smooth_equivalence(quick, rng):
    """Smooth zeta partial sums against the finite Euler product."""
    worst = 0.0
    n_max = 2 if quick else 4
    limit = 10**5 if quick else 10**6
    for index in range(1, n_max + 1):
        for s in (0.8, 1.0, 2.0):
            res = evaluate_smooth(ones(), s, index, limit)
            target = euler_product_zeta_n(index, s)
            diff = abs(res.value - target)
            if res.tail_bound is None or diff > res.tail_bound:
                return False, f"n={index} s={s}: diff {diff:.3e} exceeds tail bound"
            if s == 2.0:
                worst = max(worst, diff)
                if diff > 1e-3:
                    return False, f"n={index} s=2: diff {diff:.3e} > 1e-3"
    return True, f"worst s=2 gap {worst:.2e}"


def check_construction_i(quick, rng):
    """c_p = 2 p^{r-1} at primes; c at powers of 2 stays >= 2^{r-1}."""
    p_limit = 1000 if quick else 10**4
    table = sieve_primes(p_limit).primes
    for r in (0.0, 0.5, 1.0, 2.5):
        seq = construction_i_coeffs(r)
        values = seq.materialize(p_limit)
        for p in table:
            expect = 2.0 * float(p) ** (r - 1.0)
            if abs(values[p - 1] - expect) > 1e-12 * expect:
                return False, f"r={r} p={p}: c_p = {values[p - 1]} != {expect}"
        floor = 2.0 ** (r - 1.0)
        for m in range(1, 21):
            if seq.at(2**m) < floor * (1.0 - 1e-12):
                return False, f"r={r}: c_(2^{m}) below {floor}"
    return True, f"all primes <= {p_limit}, four r values"


def check_construction_ii(quick, rng):
    """Multiplicativity, the n^{r-1} bound, and both abscissa estimates."""
    n_cap = 10**4 if quick else 10**5
    seq2 = construction_ii_coeffs(2.0)
    values = seq2.materialize(n_cap)
    pairs = 0
    while pairs < 200:
        m = rng.randrange(2, 317)
        n = rng.randrange(2, 317)
        if m * n > n_cap or math.gcd(m, n) != 1:
            continue
        if values[m * n - 1] != values[m - 1] * values[n - 1]:
            return False, f"c_({m}*{n}) != c_{m} * c_{n}"
        pairs += 1
    for n in range(1, n_cap + 1):
        if values[n - 1] > n:  # r = 2: bound is n^{r-1} = n, exact integers
            return False, f"c_{n} = {values[n - 1]} exceeds n"
    big = 10**5 if quick else 10**6
    for r, seq in ((1.0, construction_ii_coeffs(1.0)), (2.0, seq2)):
        est = estimate_sigma_a(seq, big).estimate
        if abs(est - r) > 0.1:
            return False, f"r={r}: sigma_a slope {est:.4f} off by > 0.1"
    # 5-smooth support up to 1e10 is only ~2000 numbers, so the large limit
    # (needed for the local exponent to settle below 0.15) is cheap either way
    smooth_limit = 10**10
    for index in range(1, 4):
        est = estimate_sigma_a_smooth(seq2, index, smooth_limit).estimate
        if est > 0.15:
            return False, f"smooth n={index}: slope {est:.4f} > 0.15"
    return True, "multiplicative, bounded, slopes in tolerance"


def check_zeta_baseline(quick, rng):
    """sigma_a slopes for zeta are exactly 1; delta estimate at limit 10^6."""
    report = estimate_sigma_a(ones(), 10**5 if quick else 10**6)
    if any(slope != 1.0 for _, slope in report.checkpoint_slopes):
        return False, f"zeta slopes not identically 1: {report.checkpoint_slopes}"
    if quick:
        return True, "slope identity only (quick)"
    delta = estimate_delta_a(ones(), 3, 10**6)
    if delta.delta_estimate > 0.15:
        return False, (
            f"delta estimate {delta.delta_estimate:.4f} > 0.15 at limit 1e6 "
            "(finite-size local exponent of the 5-smooth count)"
        )
    return True, f"delta estimate {delta.delta_estimate:.4f}"


def check_kalmar_oracle(quick, rng):
    """Reciprocal-recurrence coefficients against tuple enumeration."""
    n_cap = 300 if quick else 2000
    seq = kalmar_dm_coeffs(1)
    values = seq.materialize(n_cap)

    divisors = [[] for _ in range(n_cap + 1)]
    for d in range(2, n_cap + 1):
        for m in range(d, n_cap + 1, d):
            divisors[m].append(d)

    def enumerate_count(n):
        if n == 1:
            return 1
        return sum(enumerate_count(n // d) for d in divisors[n])

    for n in range(1, n_cap + 1):
        if values[n - 1] != enumerate_count(n):
            return False, f"d_1({n}) = {values[n - 1]} != enumeration"

    b = zeta_power_minus_one(1)
    bv = b.materialize(n_cap)
    for n in range(1, n_cap + 1):
        acc = values[n - 1]  # alpha = 1 contribution, d = 1 term of (e - b)
        for d in divisors[n]:
            acc -= bv[d - 1] * values[n // d - 1]
        expect = 1 if n == 1 else 0
        if acc != expect:
            return False, f"convolution residual at n={n}: {acc - expect}"
    return True, f"exact match through n = {n_cap}"


def check_root_finding(quick, rng):
    """zeta(rho) = 2 against the frozen independent bracket."""
    res = rho_m(1, tol=1e-8)
    if not 1.7286462 <= res.rho <= 1.7286482:
        return False, f"rho = {res.rho!r} outside [1.7286462, 1.7286482]"
    if res.residual > 1e-8:
        return False, f"residual {res.residual:.2e} > 1e-8"
    return True, f"rho = {res.rho:.9f}, residual {res.residual:.1e}"


def check_rho_sequence(quick, rng):
    """Monotone smooth-restricted roots converging toward rho."""
    tol = 1e-8
    n_max = 4 if quick else 10
    base = drop_unit(ones(), label="zeta-minus-one")
    seq = rho_sequence(base, 1.0, n_max, tol=tol, limit=10**6 if quick else 10**7)
    if len(seq) != n_max:
        return False, f"only {len(seq)} of {n_max} roots bracketed"
    if abs(seq[0].rho - 1.0) > 1e-8:
        return False, f"rho_1 = {seq[0].rho!r} != 1 within 1e-8"
    rho = rho_m(1, tol=tol).rho
    for prev, cur in zip(seq, seq[1:]):
        if cur.rho < prev.rho - 2 * tol:
            return False, f"rho_{cur.smooth_index} decreased"
    if any(r.rho > rho + 2 * tol for r in seq):
        return False, "some rho_n exceeds rho"
    gap = rho - seq[-1].rho
    if not quick and gap >= 0.1:
        return False, f"rho - rho_10 = {gap:.4f} >= 0.1"
    return True, f"rho - rho_{n_max} = {gap:.4f}"


def _random_points(rng, count, re_min):
    return [
        complex(re_min + 2.0 * rng.random(), -3.0 + 6.0 * rng.random())
        for _ in range(count)
    ]


def check_kernel(quick, rng):
    """Hermitian symmetry, PSD pivots, and the membership partial sum."""
    n_terms = 1500 if quick else 4000
    sets = 6 if quick else 20
    cases = [(ones(), 1.0), (construction_ii_coeffs(2.0), 2.0)]
    for seq, sigma_a in cases:
        spec = KernelSpec(seq, sigma_a, 0.0)
        for _ in range(sets):
            points = _random_points(rng, rng.randrange(2, 9), sigma_a / 2.0 + 0.25)
            result = gram_matrix(spec, points, n_terms)
            herm = abs(result.matrix - result.matrix.conj().T).max()
            scale = abs(result.matrix).max()
            if herm > 1e-12 * scale:
                return False, f"Hermitian defect {herm:.2e}"
            if not result.psd:
                return False, f"PSD check failed, min pivot {result.min_pivot:.2e}"
        s, u = complex(sigma_a, 0.7), complex(sigma_a + 0.3, -1.1)
        a_val = kappa(spec, s, u, 500).value
        b_val = kappa(spec, u, s, 500).value
        if abs(a_val - b_val.conjugate()) > 1e-12 * abs(a_val):
            return False, "kappa symmetry violated"
    spec = KernelSpec(ones(), 1.0, 0.0)
    res = membership_ratio(spec, power_shift(-1.0), 10**5 if quick else 10**6)
    if not 1.6449 <= res.value <= 1.6450:
        return False, f"membership sum {res.value!r} outside [1.6449, 1.6450]"
    return True, f"membership sum {res.value:.6f}"


def check_exploration(quick, rng):
    """The open-ended slope measurements run and emit finite reports."""
    import json

    limit = "100000" if quick else "1000000"
    commands = [
        ["abscissa", "--series", "ci:r=2", "--smooth-index", "3", "--limit", limit],
        ["delta", "--series", "cii:r=0.5", "--max-index", "3", "--limit", limit],
    ]
    for argv in commands:
        out = io.StringIO()
        code = _cli.main(argv, out=out, err=out)
        if code != 0:
            return False, f"`ds {' '.join(argv)}` exited {code}"
        payload = json.loads(out.getvalue())
        reports = (
            [payload]
            if "checkpoint_slopes" in payload
            else [rep for _, rep in payload["per_n"]]
        )
        for rep in reports:
            if "caveat" not in rep:
                return False, "report lacks a caveat field"
            slopes = [s for _, s in rep["checkpoint_slopes"]]
            if not all(math.isfinite(s) for s in slopes):
                return False, "non-finite slope"
    return True, "exploration reports emitted"


_CHECKS = [
    ("criterion-1 euler-product/smooth-sum equivalence", check_euler_smooth_equivalence),
    ("criterion-2 construction-i coefficient identity", check_construction_i),
    ("criterion-3 construction-ii multiplicative family", check_construction_ii),
    ("criterion-4 zeta-series baseline", check_zeta_baseline),
    ("criterion-5 ordered-factorization oracle", check_kalmar_oracle),
    ("criterion-6 root finding", check_root_finding),
    ("criterion-7 rho_n monotonicity", check_rho_sequence),
    ("criterion-8 kernel checks", check_kernel),
    ("criterion-9 exploration commands", check_exploration),
]


def run_battery(quick=False, seed=20240801):
    """Run every check; the final entry is the overall runtime budget."""
    results = []
    total = 0.0
    for name, func in _CHECKS:
        rng = random.Random(seed)
        start = time.perf_counter()
        try:
            passed, detail = func(quick, rng)
        except Exception as exc:  # a crashed check is a failed check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        total += elapsed
        results.append(CheckResult(name, passed, detail, elapsed))
    results.append(
        CheckResult(
            "criterion-10 runtime budget",
            total < 180.0,
            f"battery took {total:.1f}s (budget 180s)",
            0.0,
        )
    )
    return results
