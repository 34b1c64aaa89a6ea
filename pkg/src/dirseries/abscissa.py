"""Growth-slope estimation of convergence abscissas.

The estimator is deliberately plain: with A(N) the partial sum of the
(non-negative) coefficients, the local exponent between geometric
checkpoints, (log A(N_{k+1}) - log A(N_k)) / (log N_{k+1} - log N_k),
tracks the abscissa of absolute convergence when it is >= 0.  The last
two-point slope is the reported estimate; no extrapolation is applied,
and a caveat field carries drift warnings instead.
"""

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .primes import smooth_numbers

FLAT_RATIO = 1e-9
DRIFT_WARN = 0.02


@dataclass
class AbscissaReport:
    estimate: float
    checkpoint_slopes: List[Tuple[int, float]]
    method: str
    caveat: Optional[str]
    global_slope: float


@dataclass
class DeltaReport:
    per_n: List[Tuple[int, AbscissaReport]]
    delta_estimate: float


@dataclass
class ConvergenceTable:
    sigmas: List[float]
    ns: List[int]
    values: List[List[float]]  # one row per N, one column per sigma


def _slope_report(positions, sums):
    """Common assembly: positions ascending, sums the matching A values."""
    slopes = []
    for (x0, a0), (x1, a1) in zip(zip(positions, sums), zip(positions[1:], sums[1:])):
        slopes.append((x1, (math.log(a1) - math.log(a0)) / (math.log(x1) - math.log(x0))))
    if not slopes:
        raise ValueError("need at least two usable checkpoints")
    global_slope = math.log(sums[-1]) / math.log(positions[-1]) if positions[-1] > 1 else float("nan")
    caveat = None
    estimate = slopes[-1][1]
    if sums[-1] / sums[-2] < 1.0 + FLAT_RATIO:
        estimate = 0.0
        caveat = "possible sigma_a <= 0: partial sums no longer growing"
    elif len(slopes) >= 2 and abs(slopes[-1][1] - slopes[-2][1]) > DRIFT_WARN:
        caveat = "slope still drifting between the last checkpoints"
    return AbscissaReport(estimate, slopes, "two-point-slope", caveat, global_slope)


def _geometric_checkpoints(n, count):
    return sorted({max(1, round(n * 2.0 ** (k - count))) for k in range(1, count + 1)})


def estimate_sigma_a(a, n, checkpoints=8):
    """Slope estimate of the absolute-convergence abscissa, valid for sigma_a >= 0."""
    if checkpoints < 2:
        raise ValueError("need at least 2 checkpoints")
    marks = _geometric_checkpoints(n, checkpoints)
    values = a.materialize(n)
    sums = []
    acc = 0 if a.kind == "int" else 0.0
    pos = 0
    for mark in marks:
        while pos < mark:
            v = values[pos]
            if v < 0:
                raise ValueError("slope estimator requires non-negative coefficients")
            acc += v
            pos += 1
        sums.append(acc)
    keep = [(m, s) for m, s in zip(marks, sums) if s > 0]
    return _slope_report([m for m, _ in keep], [s for _, s in keep])


def estimate_sigma_a_smooth(a, index, limit, checkpoints=8):
    """Same estimator on the subseries supported on p_index-smooth integers.

    Checkpoints sit at geometric magnitudes limit * 2^{k-K}; if the support
    is too sparse for that to yield three usable points, they fall back to
    geometric positions within the smooth list itself.
    """
    if checkpoints < 2:
        raise ValueError("need at least 2 checkpoints")
    support = smooth_numbers(index, limit)
    values = [a.at(j) for j in support]
    if any(v < 0 for v in values):
        raise ValueError("slope estimator requires non-negative coefficients")
    cumulative = []
    acc = 0 if a.kind == "int" else 0.0
    for v in values:
        acc += v
        cumulative.append(acc)

    marks = _geometric_checkpoints(limit, checkpoints)
    pts = []
    for mark in marks:
        i = bisect_right(support, mark)
        if i >= 1 and cumulative[i - 1] > 0:
            pts.append((mark, cumulative[i - 1]))
    if len(pts) < 3:
        idx = _geometric_checkpoints(len(support), checkpoints)
        pts = [(support[i - 1], cumulative[i - 1]) for i in idx if cumulative[i - 1] > 0]
    return _slope_report([x for x, _ in pts], [s for _, s in pts])


def estimate_delta_a(a, n_max, limit, checkpoints=8):
    """Per-index smooth estimates and their running maximum."""
    per_n = []
    best = -math.inf
    for index in range(1, n_max + 1):
        report = estimate_sigma_a_smooth(a, index, limit, checkpoints)
        per_n.append((index, report))
        best = max(best, report.estimate)
    return DeltaReport(per_n, best)


def convergence_table(a, sigmas, ns):
    """Matrix of partial sums sum_{m<=N} a_m m^{-sigma} for diagnostics."""
    ns = sorted(ns)
    values = a.materialize(ns[-1])
    from .series import _Kahan

    accs = [_Kahan() for _ in sigmas]
    rows = []
    pos = 0
    for n in ns:
        while pos < n:
            m = pos + 1
            am = values[pos]
            if am != 0:
                for acc, sigma in zip(accs, sigmas):
                    acc.add(am * m ** (-float(sigma)))
            pos += 1
        rows.append([acc.total for acc in accs])
    return ConvergenceTable(list(sigmas), ns, rows)
