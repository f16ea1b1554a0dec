"""Counting near-diagonal 4-tuples: |n1^c + n2^c - n3^c - n4^c| < gamma.

Two counters share one comparison policy: differences of pair sums are
formed in extended precision and tested with the strict predicate
|d| < gamma, and every tuple with ||d| - gamma| < delta is additionally
reported as boundary-ambiguous.  The naive counter enumerates all ordered
4-tuples; the fast counter sorts the Y^2 pair sums and sweeps windows, but
re-tests every candidate with the identical predicate, so the two agree
exactly, ambiguity flags included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sums import LONG

_NAIVE_GUARD = 10 ** 9     # Y^4 at most this many tuples
_FAST_GUARD = 10 ** 5      # Y at most this (Y^2 pair sums in memory)


@dataclass(frozen=True)
class CountSpec:
    Y: int
    c: float
    gamma: float
    delta: float = 1e-9

    def __post_init__(self):
        if self.Y < 2:
            raise ValueError("Y must be >= 2")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")


@dataclass(frozen=True)
class CountResult:
    count: int
    ambiguous: int


def _pair_sums(Y: int, c: float) -> np.ndarray:
    """All Y^2 values n1^c + n2^c for n1, n2 in (Y, 2Y], long double."""
    powers = np.arange(Y + 1, 2 * Y + 1, dtype=np.int64).astype(LONG) ** LONG(c)
    return (powers[:, None] + powers[None, :]).ravel()


def count_tuples_naive(s: CountSpec) -> CountResult:
    """Exhaustive count over ordered 4-tuples (broadcast over all pairs)."""
    if s.Y ** 4 > _NAIVE_GUARD:
        raise ValueError(f"Y^4 = {s.Y ** 4} exceeds naive guard {_NAIVE_GUARD}")
    ps = _pair_sums(s.Y, s.c)
    count = 0
    ambiguous = 0
    gamma = LONG(s.gamma)
    delta = LONG(s.delta)
    # chunk the left index so the difference matrix stays small
    step = max(1, (2 ** 22) // max(1, len(ps)))
    for i in range(0, len(ps), step):
        d = np.abs(ps[i:i + step, None] - ps[None, :])
        count += int(np.count_nonzero(d < gamma))
        ambiguous += int(np.count_nonzero(np.abs(d - gamma) < delta))
    return CountResult(count, ambiguous)


def count_tuples_fast(s: CountSpec) -> CountResult:
    """Sort the Y^2 pair sums and sweep; same predicate as the naive count.

    searchsorted locates a candidate window with margin gamma + 2*delta;
    candidates are then re-tested with the exact comparison the naive
    counter uses, so results match it tuple-for-tuple.
    """
    if s.Y > _FAST_GUARD:
        raise ValueError(f"Y = {s.Y} exceeds fast guard {_FAST_GUARD}")
    ps = np.sort(_pair_sums(s.Y, s.c))
    gamma = LONG(s.gamma)
    delta = LONG(s.delta)
    margin = float(gamma + 2 * delta)
    lo = np.searchsorted(ps, ps - margin, side="left")
    hi = np.searchsorted(ps, ps + margin, side="right")
    count = 0
    ambiguous = 0
    block = 1 << 16
    for start in range(0, len(ps), block):
        stop = min(start + block, len(ps))
        lengths = hi[start:stop] - lo[start:stop]
        total = int(lengths.sum())
        if total == 0:
            continue
        flat_i = np.repeat(np.arange(start, stop), lengths)
        run_starts = np.concatenate(([0], np.cumsum(lengths)[:-1]))
        flat_j = (np.arange(total) - np.repeat(run_starts, lengths)
                  + np.repeat(lo[start:stop], lengths))
        d = np.abs(ps[flat_j] - ps[flat_i])
        count += int(np.count_nonzero(d < gamma))
        ambiguous += int(np.count_nonzero(np.abs(d - gamma) < delta))
    return CountResult(count, ambiguous)


def rs_scaling_report(c: float, gamma: float, Ys: list[int],
                      slope_allowance: float = 0.15) -> dict:
    """Fit log(count) against log(Y) over a doubling ladder.

    The reference slope is max(4 - c, 2); the eta factor in the bound is
    absorbed into the additive allowance.  A gamma so large that the window
    swallows everything is flagged out-of-regime (slope tends to 4).
    """
    if len(Ys) < 4:
        raise ValueError("need a ladder of at least 4 Y values")
    counts = [count_tuples_fast(CountSpec(Y, c, gamma)).count for Y in Ys]
    logs_y = np.log(np.array(Ys, dtype=float))
    logs_n = np.log(np.array(counts, dtype=float))
    slope, intercept = np.polyfit(logs_y, logs_n, 1)
    reference = max(4.0 - c, 2.0)
    out_of_regime = all(n == Y ** 4 for n, Y in zip(counts, Ys))
    return {
        "c": c,
        "gamma": gamma,
        "Ys": list(Ys),
        "counts": counts,
        "slope": float(slope),
        "intercept": float(intercept),
        "reference_slope": reference,
        "allowance": slope_allowance,
        "pass": bool(slope <= reference + slope_allowance) and not out_of_regime,
        "out_of_regime": out_of_regime,
    }


def harmonic_V(s: CountSpec, tau: float) -> tuple[float, np.ndarray]:
    """Sum of 1/|d| over ordered 4-tuples with |d| > 1/tau, d the pair-sum
    difference, accumulated per dyadic bucket (2^k/tau, 2^{k+1}/tau].

    Returns (total, per-bucket vector).  Exact up to float rounding; the
    bucket split mirrors the dyadic decomposition used to bound it.
    """
    if s.Y > _FAST_GUARD:
        raise ValueError(f"Y = {s.Y} exceeds guard {_FAST_GUARD}")
    if tau <= 0:
        raise ValueError("tau must be positive")
    ps = np.sort(_pair_sums(s.Y, s.c))
    cut = LONG(1.0) / LONG(tau)
    max_d = float(ps[-1] - ps[0])
    if max_d <= float(cut):
        return 0.0, np.zeros(0)
    n_buckets = int(math.floor(math.log2(max_d * tau))) + 1
    buckets = np.zeros(n_buckets)
    step = max(1, (2 ** 22) // max(1, len(ps)))
    for i in range(0, len(ps), step):
        d = np.abs(ps[i:i + step, None] - ps[None, :])
        mask = d > cut
        dv = d[mask].astype(float)
        if dv.size == 0:
            continue
        idx = np.floor(np.log2(dv * tau)).astype(np.int64)
        np.clip(idx, 0, n_buckets - 1, out=idx)
        buckets += np.bincount(idx, weights=1.0 / dv, minlength=n_buckets)
    return float(buckets.sum()), buckets


def harmonic_V_naive(s: CountSpec, tau: float) -> float:
    """O(Y^4) direct summation; oracle for harmonic_V."""
    if s.Y ** 4 > 10 ** 8:
        raise ValueError("naive harmonic sum guarded at Y^4 <= 1e8")
    powers = [ (n ** s.c) for n in range(s.Y + 1, 2 * s.Y + 1) ]
    cut = 1.0 / tau
    terms = []
    for a in powers:
        for b in powers:
            for u in powers:
                for v in powers:
                    d = abs(a + b - u - v)
                    if d > cut:
                        terms.append(1.0 / d)
    return math.fsum(terms)


def count_U(s_base: CountSpec, tau: float) -> CountResult:
    """The gamma = 1/tau special case of the tuple count."""
    return count_tuples_fast(CountSpec(s_base.Y, s_base.c, 1.0 / tau, s_base.delta))
