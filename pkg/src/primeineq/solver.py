"""Direct solvers and counters for the prime-power inequality experiments.

For k = 3 the weighted counting function is

    B(R)  = sum over prime triples with |p1^c + p2^c + p3^c - R| < eps
            of (log p1)(log p2)(log p3),

B1(R) its smoothed companion (kernel weight instead of a sharp window), and
H(R) the singular-integral prediction int I^k(x) Phi(x) e(-Rx) dx.  For
k = 6 a meet-in-the-middle search finds explicit sextuples.

Regime note: triple experiments run at c < 2 (densities are desk-visible
there), sextuple experiments at 2 < c < 26088036/12301745; for c > 2 prime
triples are far too sparse at desk scale for direct counting.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from functools import partial
from typing import Optional

import mpmath
import numpy as np

from ._parallel import det_map
from .kernel import KernelParams, kernel_from_instance, phi_eval, phi_fourier
from .sums import LONG, PrimeTable, ProblemInstance, integral_I, sieve_primes

_PAIR_GUARD = 10 ** 8


class QuadratureError(RuntimeError):
    """Raised when the main-term tail criterion cannot be met."""


@dataclass(frozen=True)
class SolutionRecord:
    primes: tuple[int, ...]
    value: float
    deviation: float
    ambiguous: bool = False   # set when a 2x-precision recheck flips the window test


@dataclass(frozen=True)
class SextupleSearch:
    found: bool
    feasible: bool
    record: Optional[SolutionRecord] = None
    range_used: str = "dyadic"   # "dyadic" = (X, 2X]; "full" = all p with p^c <= N


def instance_for_theorem1(N: float, c: float, eps: Optional[float] = None,
                          eta: float = 0.05) -> ProblemInstance:
    """Triple experiment at scale X = (N/3)^(1/c); eps defaults to 1/log N."""
    X = (N / 3.0) ** (1.0 / c)
    inst = ProblemInstance(c=c, X=X, eps=eps if eps is not None else 1.0 / math.log(N),
                           k=3, eta=eta)
    if len(sieve_primes(X)) < 2:
        raise ValueError(f"(X, 2X] = ({X}, {2 * X}] holds fewer than 2 primes")
    return inst


def instance_for_theorem2(N: float, c: float, eps: Optional[float] = None,
                          eta: float = 0.05) -> ProblemInstance:
    """Sextuple experiment at scale X = (1/2)(N/5)^(1/c); eps = 1/log N."""
    X = 0.5 * (N / 5.0) ** (1.0 / c)
    inst = ProblemInstance(c=c, X=X, eps=eps if eps is not None else 1.0 / math.log(N),
                           k=6, eta=eta)
    if len(sieve_primes(X)) < 2:
        raise ValueError(f"(X, 2X] = ({X}, {2 * X}] holds fewer than 2 primes")
    return inst


def sextuple_feasible(inst: ProblemInstance, N: float) -> bool:
    """Range check: can six c-th powers of primes in (X, 2X] reach N at all?"""
    table = sieve_primes(inst.X)
    if len(table) == 0:
        return False
    pmin = float(table.primes[0]) ** inst.c
    pmax = float(table.primes[-1]) ** inst.c
    return 6 * pmin - inst.eps < N < 6 * pmax + inst.eps


@dataclass(frozen=True, eq=False)
class _PairIndex:
    """Sorted pair sums p_i^c + p_j^c over ordered prime pairs, with the
    matching log-weight products and index pairs."""

    sums: np.ndarray       # long double, sorted ascending
    weights: np.ndarray    # float, (log p_i)(log p_j) in the same order
    idx_i: np.ndarray
    idx_j: np.ndarray


_pair_index_cache: dict[tuple[float, float], _PairIndex] = {}


def _pair_index(table: PrimeTable, c: float) -> _PairIndex:
    key = (table.X, c)
    got = _pair_index_cache.get(key)
    if got is not None:
        return got
    n = len(table)
    if n * n > _PAIR_GUARD:
        raise ValueError(f"{n}^2 prime pairs exceed guard {_PAIR_GUARD}")
    powers = table.powers(c)
    sums = (powers[:, None] + powers[None, :]).ravel()
    weights = (table.logs[:, None] * table.logs[None, :]).ravel()
    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    order = np.argsort(sums, kind="stable")
    out = _PairIndex(sums[order], weights[order], ii.ravel()[order], jj.ravel()[order])
    _pair_index_cache[key] = out
    return out


def count_B(inst: ProblemInstance, R: float, table: Optional[PrimeTable] = None,
            want_records: bool = False
            ) -> tuple[float, int, Optional[list[SolutionRecord]]]:
    """Sharp-window triple count: (weighted, unweighted, records).

    Ordered triples; binary search over sorted pair sums per third prime,
    with every candidate re-tested by the strict predicate |value - R| < eps.
    """
    if inst.k != 3:
        raise ValueError("count_B needs a k=3 instance")
    tbl = table if table is not None else sieve_primes(inst.X)
    index = _pair_index(tbl, inst.c)
    powers = tbl.powers(inst.c)
    eps = LONG(inst.eps)
    weighted = 0.0
    unweighted = 0
    records: Optional[list[SolutionRecord]] = [] if want_records else None
    for t3 in range(len(tbl)):
        target = LONG(R) - powers[t3]
        lo = int(np.searchsorted(index.sums, float(target - eps) - 1e-9, side="left"))
        hi = int(np.searchsorted(index.sums, float(target + eps) + 1e-9, side="right"))
        if hi <= lo:
            continue
        dev = np.abs(index.sums[lo:hi] - target)
        mask = dev < eps
        m = int(np.count_nonzero(mask))
        if m == 0:
            continue
        unweighted += m
        weighted += float(np.sum(index.weights[lo:hi][mask])) * float(tbl.logs[t3])
        if records is not None:
            for off in np.nonzero(mask)[0]:
                pos = lo + off
                primes = (int(tbl.primes[index.idx_i[pos]]),
                          int(tbl.primes[index.idx_j[pos]]),
                          int(tbl.primes[t3]))
                value = float(index.sums[pos] + powers[t3])
                records.append(_validated_record(primes, value, R, inst.eps, inst.c))
    return weighted, unweighted, records


def _validated_record(primes: tuple[int, ...], value: float, R: float,
                      eps: float, c: float) -> SolutionRecord:
    """Recompute the power sum at twice the working precision; flag the
    record if the window test flips there."""
    with mpmath.workdps(40):
        hv = mpmath.fsum(mpmath.mpf(p) ** mpmath.mpf(repr(c)) for p in primes)
        hd = abs(hv - mpmath.mpf(repr(R)))
        ambiguous = not hd < mpmath.mpf(repr(eps))
    return SolutionRecord(primes, value, abs(value - R), ambiguous)


def weighted_B1(inst: ProblemInstance, R: float, table: Optional[PrimeTable] = None,
                params: Optional[KernelParams] = None) -> float:
    """Smoothed triple count: kernel weight phi(value - R) instead of the
    sharp window; window of support is |value - R| < a + b."""
    if inst.k != 3:
        raise ValueError("weighted_B1 needs a k=3 instance")
    tbl = table if table is not None else sieve_primes(inst.X)
    p = params if params is not None else kernel_from_instance(inst.eps, inst.X)
    index = _pair_index(tbl, inst.c)
    powers = tbl.powers(inst.c)
    width = LONG(p.a + p.b)
    total = 0.0
    for t3 in range(len(tbl)):
        target = LONG(R) - powers[t3]
        lo = int(np.searchsorted(index.sums, float(target - width) - 1e-9, side="left"))
        hi = int(np.searchsorted(index.sums, float(target + width) + 1e-9, side="right"))
        if hi <= lo:
            continue
        devs = (index.sums[lo:hi] - target).astype(float)
        w = index.weights[lo:hi]
        phi = np.array([phi_eval(p, d) for d in devs])
        total += float(np.sum(w * phi)) * float(tbl.logs[t3])
    return total


def main_term_H(inst: ProblemInstance, R: float, k: Optional[int] = None,
                tail_fraction: float = 1e-3) -> float:
    """Singular integral int I^k(x) Phi(x) e(-Rx) dx, truncated adaptively.

    The integrand is conjugate-symmetric, so this is 2 Re of the [0, T]
    integral.  T doubles until the analytic tail bound
    2a * X^{-k(c-1)} * T^{1-k} / (k-1), from |I| <= 1/(|x| X^{c-1}) and
    |Phi| <= 2a, is below tail_fraction of the computed value.  The x-grid
    step resolves the combined oscillation scale 1/(R + k (2X)^c) and is
    independent of R's exact value, so integral values are shared between
    nearby experiments.
    """
    kk = k if k is not None else inst.k
    if kk not in (3, 6):
        raise ValueError("k must be 3 or 6")
    params = kernel_from_instance(inst.eps, inst.X)
    X, c = inst.X, inst.c
    # Near the edge of the sum's support H itself tends to zero, so a purely
    # relative criterion would never be met; the typical magnitude
    # eps * X^(k-c) supplies an absolute floor there.
    scale_floor = 0.1 * inst.eps * X ** (kk - c)
    n_scale = kk * (2 * X) ** c
    step = 1.0 / (16.0 * (n_scale + 2.0 * n_scale))  # R <= 2N ~ 2k(2X)^c/2^c
    T = max(64 * step, 4.0 * X ** (-c))

    def simpson(upper: float) -> float:
        # Nodes are exact multiples of step so the integral cache is shared
        # across nearby R and across truncation doublings.
        n = int(math.ceil(upper / step))
        n += n % 2  # Simpson needs an even panel count
        xs = np.arange(n + 1) * step
        ivals = np.array([integral_I(inst, float(x)) for x in xs])
        integrand = (ivals ** kk) * phi_fourier(params, xs) * np.exp(-2j * np.pi * R * xs)
        w = np.ones(n + 1)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        return 2.0 * float(np.real(np.sum(w * integrand))) * step / 3.0

    for _ in range(24):
        value = simpson(T)
        tail = 2 * params.a * X ** (-kk * (c - 1)) * T ** (1 - kk) / (kk - 1)
        if tail < tail_fraction * max(abs(value), scale_floor):
            return value
        T *= 2.0
    raise QuadratureError(
        f"tail criterion unreachable: T={T}, value={value}, tail bound={tail}")


def _mitm_search(tbl: PrimeTable, c: float, N: float, eps_f: float
                 ) -> Optional[SolutionRecord]:
    """Meet-in-the-middle over sorted triple sums; first hit in table order.

    Triple-sum table is sorted ascending (ties broken by flat index), the
    scan walks it in that order, and within a window the lowest position
    wins, so the returned record is deterministic.
    """
    n = len(tbl)
    if n ** 3 > _PAIR_GUARD:
        raise ValueError(f"{n}^3 triple sums exceed guard {_PAIR_GUARD}")
    powers = tbl.powers(c)
    sums3 = (powers[:, None, None] + powers[None, :, None]
             + powers[None, None, :]).ravel()
    order = np.argsort(sums3, kind="stable")
    sums3 = sums3[order]
    eps = LONG(eps_f)
    lo = np.searchsorted(sums3, LONG(N) - sums3 - eps, side="left")
    hi = np.searchsorted(sums3, LONG(N) - sums3 + eps, side="right")
    for pos in np.nonzero(hi > lo)[0]:
        t = sums3[pos]
        for upos in range(int(lo[pos]), int(hi[pos])):
            if np.abs(sums3[upos] + t - LONG(N)) < eps:
                primes = _triple_primes(tbl, int(order[pos]), n) + \
                         _triple_primes(tbl, int(order[upos]), n)
                return _validated_record(primes, float(t + sums3[upos]), N, eps_f, c)
    return None


def full_prime_table(N: float, c: float) -> PrimeTable:
    """All primes p with p^c <= N, as a table usable by the sextuple search."""
    P = math.floor(N ** (1.0 / c))
    while (P + 1) ** c <= N:
        P += 1
    primes = np.array([p for p in range(2, P + 1) if _small_prime(p)],
                      dtype=np.int64)
    return PrimeTable(1.0, primes, np.log(primes.astype(float)))


def _small_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, int(math.isqrt(p)) + 1):
        if p % q == 0:
            return False
    return True


def find_sextuple(inst: ProblemInstance, N: float,
                  table: Optional[PrimeTable] = None,
                  widen: bool = True) -> SextupleSearch:
    """Search for six primes with |sum p_i^c - N| < eps.

    The dyadic range (X, 2X] of the counting argument is tried first.  At
    desk scale its sum set near N can be too sparse to contain N even when
    the inequality is solvable in unrestricted primes (the statement being
    modeled has no range restriction), so with ``widen=True`` a miss falls
    back to the full table of primes with p^c <= N.
    """
    if inst.k != 6:
        raise ValueError("find_sextuple needs a k=6 instance")
    tbl = table if table is not None else sieve_primes(inst.X)
    feasible = sextuple_feasible(inst, N)
    if feasible:
        rec = _mitm_search(tbl, inst.c, N, inst.eps)
        if rec is not None:
            return SextupleSearch(found=True, feasible=True, record=rec)
    if not widen:
        return SextupleSearch(found=False, feasible=feasible)
    rec = _mitm_search(full_prime_table(N, inst.c), inst.c, N, inst.eps)
    if rec is None:
        return SextupleSearch(found=False, feasible=feasible, range_used="full")
    return SextupleSearch(found=True, feasible=feasible, record=rec,
                          range_used="full")


def _triple_primes(tbl: PrimeTable, flat: int, n: int) -> tuple[int, ...]:
    i, rem = divmod(flat, n * n)
    j, l = divmod(rem, n)
    return (int(tbl.primes[i]), int(tbl.primes[j]), int(tbl.primes[l]))


@dataclass
class ScanReport:
    seed: int
    samples: int
    R_values: list[float]
    counts: list[int]
    zero_fraction: float
    histogram: dict[int, int]
    config: dict

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps({
            "schema": 1,
            "seed": self.seed,
            "samples": self.samples,
            "R_values": self.R_values,
            "counts": self.counts,
            "zero_fraction": self.zero_fraction,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "config": self.config,
        }, indent=indent, sort_keys=True)


def _count_unweighted(R: float, inst: ProblemInstance) -> int:
    _, unweighted, _ = count_B(inst, R)
    return unweighted


def instance_config(inst: ProblemInstance) -> dict:
    return {"c": inst.c, "X": inst.X, "eps": inst.eps, "eta": inst.eta,
            "tau": inst.tau, "K": inst.K, "k": inst.k}


def exceptional_scan(inst: ProblemInstance, samples: int, seed: int,
                     workers: int = 1) -> ScanReport:
    """Empirical exceptional-set scan: sample R uniformly from (N, 2N] with
    N = 3 X^c, count triples per R, report the zero-count fraction."""
    if inst.k != 3:
        raise ValueError("exceptional_scan needs a k=3 instance")
    N = 3.0 * inst.X ** inst.c
    rng = random.Random(seed)
    Rs = [N + rng.random() * N for _ in range(samples)]
    sieve_primes(inst.X)  # warm the table before forking workers
    counts = det_map(partial(_count_unweighted, inst=inst), Rs, workers)
    hist: dict[int, int] = {}
    for cnt in counts:
        hist[cnt] = hist.get(cnt, 0) + 1
    zero_fraction = sum(1 for cnt in counts if cnt == 0) / samples if samples else 0.0
    return ScanReport(seed, samples, Rs, counts, zero_fraction, hist,
                      instance_config(inst))
