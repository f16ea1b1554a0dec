"""Tests for the triple/sextuple solvers, the main term, and the scan."""

import math

import numpy as np
import pytest

from primeineq.kernel import kernel_from_instance, phi_eval
from primeineq.solver import (QuadratureError, count_B, exceptional_scan,
                              find_sextuple, full_prime_table,
                              instance_for_theorem1, instance_for_theorem2,
                              main_term_H, sextuple_feasible, weighted_B1)
from primeineq.sums import PrimeTable, ProblemInstance, sieve_primes


@pytest.fixture(scope="module")
def inst_1e5():
    return instance_for_theorem1(1e5, 1.5)


def test_instance_examples():
    inst = instance_for_theorem1(3 * 2 ** 10, 1.0)
    assert inst.X == pytest.approx(1024.0)
    assert inst.k == 3
    inst = instance_for_theorem1(1e5, 1.5)
    assert inst.X == pytest.approx(1035.7, abs=0.1)
    assert inst.eps == pytest.approx(1.0 / math.log(1e5))
    inst = instance_for_theorem2(1e6, 2.05)
    assert inst.X == pytest.approx(192.68, abs=0.05)
    assert inst.k == 6


def test_instance_rejects_empty_range():
    with pytest.raises(ValueError):
        instance_for_theorem1(3 * 2.1 ** 1.5, 1.5)   # X = 2.1: (2.1, 4.2] = {3}


def test_count_B_degenerate_c1():
    # c = 1, primes in (5, 10] = {7}; only triple 7+7+7 = 21
    inst = ProblemInstance(c=1.0, X=5.0, eps=0.4, k=3)
    weighted, unweighted, recs = count_B(inst, 21.0, want_records=True)
    assert unweighted == 1
    assert weighted == pytest.approx(math.log(7.0) ** 3)
    assert recs[0].primes == (7, 7, 7)
    assert recs[0].deviation == pytest.approx(0.0, abs=1e-12)
    assert not recs[0].ambiguous
    # shifted window misses
    _, n, _ = count_B(inst, 22.0)
    assert n == 0


def test_count_B_requires_k3():
    inst = instance_for_theorem2(1e6, 2.05)
    with pytest.raises(ValueError):
        count_B(inst, 1e6)


def test_count_B_weight_bracketing(inst_1e5):
    R = 1.5e5
    weighted, unweighted, _ = count_B(inst_1e5, R)
    assert unweighted > 0
    lo = math.log(inst_1e5.X) ** 3
    hi = math.log(2 * inst_1e5.X) ** 3
    assert unweighted * lo <= weighted <= unweighted * hi


def test_count_B_table_permutation_invariant(inst_1e5):
    R = 1.5e5
    base = count_B(inst_1e5, R)[:2]
    tbl = sieve_primes(inst_1e5.X)
    rng = np.random.default_rng(0)
    perm = rng.permutation(len(tbl))
    shuffled = PrimeTable(inst_1e5.X - 1e-6, tbl.primes[perm], tbl.logs[perm])
    weighted, unweighted, _ = count_B(inst_1e5, R, table=shuffled)
    assert unweighted == base[1]
    assert weighted == pytest.approx(base[0], rel=1e-12)


def test_records_validate_cleanly(inst_1e5):
    _, n, recs = count_B(inst_1e5, 1.5e5, want_records=True)
    assert len(recs) == n
    for rec in recs:
        assert rec.deviation < inst_1e5.eps
        assert not rec.ambiguous
        assert rec.value == pytest.approx(
            sum(p ** inst_1e5.c for p in rec.primes), rel=1e-12)


def test_B1_bounded_by_sharp_count(inst_1e5):
    for R in (1.3e5, 1.5e5, 1.8e5):
        weighted, _, _ = count_B(inst_1e5, R)
        assert weighted_B1(inst_1e5, R) <= weighted + 1e-9


def test_B1_zero_below_support(inst_1e5):
    # smallest attainable sum is 3 X^c; far below it the kernel sees nothing
    floor = 3 * inst_1e5.X ** inst_1e5.c
    assert weighted_B1(inst_1e5, floor - 1.0) == 0.0


def test_B1_equals_B_in_flat_region(inst_1e5):
    # at this R every contributing triple lands in the kernel's flat top
    # (|dev| <= a - b), so the smoothed and sharp weights coincide
    R = 1.5e5
    p = kernel_from_instance(inst_1e5.eps, inst_1e5.X)
    _, _, recs = count_B(inst_1e5, R, want_records=True)
    assert recs and all(r.deviation <= p.a - p.b for r in recs)
    weighted, _, _ = count_B(inst_1e5, R)
    assert weighted_B1(inst_1e5, R) == pytest.approx(weighted, rel=1e-12)


def test_main_term_degenerate_c1_volume_oracle():
    # c = 1: H(R) reduces to X^3 * int phi(3X + Xs - R) f3(s) ds with f3 the
    # Irwin-Hall density of the sum of three uniforms
    inst = ProblemInstance(c=1.0, X=30.0, eps=0.3, k=3)
    p = kernel_from_instance(inst.eps, inst.X)
    R = 135.0
    got = main_term_H(inst, R)

    s = np.linspace(0.0, 3.0, 60001)
    t = np.clip(s, 0, None) ** 2 - 3 * np.clip(s - 1, 0, None) ** 2 \
        + 3 * np.clip(s - 2, 0, None) ** 2
    f3 = 0.5 * t
    phi = np.array([phi_eval(p, float(3 * 30.0 + 30.0 * v - R)) for v in s])
    want = 30.0 ** 3 * np.trapezoid(f3 * phi, s)
    assert got == pytest.approx(float(want), rel=1e-2)


def test_main_term_validates_k(inst_1e5):
    with pytest.raises(ValueError):
        main_term_H(inst_1e5, 1.5e5, k=4)


def test_main_term_scaling_band(inst_1e5):
    # H / (eps * R^{3/c - 1}) stays within a factor of 4 over mid-range R
    N = 1e5
    ratios = []
    for mult in (1.3, 1.5, 1.7, 2.0):
        R = mult * N
        h = main_term_H(inst_1e5, R)
        ratios.append(h / (inst_1e5.eps * R ** (3.0 / inst_1e5.c - 1.0)))
    assert all(r > 0 for r in ratios)
    assert max(ratios) / min(ratios) <= 4.0


def test_main_term_k6_floor():
    inst = instance_for_theorem2(1e6, 2.05)
    h = main_term_H(inst, 1e6)
    assert h > 0
    assert h >= 4e-3 * inst.eps * inst.X ** (6 - inst.c)


def test_sextuple_degenerate_c1():
    inst = instance_for_theorem2(42.0, 1.0)
    assert inst.X == pytest.approx(4.2)
    res = find_sextuple(inst, 42.0)
    assert res.found and res.feasible
    assert res.range_used == "dyadic"
    assert res.record.primes == (7, 7, 7, 7, 7, 7)
    assert res.record.deviation == pytest.approx(0.0, abs=1e-12)


def test_sextuple_infeasible_without_widening():
    inst = ProblemInstance(c=2.05, X=50.0, eps=0.1, k=6)
    assert not sextuple_feasible(inst, 100.0)
    res = find_sextuple(inst, 100.0, widen=False)
    assert not res.found and not res.feasible
    assert res.record is None
    assert res.range_used == "dyadic"


def test_sextuple_widens_at_desk_scale():
    # the dyadic sum set near 1e6 is too sparse; the full-table fallback
    # finds a deterministic representative
    inst = instance_for_theorem2(1e6, 2.05)
    res = find_sextuple(inst, 1e6)
    assert res.found and res.feasible
    assert res.range_used == "full"
    assert res.record.primes == (3, 3, 7, 263, 541, 607)
    assert res.record.deviation < inst.eps
    assert not res.record.ambiguous


def test_full_prime_table():
    tbl = full_prime_table(100.0, 2.0)
    assert list(tbl.primes) == [2, 3, 5, 7]


def test_scan_deterministic_across_runs_and_workers(inst_1e5):
    one = exceptional_scan(inst_1e5, 40, seed=5, workers=1)
    again = exceptional_scan(inst_1e5, 40, seed=5, workers=1)
    multi = exceptional_scan(inst_1e5, 40, seed=5, workers=2)
    assert one.to_json() == again.to_json() == multi.to_json()
    assert len(one.counts) == 40
    assert sum(one.histogram.values()) == 40


def test_scan_zero_fraction_shrinks_with_scale(inst_1e5):
    small = exceptional_scan(inst_1e5, 200, seed=9)
    large = exceptional_scan(instance_for_theorem1(4e5, 1.5), 200, seed=9)
    assert large.zero_fraction <= small.zero_fraction + 0.1
