"""Tests for exponential sums, the comparison integral, and moments."""

import cmath
import math

import mpmath
import numpy as np
import pytest

from primeineq.sums import (ProblemInstance, bilinear_sum, integral_I,
                            moment4, s_minus_i_profile, sieve_primes, sum_S,
                            sum_T, weyl_differencing_check)


def inst_c1(X, eps=0.4):
    return ProblemInstance(c=1.0, X=X, eps=eps)


def test_sieve_small():
    t = sieve_primes(10.0)
    assert list(t.primes) == [11, 13, 17, 19]
    assert sieve_primes(100.0, cache=False).primes.shape == (21,)


def test_sieve_large_count():
    # pi(2e6) - pi(1e6)
    assert len(sieve_primes(1e6, verify=False, cache=False)) == 70435


def test_instance_defaults():
    inst = ProblemInstance(c=2.05, X=1024.0, eps=0.1)
    assert inst.tau == pytest.approx(1024.0 ** (1 - 2.05 - 0.05))
    assert inst.K == pytest.approx(math.log(1024.0) ** 10)
    assert 0 < inst.E < 1


def test_instance_validation():
    with pytest.raises(ValueError):
        ProblemInstance(c=2.05, X=2.0, eps=0.1)
    with pytest.raises(ValueError):
        ProblemInstance(c=2.05, X=1024.0, eps=-1.0)
    with pytest.raises(ValueError):
        ProblemInstance(c=2.05, X=1024.0, eps=0.1, tau=5.0, K=1.0)


def test_sum_T_at_zero_counts_integers():
    assert sum_T(inst_c1(10.0), 0.0) == pytest.approx(10.0)


def test_sum_T_geometric_closed_form():
    # c=1: sum over n in (X, 2X] of e(nx) is geometric
    inst = inst_c1(37.0)
    x = 0.0137
    n0 = 38
    terms = sum(cmath.exp(2j * math.pi * n * x) for n in range(n0, 75))
    assert sum_T(inst, x) == pytest.approx(terms, abs=1e-10)


def test_sum_S_at_zero():
    inst = ProblemInstance(c=1.5, X=10.0, eps=0.1)
    assert sum_S(inst, 0.0) == pytest.approx(math.log(11 * 13 * 17 * 19))


def test_sum_S_triangle_inequality():
    inst = ProblemInstance(c=2.05, X=256.0, eps=0.1)
    s0 = abs(sum_S(inst, 0.0))
    for x in (inst.tau, -inst.tau / 3, inst.tau / 7):
        assert abs(sum_S(inst, x)) <= s0 + 1e-9


def test_sum_T_against_high_precision():
    inst = ProblemInstance(c=2.05, X=512.0, eps=0.1)
    x = inst.tau
    got = sum_T(inst, x)
    with mpmath.workdps(40):
        xs = mpmath.mpf(repr(x))
        c = mpmath.mpf("2.05")
        re = mpmath.fsum(mpmath.cos(2 * mpmath.pi * mpmath.frac(mpmath.mpf(n) ** c * xs))
                         for n in range(513, 1025))
        im = mpmath.fsum(mpmath.sin(2 * mpmath.pi * mpmath.frac(mpmath.mpf(n) ** c * xs))
                         for n in range(513, 1025))
    assert abs(got - complex(float(re), float(im))) <= 1e-8 * max(1.0, abs(got))


def test_conjugate_symmetry():
    inst = ProblemInstance(c=2.05, X=256.0, eps=0.1)
    for x in (inst.tau / 2, inst.tau / 9):
        assert abs(sum_S(inst, -x) - sum_S(inst, x).conjugate()) < 1e-12 * 300
        assert abs(sum_T(inst, -x) - sum_T(inst, x).conjugate()) < 1e-12 * 300
        assert abs(integral_I(inst, -x) - integral_I(inst, x).conjugate()) < 1e-9


def test_integral_at_zero_is_length():
    inst = ProblemInstance(c=2.05, X=777.0, eps=0.1)
    assert integral_I(inst, 0.0) == complex(777.0, 0.0)


def test_integral_closed_form_c1():
    inst = inst_c1(50.0)
    for x in (0.013, 1.7, -0.4):
        want = (cmath.exp(2j * math.pi * 100 * x) - cmath.exp(2j * math.pi * 50 * x)) \
            / (2j * math.pi * x)
        assert integral_I(inst, x) == pytest.approx(want, abs=1e-10)


def test_integral_first_derivative_bound():
    inst = ProblemInstance(c=2.05, X=1024.0, eps=0.1)
    for x in (inst.tau, inst.tau / 5, -inst.tau / 2, 1e-5):
        assert abs(integral_I(inst, x)) <= 1.0 / (abs(x) * 1024.0 ** 1.05) + 1e-9


def test_integral_against_mpmath():
    inst = ProblemInstance(c=2.05, X=256.0, eps=0.1)
    x = inst.tau / 2
    got = integral_I(inst, x)
    with mpmath.workdps(30):
        f = lambda t: mpmath.e ** (2j * mpmath.pi * (t ** mpmath.mpf("2.05") * mpmath.mpf(repr(x))))
        want = mpmath.quad(f, [256, 320, 384, 448, 512])
    assert abs(got - complex(want)) < 1e-6 * 256


def test_moment4_trivial_upper():
    inst = ProblemInstance(c=2.05, X=256.0, eps=0.1)
    m, err = moment4(inst, "S")
    assert m <= 2 * inst.tau * abs(sum_S(inst, 0.0)) ** 4
    assert err < 0.3 * m
    mi, _ = moment4(inst, "I")
    assert mi <= 2 * inst.tau * 256.0 ** 4
    with pytest.raises(ValueError):
        moment4(inst, "Q")


def test_s_minus_i_profile():
    inst = ProblemInstance(c=2.05, X=4096.0, eps=0.1)
    table = sieve_primes(4096.0)
    rows, worst = s_minus_i_profile(inst, [0.0, inst.tau / 3, -inst.tau / 3])
    at0 = abs(float(np.sum(table.logs)) - 4096.0)
    assert rows[0][1] == pytest.approx(at0, rel=1e-9)
    assert rows[1][1] == pytest.approx(rows[2][1], abs=1e-6)
    assert worst == max(d for _, d in rows)
    with pytest.raises(ValueError):
        s_minus_i_profile(inst, [2 * inst.tau])


def test_weyl_constant_sequence():
    lhs, rhs = weyl_differencing_check([1.0] * 100, 1)
    assert lhs == pytest.approx(1e4)
    assert rhs == pytest.approx(10200.0)
    assert lhs <= rhs


def test_weyl_single_spike():
    z = [0.0] * 64
    z[17] = 3.0 - 4.0j
    lhs, rhs = weyl_differencing_check(z, 8)
    assert lhs == pytest.approx(25.0)
    assert lhs <= rhs


def test_weyl_linear_phase():
    rng = np.random.default_rng(11)
    for _ in range(20):
        alpha = rng.uniform(0, 1)
        m = np.arange(65, 129)
        z = np.exp(2j * np.pi * alpha * m)
        lhs, rhs = weyl_differencing_check(z, 8)
        assert lhs <= rhs + 1e-6 * abs(rhs)


def test_weyl_random_inputs():
    rng = np.random.default_rng(23)
    for _ in range(200):
        M = int(rng.integers(1, 129))
        Q = int(rng.integers(1, M + 1))
        z = rng.normal(size=M) + 1j * rng.normal(size=M)
        lhs, rhs = weyl_differencing_check(z, Q)
        assert lhs <= rhs + 1e-9 * max(1.0, abs(rhs))


def test_bilinear_sum_counts_at_zero():
    assert bilinear_sum(8, 16, [1.0] * 8, None, 2.05, 0.0) == pytest.approx(128.0)


def test_bilinear_sum_triangle():
    rng = np.random.default_rng(3)
    a = rng.choice([-1.0, 1.0], size=32)
    v = bilinear_sum(32, 64, a, None, 2.05, 1e-5)
    assert abs(v) <= np.abs(a).sum() * 64 + 1e-9


def test_bilinear_sum_guards():
    with pytest.raises(ValueError):
        bilinear_sum(10 ** 5, 10 ** 5, [1.0] * 10 ** 5, None, 2.05, 0.0)
    with pytest.raises(ValueError):
        bilinear_sum(8, 16, [1.0] * 7, None, 2.05, 0.0)
