"""Tests for the exact monomial algebra."""

from fractions import Fraction

import pytest

from primeineq.exact import (BoundExpr, Monomial, ONE, bound_root, gk_optimize,
                             monomial_cross)


def test_monomial_zero_exponents_dropped():
    m = Monomial.of(M=1, L=0)
    assert m.symbols() == ("M",)
    assert m.exponent("L") == 0


def test_monomial_equality_is_product_equality():
    assert Monomial.of(M=2, L=3) == Monomial.of(L=3, M=2)
    assert Monomial.of(M=Fraction(4, 2)) == Monomial.of(M=2)


def test_monomial_rejects_float_exponents():
    with pytest.raises(TypeError):
        Monomial.of(M=0.5)


def test_monomial_mul_and_pow():
    m = Monomial.of(M=2, L=-1)
    assert m * Monomial.of(L=1) == Monomial.of(M=2)
    assert m.pow(Fraction(1, 2)) == Monomial.of(M=1, L=Fraction(-1, 2))


def test_monomial_substitute():
    m = Monomial.of(M=14, Q=Fraction(13, 3))
    assert m.substitute("Q", ONE) == Monomial.of(M=14)
    assert m.substitute("Q", Monomial.of(M=Fraction(1, 4))) == \
        Monomial.of(M=14 + Fraction(13, 12))


def test_monomial_evaluate():
    m = Monomial.of(M=2, L=-1)
    assert m.evaluate({"M": 3.0, "L": 2.0}) == pytest.approx(4.5)


def test_to_text_canonical_form():
    m = Monomial.of(M=Fraction(34, 37), L=Fraction(31, 37), F=Fraction(3, 74))
    assert m.to_text() == "M^{34/37}*L^{31/37}*F^{3/74}"
    assert ONE.to_text() == "1"
    assert Monomial.of(M=1).to_text() == "M"


def test_bound_expr_dedupes():
    e = BoundExpr.of([Monomial.of(M=1), Monomial.of(M=1), Monomial.of(L=1)])
    assert len(e) == 2


def test_bound_expr_text_and_sorting():
    e = BoundExpr.of([Monomial.of(L=1), Monomial.of(M=1)])
    assert e.to_text() == "M + L"


def test_monomial_cross_balances():
    up = Monomial.of(M=1, Q=2)
    down = Monomial.of(L=1, Q=-1)
    cross = monomial_cross(up, down)
    assert cross.exponent("Q") == 0
    # at the balancing Q both inputs equal the cross term
    assert cross == Monomial.of(M=Fraction(1, 3), L=Fraction(2, 3))


def test_monomial_cross_needs_signs():
    with pytest.raises(ValueError):
        monomial_cross(Monomial.of(Q=-1), Monomial.of(Q=-1))
    with pytest.raises(ValueError):
        monomial_cross(Monomial.of(Q=1), Monomial.of(Q=1))


def test_gk_optimize_small():
    terms = BoundExpr.of([Monomial.of(M=1, Q=1), Monomial.of(L=1, Q=-1),
                          Monomial.of(F=1)])
    out = gk_optimize(terms, ONE, Monomial.of(M=1))
    want = {
        Monomial.of(F=1),                                    # Q-free
        Monomial.of(M=1),                                    # increasing at q1=1
        Monomial.of(L=1, M=-1),                              # decreasing at q2=M
        Monomial.of(M=Fraction(1, 2), L=Fraction(1, 2)),     # cross
    }
    assert set(out.terms) == want


def test_gk_optimize_rejects_q_dependent_endpoints():
    with pytest.raises(ValueError):
        gk_optimize(BoundExpr.of([Monomial.of(Q=1)]), Monomial.of(Q=1), ONE)


def test_gk_optimize_numeric_envelope():
    # the optimized bound should match min over Q of the original sum up to
    # the number-of-terms constant, since constants are dropped
    terms = BoundExpr.of([Monomial.of(M=2, Q=1), Monomial.of(M=3, Q=-2)])
    out = gk_optimize(terms, ONE, Monomial.of(M=1))
    vals = {"M": 7.5}
    qs = [1.0 + i * (vals["M"] - 1.0) / 200 for i in range(201)]
    best = min(sum(t.evaluate({**vals, "Q": q}) for t in terms) for q in qs)
    opt = out.evaluate(vals)
    assert best / len(terms) <= opt <= best * len(out)


def test_prune_dominated():
    e = BoundExpr.of([Monomial.of(M=1), Monomial.of(M=2),
                      Monomial.of(M=1, L=1)])
    kept = e.prune_dominated()
    assert set(kept.terms) == {Monomial.of(M=2), Monomial.of(M=1, L=1)}


def test_bound_root():
    e = BoundExpr.of([Monomial.of(M=16, L=8)])
    assert set(bound_root(e, 16).terms) == {Monomial.of(M=1, L=Fraction(1, 2))}
    with pytest.raises(ValueError):
        bound_root(e, 0)
