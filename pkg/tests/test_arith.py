from fractions import Fraction
import math

from hypothesis import given, strategies as st
import pytest

from oracles import brute_neg_congruence, cf_value, seeded
from splicecover.arith import (format_hj, format_rational, gcd_many, hj_eval,
                               hj_expand, hj_reverse, lcm_many, parse_hj,
                               parse_rational, seifert_contribution,
                               solve_neg_congruence)
from splicecover.errors import (DegenerateStringError, DomainError, NoSolutionError,
                                UsageError)

COPRIME_PAIRS = [(p, q) for p in range(2, 201) for q in range(1, p) if math.gcd(p, q) == 1]


@pytest.mark.parametrize("values, expected", [
    ([14, 14, 20, 8], 2), ([18, 3], 3), ([0, 0], 0), ([7], 7), ([0, 12], 12)])
def test_gcd_many(values, expected):
    assert gcd_many(values) == expected


def test_gcd_many_empty():
    with pytest.raises(UsageError):
        gcd_many([])


@pytest.mark.parametrize("values, expected", [([3, 18, 23], 414), ([2, 2, 5, 7], 70), ([1], 1)])
def test_lcm_many(values, expected):
    assert lcm_many(values) == expected


def test_lcm_many_rejects_zero():
    with pytest.raises(DomainError):
        lcm_many([3, 0])


@pytest.mark.parametrize("c, p, expected", [(18, 23, 14), (5, 9, 7), (7, 1, 0)])
def test_solve_neg_congruence_examples(c, p, expected):
    assert solve_neg_congruence(c, p) == expected


def test_solve_neg_congruence_no_solution():
    with pytest.raises(NoSolutionError):
        solve_neg_congruence(6, 9)


def test_solve_neg_congruence_exhaustive():
    for p in range(1, 101):
        for c in range(1, 101):
            if math.gcd(c, p) != 1:
                continue
            q = solve_neg_congruence(c, p)
            assert 0 <= q < p and (c * q + 1) % p == 0
            assert q == brute_neg_congruence(c, p)


@pytest.mark.parametrize("p, q, expected", [
    (23, 14, (2, 3, 5)), (7, 4, (2, 4)), (5, 4, (2, 2, 2, 2)), (1, 0, ()), (6, 1, (6,))])
def test_hj_expand_examples(p, q, expected):
    assert hj_expand(p, q) == expected


def test_hj_expand_rejects_bad_zero():
    with pytest.raises(DomainError):
        hj_expand(5, 0)


@pytest.mark.parametrize("s, expected", [((2, 4), (7, 4)), ((6,), (6, 1)), ((), (1, 0))])
def test_hj_eval_examples(s, expected):
    assert hj_eval(s) == expected


def test_hj_eval_degenerate():
    with pytest.raises(DegenerateStringError):
        hj_eval((2, 1, 1))


def test_hj_reverse_examples():
    assert hj_reverse((2, 4)) == (4, 2)
    assert hj_eval((4, 2)) == (7, 2)
    assert hj_reverse((2, 2, 2, 2)) == (2, 2, 2, 2)
    assert hj_reverse(()) == ()


def test_hj_round_trip_all_pairs():
    for p, q in COPRIME_PAIRS:
        s = hj_expand(p, q)
        assert all(a >= 2 for a in s)
        assert hj_eval(s) == (p, q)
        assert cf_value(s) == Fraction(p, q)


def test_hj_reverse_congruence_all_pairs():
    for p, q in COPRIME_PAIRS:
        p2, q2 = hj_eval(hj_reverse(hj_expand(p, q)))
        assert p2 == p
        assert (q * q2) % p == 1 % p


@given(st.integers(1, 500), st.integers(-500, 500))
def test_hj_expand_generalized_range(p, q):
    if q == 0 or math.gcd(p, q) != 1:
        return
    s = hj_expand(p, q)
    assert all(a >= 2 for a in s[1:])
    assert cf_value(s) == Fraction(p, q)


def test_seifert_contribution():
    assert seifert_contribution((2, 4)) == Fraction(4, 7)
    assert seifert_contribution((2, 2, 2, 2)) == Fraction(4, 5)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6),
       st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rational_matches_cross_multiplication(a, b, c, d):
    x, y = Fraction(a, b), Fraction(c, d)
    assert x.denominator > 0 and math.gcd(x.numerator, x.denominator) == 1
    s = x + y
    assert s.numerator * b * d == (a * d + c * b) * s.denominator
    m = x * y
    assert m.numerator * b * d == a * c * m.denominator
    assert (-x).numerator * b == -a * x.denominator
    assert (x < y) == (a * d < c * b)
    assert (x == y) == (a * d == c * b)


def test_text_forms():
    assert format_rational(Fraction(-5, 378)) == "-5/378"
    assert format_rational(Fraction(4, 1)) == "4"
    assert format_rational(Fraction(0, 7)) == "0"
    assert parse_rational(" 10/9 ") == Fraction(10, 9)
    with pytest.raises(UsageError):
        parse_rational("3/0")
    assert format_hj((2, 3, 5)) == "[2,3,5]"
    assert parse_hj("[2, 3,5]") == (2, 3, 5)
    assert parse_hj("[]") == ()
    with pytest.raises(UsageError):
        parse_hj("2,3")


def test_rational_cross_multiplication_ten_thousand_pairs():
    rng = seeded(2024)
    for _ in range(10_000):
        a, c = rng.randint(-10**9, 10**9), rng.randint(-10**9, 10**9)
        b, d = rng.randint(1, 10**9), rng.randint(1, 10**9)
        x, y = Fraction(a, b), Fraction(c, d)
        assert (x + y) * b * d == a * d + c * b
        assert x * y * b * d == a * c
        assert (x < y) == (a * d < c * b)
