import itertools
import math
import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import mp_value
from sqrtsum.errors import DomainError, ResourceLimitError
from sqrtsum.exact_oracle import (
    IntPolynomial,
    annihilating_poly,
    ceil_log2,
    certified_precision,
    compare_values,
    eval_interval,
    isqrt_newton,
    mahler_sep,
    oracle_sign,
    sign_exact,
    sqrt_interval,
    value_lower_bound,
)
from sqrtsum.model import UUSSRInstance
from sqrtsum.numtheory import square_free_count


def _dim(k):
    return square_free_count(k)


def box(k, B):
    return [UUSSRInstance(k, d) for d in itertools.product(range(-B, B + 1), repeat=_dim(k))]


def mpq(x):
    return mpmath.mpf(x.numerator) / x.denominator


BOX6 = box(6, 2)


def contains_mp(iv, x):
    return mpq(iv.lower) <= x <= mpq(iv.upper)


@given(st.integers(min_value=0, max_value=10**60), st.integers(min_value=0, max_value=10**30))
def test_isqrt_newton_matches_math(n, seed):
    assert isqrt_newton(n) == math.isqrt(n)
    assert isqrt_newton(n, seed) == math.isqrt(n)


@given(st.fractions(min_value=Fraction(1, 10**9), max_value=10**9))
def test_ceil_log2(x):
    t = ceil_log2(x)
    assert Fraction(2) ** t >= x > Fraction(2) ** (t - 1)


def test_sqrt_interval_examples():
    iv = sqrt_interval(4, 13)
    assert iv.is_point and iv.lower == 2
    iv = sqrt_interval(2, 4)
    assert (iv.lower, iv.upper) == (Fraction(22, 16), Fraction(23, 16))
    iv = sqrt_interval(3, 10)
    assert iv.width <= Fraction(1, 2**10)
    assert iv.lower**2 <= 3 <= iv.upper**2


@given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=300))
def test_sqrt_interval_by_squaring_endpoints(n, p):
    iv = sqrt_interval(n, p)
    assert iv.lower**2 <= n <= iv.upper**2
    assert iv.width <= Fraction(1, 2**p)


def test_eval_interval_examples():
    assert eval_interval(UUSSRInstance(3, (0, 0, 0)), 20).is_point
    iv = eval_interval(UUSSRInstance(3, (1, 1, -1)), 20)
    assert iv.width <= Fraction(3, 2**20)
    assert contains_mp(iv, mp_value(3, (1, 1, -1)))
    assert abs(float(iv.midpoint) - 0.68216) < 1e-5
    iv = eval_interval(UUSSRInstance(3, (0, 1, -1)), 20)
    assert contains_mp(iv, mp_value(3, (0, 1, -1)))
    assert abs(float(iv.midpoint) + 0.31783) < 1e-5


def test_eval_interval_contains_mpmath_value():
    rng = random.Random(7)
    for _ in range(300):
        k = rng.randint(1, 30)
        n = _dim(k)
        delta = tuple(rng.randint(-9, 9) for _ in range(n))
        p = rng.choice((1, 8, 40, 120))
        assert contains_mp(eval_interval(UUSSRInstance(k, delta), p), mp_value(k, delta))


def test_nested_containment():
    # every vector for k <= 6, |delta| <= 3 (k = 6 covers the lower k up to padding)
    for k in (3, 6):
        for inst in box(k, 3):
            for p in (8, 16, 32):
                assert eval_interval(inst, p).contains_interval(eval_interval(inst, p + 64))


def test_sign_examples():
    assert sign_exact(UUSSRInstance(3, (0, 0, 0))) == 0
    assert sign_exact(UUSSRInstance(5, (0, 1, 1, -1))) == 1
    assert sign_exact(UUSSRInstance(3, (0, 1, -1))) == -1


def test_oracle_zero_consistency_and_mpmath_agreement():
    for inst in BOX6:
        s = sign_exact(inst)
        assert (s == 0) == (not any(inst.delta))
        if s:
            assert s == mpmath.sign(mp_value(6, inst.delta))
            assert sign_exact(-inst) == -s


def test_certified_precision_excludes_zero():
    for inst in BOX6:
        if not any(inst.delta):
            continue
        p = certified_precision(inst)
        assert eval_interval(inst, p).sign() in (1, -1)
        # matches the formula ceil(log2((m+1) max|delta| / L)) + 1
        assert p == ceil_log2(len(inst.delta) * inst.max_abs() / value_lower_bound(inst)) + 1


def test_value_lower_bound_examples_and_validity():
    assert value_lower_bound(UUSSRInstance(3, (1, 0, 0))) == 1
    assert value_lower_bound(UUSSRInstance(3, (0, -1, 1))) == Fraction(1, 64)
    for inst in BOX6[::7]:
        if any(inst.delta):
            assert abs(mp_value(6, inst.delta)) >= mpq(value_lower_bound(inst))
    with pytest.raises(DomainError):
        value_lower_bound(UUSSRInstance(3, (0, 0, 0)))


def test_oracle_result_fields():
    res = oracle_sign(UUSSRInstance(3, (0, 1, -1)))
    assert res.sign == -1 and res.bits_used == 64
    assert res.bits_used <= max(64, 4 * res.certified_bits)
    zero = oracle_sign(UUSSRInstance(3, (0, 0, 0)))
    assert (zero.sign, zero.bits_used) == (0, 0)


def test_oracle_respects_cap():
    # 10*sqrt(2) - 9*sqrt(3) is about -1.45, but 2-bit enclosures are 19/4 wide
    with pytest.raises(ResourceLimitError):
        oracle_sign(UUSSRInstance(3, (0, 10, -9)), max_bits=2)


def test_compare_values():
    a = UUSSRInstance(3, (0, 0, 1))
    b = UUSSRInstance(3, (0, 1, 0))
    assert compare_values(a, b) == 1 and compare_values(b, a) == -1 and compare_values(a, a) == 0


def test_annihilating_poly_examples():
    assert str(annihilating_poly(UUSSRInstance(2, (0, 1)))) == "x^2 - 2"
    assert annihilating_poly(UUSSRInstance(3, (0, 1, 1))).coefficients == (1, 0, -10, 0, 1)
    assert str(annihilating_poly(UUSSRInstance(3, (0, 1, 1)))) == "x^4 - 10*x^2 + 1"
    assert annihilating_poly(UUSSRInstance(3, (1, 1, 0))).coefficients == (-1, -2, 1)
    with pytest.raises(ResourceLimitError):
        annihilating_poly(UUSSRInstance(10, (0, 1, 1, 1, 1, 1, 1)), max_terms=5)


def sympy_product(k, delta):
    from sqrtsum.numtheory import square_free_basis

    x = sympy.Symbol("x")
    basis = square_free_basis(k).elements
    radicals = [(d, s) for d, s in zip(delta[1:], basis[1:]) if d]
    poly = 1
    for signs in itertools.product((1, -1), repeat=len(radicals)):
        poly *= x - delta[0] - sum(e * d * sympy.sqrt(s) for e, (d, s) in zip(signs, radicals))
    coeffs = sympy.Poly(sympy.expand(poly), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def test_annihilating_poly_against_sympy():
    rng = random.Random(3)
    for _ in range(25):
        delta = tuple(rng.randint(-2, 2) for _ in range(5))
        inst = UUSSRInstance(6, delta)
        if sum(1 for d in delta[1:] if d) > 3:
            continue
        assert annihilating_poly(inst).coefficients == sympy_product(6, delta)


def test_annihilation_at_narrow_enclosure():
    for inst in BOX6:
        radicals = sum(1 for d in inst.delta[1:] if d)
        if radicals > 3:
            continue
        P = annihilating_poly(inst)
        assert P.degree == 2**radicals and P.leading == 1
        assert P(eval_interval(inst, 200 + 4)).contains(0)


def test_annihilator_coefficients_integral_on_pairs():
    # the minimal polynomial divides the annihilator
    x = sympy.Symbol("x")
    for delta in [(0, 1, 1), (1, 1, -1), (2, -1, 1)]:
        val = sum(d * sympy.sqrt(s) for d, s in zip(delta, (1, 2, 3)))
        minpoly = sympy.Poly(sympy.minimal_polynomial(val, x), x)
        ann = sympy.Poly(list(reversed(annihilating_poly(UUSSRInstance(3, delta)).coefficients)), x)
        assert ann.rem(minpoly).is_zero


def test_mahler_sep_examples():
    assert mahler_sep(IntPolynomial((-2, 0, 1))) == Fraction(433, 3000)
    assert mahler_sep(IntPolynomial((-1, 0, 1))) == Fraction(433, 250 * 4 * 2)
    bound = mahler_sep(IntPolynomial((1, 0, -10, 0, 1)))
    assert bound == Fraction(433, 250) / (4**3 * 12**3)
    assert abs(float(bound) - 1.566e-5) < 1e-8
    with pytest.raises(DomainError):
        mahler_sep(IntPolynomial((1, 1)))


def test_mahler_sep_below_true_gaps():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 6)
        coeffs = [rng.randint(-5, 5) for _ in range(n)] + [rng.choice((1, -1, 2, 3))]
        P = IntPolynomial(tuple(coeffs))
        x = sympy.Symbol("x")
        if sympy.discriminant(sympy.Poly(list(reversed(P.coefficients)), x)) == 0:
            continue  # the bound speaks about distinct roots of a square-free polynomial
        roots = mpmath.polyroots(list(reversed(P.coefficients)), maxsteps=500, extraprec=300)
        gap = min(abs(a - b) for a, b in itertools.combinations(roots, 2))
        assert gap >= mpq(mahler_sep(P))
    # odd degree goes through the sqrt(n) upper bound
    P = IntPolynomial((0, -2, 0, 1))
    assert 0 < mahler_sep(P) < Fraction(433, 250) / (3**2 * Fraction(17320508, 10**7) * 3**2)


def test_polynomial_eval_types():
    P = IntPolynomial((-2, 0, 1, 0, 0))
    assert P.degree == 2 and P(3) == 7 and P(Fraction(1, 2)) == Fraction(-7, 4)
    assert P(sqrt_interval(2, 30)).contains(0)
    assert str(IntPolynomial(())) == "0"
