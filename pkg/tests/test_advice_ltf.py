import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import pytest
from hypothesis import given, strategies as st

from conftest import mp_value
from sqrtsum.advice_ltf import (
    LtfAdvice,
    decide_ltf,
    domain_index,
    lp_weight_bound,
    round_weight_bound,
    synth_lp,
    synth_round,
)
from sqrtsum.errors import DomainError, ResourceLimitError
from sqrtsum.instances import domain_vectors, min_gap
from sqrtsum.model import DomainSpec, UUSSRInstance

SMALL = [DomainSpec(1, 1), DomainSpec(2, 1), DomainSpec(2, 2), DomainSpec(3, 1), DomainSpec(4, 2)]


def mp_sign_agrees(adv):
    dom = adv.domain
    for delta in domain_vectors(dom):
        want = int(mpmath.sign(mp_value(dom.k, delta)))
        assert decide_ltf(UUSSRInstance(dom.k, delta), adv) == want, delta


def test_round_examples():
    adv = synth_round(DomainSpec(3, 1))
    assert adv.weights == (19, 27, 33) and adv.info("lambda") == "19"
    assert adv.info("eps_witness") == "0 -1 1"
    lo, hi = Fraction(adv.info("eps_min_lo")), Fraction(adv.info("eps_min_hi"))
    assert lo < float(mpmath.sqrt(3) - mpmath.sqrt(2)) < hi
    assert synth_round(DomainSpec(2, 1)).weights == (10, 14)
    # integer-only domain: eps_min = 1, lambda = ceil(2 * 1 * 5 / 1)
    one = synth_round(DomainSpec(1, 5))
    assert one.info("lambda") == "10" and one.weights == (10,)


def test_lp_examples():
    assert synth_lp(DomainSpec(1, 1)).weights == (1,)
    two = synth_lp(DomainSpec(2, 1))
    three = synth_lp(DomainSpec(3, 1))
    assert max(map(abs, two.weights)) <= 6 == lp_weight_bound(DomainSpec(2, 1))
    assert max(map(abs, three.weights)) <= 24 == lp_weight_bound(DomainSpec(3, 1))
    assert len(three.info("tight").split()) == 3


def test_lp_tight_constraints_hold_with_equality():
    dom = DomainSpec(3, 2)
    adv = synth_lp(dom)
    lcm = int(adv.info("denominator_lcm"))
    by_index = {domain_index(dom, d): d for d in domain_vectors(dom)}
    for idx in map(int, adv.info("tight").split()):
        assert sum(a * u for a, u in zip(by_index[idx], adv.weights)) == lcm


def test_decide_examples():
    adv = LtfAdvice(DomainSpec(3, 1), (19, 27, 33), "round")
    assert decide_ltf(UUSSRInstance(3, (0, 0, 0)), adv) == 0
    assert decide_ltf(UUSSRInstance(3, (1, 1, -1)), adv) == 1
    assert decide_ltf(UUSSRInstance(3, (0, 1, -1)), adv) == -1
    # realizations quoted as valid alternatives also pass the independent check
    mp_sign_agrees(LtfAdvice(DomainSpec(3, 1), (3, 4, 5), "lp"))
    mp_sign_agrees(LtfAdvice(DomainSpec(2, 1), (2, 3), "lp"))


@pytest.mark.parametrize("dom", SMALL, ids=lambda d: f"k{d.k}B{d.B}")
def test_both_methods_sound(dom):
    r = synth_round(dom)
    mp_sign_agrees(r)
    assert max(map(abs, r.weights)) <= round_weight_bound(dom, int(r.info("lambda")))
    p = synth_lp(dom)
    mp_sign_agrees(p)
    assert max(map(abs, p.weights)) <= lp_weight_bound(dom)


def test_monotone_domain_restriction():
    big = synth_lp(DomainSpec(3, 2))
    for delta in domain_vectors(DomainSpec(3, 1)):
        small = UUSSRInstance(3, delta)
        assert decide_ltf(small, big) == int(mpmath.sign(mp_value(3, delta)))


@given(st.integers(min_value=1, max_value=10**6), st.tuples(*[st.integers(-2, 2)] * 4))
def test_scaling_invariance(factor, delta):
    dom = DomainSpec(5, 2)
    adv = _round_5_2()
    scaled = LtfAdvice(dom, tuple(factor * u for u in adv.weights), adv.method)
    inst = UUSSRInstance(5, delta)
    assert decide_ltf(inst, adv) == decide_ltf(inst, scaled)


@lru_cache(maxsize=None)
def _round_5_2():
    return synth_round(DomainSpec(5, 2))


def test_out_of_domain_rejected():
    adv = synth_round(DomainSpec(3, 1))
    with pytest.raises(DomainError):
        decide_ltf(UUSSRInstance(3, (2, 0, 0)), adv)
    with pytest.raises(DomainError):
        decide_ltf(UUSSRInstance(2, (1, 0)), adv)
    with pytest.raises(DomainError):
        LtfAdvice(DomainSpec(3, 1), (1, 2), "round")
    with pytest.raises(DomainError):
        LtfAdvice(DomainSpec(3, 1), (1, 2, 3), "perceptron")


def test_lp_resource_limit():
    with pytest.raises(ResourceLimitError):
        synth_lp(DomainSpec(6, 3), max_constraints=1000)


def test_round_lambda_matches_gap():
    dom = DomainSpec(5, 1)
    adv = synth_round(dom)
    gap = min_gap(dom)
    assert int(adv.info("lambda")) == math.ceil(2 * dom.dimension * dom.B / gap.enclosure.lower)
