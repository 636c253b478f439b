import math

import pytest
from hypothesis import given, strategies as st

from stograph.growth import (
    ExpTail,
    FactorialTail,
    GrowthClass,
    PolyTail,
    RadialSequence,
    ZERO_CLASS,
)


def test_mul_and_div_compose_components():
    a = GrowthClass(2.0, fact=1.0, base=2.0, power=1.0)
    b = GrowthClass(0.5, base=2.0, power=-3.0)
    ab = a.mul(b)
    assert ab == GrowthClass(1.0, fact=1.0, base=4.0, power=-2.0)
    assert ab.div(b) == a


def test_shift_moves_exponential_scale_and_factorial_power():
    assert GrowthClass(1.0, base=2.0).shift(1) == GrowthClass(2.0, base=2.0)
    assert GrowthClass(1.0, base=2.0).shift(-1) == GrowthClass(0.5, base=2.0)
    # (r+1)! ~ r! * r
    assert GrowthClass(1.0, fact=1.0).shift(1) == GrowthClass(1.0, fact=1.0, power=1.0)
    assert GrowthClass(3.0, power=5.0).shift(2) == GrowthClass(3.0, power=5.0)


def test_sub_decisive_and_tie():
    a = GrowthClass(1.0, power=2.0)
    b = GrowthClass(0.25, power=2.0)
    assert a.sub(b) == GrowthClass(0.75, power=2.0)
    assert a.sub(GrowthClass(1.0, power=2.0)) is None
    assert a.sub(GrowthClass(5.0, power=1.0)) == a


def test_partial_sum_rules():
    assert GrowthClass(1.0, power=3.0).partial_sum() == GrowthClass(0.25, power=4.0)
    assert GrowthClass(1.0, base=2.0).partial_sum() == GrowthClass(2.0, base=2.0)
    assert GrowthClass(2.0, fact=1.0).partial_sum() == GrowthClass(2.0, fact=1.0)
    harmonic = GrowthClass(1.0, power=-1.0).partial_sum()
    assert harmonic.logpow == 1.0
    assert GrowthClass(1.0, power=-2.0).partial_sum() is None
    assert GrowthClass(1.0, base=0.5).partial_sum() is None


@pytest.mark.parametrize(
    "cls,expected",
    [
        (GrowthClass(1.0, power=-1.0), True),  # harmonic boundary diverges
        (GrowthClass(1.0, power=-1.0 - 1e-9), False),
        (GrowthClass(1.0, power=0.0), True),
        (GrowthClass(1.0, base=1.5), True),
        (GrowthClass(1.0, base=0.5, power=100.0), False),
        (GrowthClass(1.0, fact=-1.0, base=8.0), False),  # 8^r / r! summable
        (ZERO_CLASS, False),
    ],
)
def test_divergence_rules(cls, expected):
    assert cls.diverges() is expected


def test_poly_tail_values_and_remainder_bound():
    t = PolyTail(-2.0, 1.0)
    assert t.value(9) == pytest.approx(0.01)
    bound = t.remainder_upper_bound(10)
    true = sum((l + 1.0) ** -2 for l in range(10, 4000))
    assert true <= bound <= true + 0.02


def test_exp_tail_remainder_is_exact_geometric():
    t = ExpTail(0.5, 1.0)
    assert t.remainder_upper_bound(4) == pytest.approx(2.0 * 0.5**4)
    assert t.value(3) == 0.125


def test_factorial_tail_value():
    assert FactorialTail(1.0).value(6) == 720


def test_radial_sequence_lookup_and_sums():
    s = RadialSequence((1.0, 0.5, 0.25), ExpTail(0.5, 1.0))
    assert s.value(2) == 0.25
    assert s.value(5) == 0.5**5
    assert s.partial_sum(5) == pytest.approx(sum(0.5**l for l in range(6)))
    assert s.remainder_lower_bound(0) == 0.75
    assert s.remainder_upper_bound(0) == pytest.approx(1.0)
    with pytest.raises(IndexError):
        RadialSequence((1.0,)).value(3)


@given(
    p=st.floats(min_value=-3.0, max_value=1.0),
    scale=st.floats(min_value=0.01, max_value=100.0),
)
def test_reciprocal_sum_transfer(p, scale):
    """If sum 1/f diverges for polynomial f, so does sum 1/(f + r)."""
    f = GrowthClass(scale, power=p)
    inv = GrowthClass(1.0 / scale, power=-p)
    if not inv.diverges():
        return
    shifted = f.add(GrowthClass(1.0, power=1.0))
    assert shifted is not None
    inv_shifted = GrowthClass(1.0 / shifted.scale, power=-shifted.power)
    assert inv_shifted.diverges()
