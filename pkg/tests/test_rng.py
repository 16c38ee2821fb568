from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulersphere.rng import INCREMENT, MASK64, MULTIPLIER, Lcg64


def test_first_draws_follow_the_recurrence():
    r = Lcg64(0)
    assert r.next_u64() == INCREMENT
    assert r.next_u64() == (MULTIPLIER * INCREMENT + INCREMENT) & MASK64


def test_seed_is_reduced_mod_two_to_the_64():
    assert Lcg64(-1).state == MASK64
    assert Lcg64(1 << 64).state == 0


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=MASK64), st.integers(min_value=1, max_value=10**6))
def test_below_stays_in_range(seed, n):
    r = Lcg64(seed)
    assert all(0 <= r.below(n) < n for _ in range(20))


def test_same_seed_same_stream():
    a, b = Lcg64(2024), Lcg64(2024)
    assert [a.below(97) for _ in range(50)] == [b.below(97) for _ in range(50)]
    assert Lcg64(7).spawn() == Lcg64(7).next_u64()


def test_below_one_is_zero():
    assert Lcg64(5).below(1) == 0


def test_below_rejects_empty_range():
    with pytest.raises(ValueError):
        Lcg64(5).below(0)
