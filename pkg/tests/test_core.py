import random

import pytest

from collatz_lab.core import (
    CycleInfo,
    NoCycleWithinBudget,
    detect_cycle,
    parity_indicator,
    step,
    trajectory,
)


def test_step_examples():
    assert step(7) == 11
    assert step(2) == 1
    assert step(9363) == 14045


def test_step_rejects_nonpositive():
    with pytest.raises(ValueError):
        step(0)
    with pytest.raises(ValueError):
        step(-5)


def test_parity_law_exhaustive():
    # the one and only map: combined odd-step, halving otherwise
    for p in range(1, 10_001):
        if p % 2:
            assert step(p) == (3 * p + 1) // 2
        else:
            assert step(p) == p // 2


def test_trajectory_examples():
    assert trajectory(7, 11).terms == (7, 11, 17, 26, 13, 20, 10, 5, 8, 4, 2, 1)
    assert trajectory(1, 4).terms == (1, 2, 1, 2, 1)
    assert trajectory(3, 4).terms == (3, 5, 8, 4, 2)


def test_trajectory_shape():
    t = trajectory(27, 100)
    assert t.seed == 27
    assert len(t.terms) == 101
    assert t.steps == 100
    assert all(x >= 1 for x in t.terms)


def test_trajectory_matches_repeated_step():
    rng = random.Random(1905)
    seeds = list(range(1, 2001)) + [rng.randrange(1, 100_000) for _ in range(100)]
    for p in seeds:
        k = 120 if p <= 2000 else 500
        t = trajectory(p, k)
        x = p
        for i in range(k + 1):
            assert t.terms[i] == x
            if i < k:
                x = step(x)


def test_parity_indicator_examples():
    assert parity_indicator(7, 0) == 1
    assert parity_indicator(7, 3) == 0  # third iterate of 7 is 26
    assert parity_indicator(1, 2) == 1


def test_parity_indicator_matches_trajectory():
    for p in (1, 7, 27, 97, 871):
        t = trajectory(p, 30)
        for k in range(31):
            assert parity_indicator(p, k) == t.terms[k] % 2


def test_detect_cycle_from_one():
    out = detect_cycle(1, 100, 10**6)
    assert isinstance(out, CycleInfo)
    assert out.entry_index == 0
    assert out.members == (1, 2)
    assert out.min_member == 1


def test_detect_cycle_from_seven():
    out = detect_cycle(7, 100, 10**6)
    assert isinstance(out, CycleInfo)
    assert set(out.members) == {1, 2}
    assert out.min_member == 1
    # the trajectory of 7 first revisits a value at its 10th iterate
    assert out.entry_index == 10


def test_detect_cycle_members_are_a_cycle():
    for p in (1, 2, 7, 27, 500):
        out = detect_cycle(p, 10_000, 1 << 128)
        assert isinstance(out, CycleInfo)
        assert step(out.members[-1]) == out.members[0]
        for a, b in zip(out.members, out.members[1:]):
            assert step(a) == b


def test_detect_cycle_budget_exhausted():
    out = detect_cycle(27, 10, 10**6)
    assert isinstance(out, NoCycleWithinBudget)
    assert out.reason == "budget-exhausted"
    assert out.steps_taken == 10


def test_detect_cycle_bound_exceeded():
    out = detect_cycle(27, 1000, 100)
    assert isinstance(out, NoCycleWithinBudget)
    assert out.reason == "bound-exceeded"
    assert out.last_term > 100


def test_detect_cycle_preconditions():
    with pytest.raises(ValueError):
        detect_cycle(5, 0, 100)
    with pytest.raises(ValueError):
        detect_cycle(5, 10, 4)  # bound below the seed


def test_every_small_seed_reaches_the_known_cycle():
    # dense check low, sampled check high; the full range up to 10^6 is
    # covered by the acceptance survey
    for p in range(1, 20_001):
        out = detect_cycle(p, 10_000, 1 << 128)
        assert isinstance(out, CycleInfo), p
        assert out.min_member == 1, p
    rng = random.Random(7)
    for _ in range(300):
        p = rng.randrange(20_001, 1_000_001)
        out = detect_cycle(p, 10_000, 1 << 128)
        assert isinstance(out, CycleInfo), p
        assert out.min_member == 1, p
