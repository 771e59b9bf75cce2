from fractions import Fraction

from collatz_lab.trends import assess_trend


def F(a, b=1):
    return Fraction(a, b)


def test_too_few_points():
    assert assess_trend([1, 2]).kind == "inconclusive"


def test_stabilizes():
    t = assess_trend([9, 5, 2, 2, 2])
    assert t.kind == "stabilizes"
    assert t.value == 2


def test_tends_to_zero_at_three_quarters_rate():
    # the map's own slowest natural decay must be detected
    vals = [F(3, 4) ** k for k in range(1, 6)]
    t = assess_trend(vals)
    assert t.kind == "tends-to-zero"


def test_tends_to_zero_rejects_slow_decay():
    vals = [F(9, 10) ** k for k in range(1, 6)]
    assert assess_trend(vals).kind == "inconclusive"


def test_tends_to_integer_oscillating():
    # oscillating approach to 2, contraction well under 4/5
    vals = [F(3), F(3, 2), F(17, 8), F(63, 32)]
    t = assess_trend(vals)
    assert t.kind == "tends-to"
    assert t.value == 2


def test_growth_with_a_dip_is_unbounded():
    vals = [1, 3, 23, 15, 863, 2623, 4479]
    t = assess_trend(vals)
    assert t.kind == "grows-unbounded"


def test_strict_growth_is_unbounded():
    vals = [2**k for k in range(12)]
    assert assess_trend(vals).kind == "grows-unbounded"


def test_small_growth_is_not_unbounded():
    # total growth below the 2^10 floor
    vals = [1, 3, 7, 15, 31]
    assert assess_trend(vals).kind == "inconclusive"


def test_decelerating_growth_is_not_mistaken_for_convergence():
    # three growth steps whose last difference contracts; the record
    # evidence must win over any integer-target match
    vals = [103935, 418815, 3774463, 5312511]
    assert assess_trend(vals).kind == "grows-unbounded"


def test_growing_sequence_never_tends_to_nearby_integer():
    vals = [F(100), F(150), F(175)]  # decelerating but small total growth
    t = assess_trend(vals)
    # Aitken extrapolation puts the target at 200, and distances to 200 do
    # contract: this is genuinely consistent with geometric convergence
    assert t.kind == "tends-to"
    assert t.value == 200


def test_exact_landing_is_not_convergence_evidence():
    # reaching the candidate exactly must not be read as tending to it
    vals = [F(10), F(4), F(2)]
    t = assess_trend(vals)
    assert t.kind != "tends-to" or t.value != 2
