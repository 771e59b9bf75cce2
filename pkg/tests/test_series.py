from fractions import Fraction

import pytest

from collatz_lab.classify import AClass, BClass, MClass, Realizability, SClass
from collatz_lab.coeffs import coeffs_of_seed
from collatz_lab.core import step, trajectory
from collatz_lab.errors import IndexTooLarge, InsufficientEvidence, NotNested
from collatz_lab.parity import ParityVector, parity_vector
from collatz_lab.series import (
    Family,
    build_series,
    report_table,
    report_to_json,
    series_limits,
    zeros_then_ones_seed,
)


class TestOnesThenZeros:
    def test_first_members(self):
        r = build_series(Family.ONES_THEN_ZEROS, 4)
        m1, m2 = r.members[0], r.members[1]
        assert (m1.seed, m1.depth) == (1, 2)
        assert m1.vector == (1, 0)
        assert m1.coeffs.scale.as_fraction() == Fraction(3, 4)
        assert m1.coeffs.offset.as_fraction() == Fraction(1, 4)
        assert (m2.seed, m2.depth) == (3, 4)
        assert m2.vector == (1, 1, 0, 0)
        assert m2.coeffs.scale.as_fraction() == Fraction(9, 16)
        assert m2.coeffs.offset.as_fraction() == Fraction(5, 16)

    def test_closed_forms_up_to_20(self):
        r = build_series(Family.ONES_THEN_ZEROS, 20, index_cap=64)
        for m in r.members:
            k = m.index
            assert m.coeffs.scale.as_fraction() == Fraction(3**k, 4**k)
            assert m.coeffs.offset.as_fraction() == Fraction(3**k - 2**k, 4**k)

    def test_members_are_consistent(self):
        r = build_series(Family.ONES_THEN_ZEROS, 10)
        for m in r.members:
            assert parity_vector(m.seed, m.depth) == m.vector
            assert m.coeffs == coeffs_of_seed(m.seed, m.depth)
            assert m.terminal == trajectory(m.seed, m.depth).terms[-1]

    def test_limits(self):
        lim = series_limits(build_series(Family.ONES_THEN_ZEROS, 12))
        assert not lim.realizable
        assert lim.p_inf_kind == "unbounded"
        assert lim.a_inf == 0
        assert lim.b_inf == 0
        assert lim.label.realizability is Realizability.NR
        assert lim.label.a_class is AClass.A0_MINUS
        assert lim.label.b_class is BClass.B_MINUS
        assert lim.label.s_class is SClass.S_MINUS
        assert lim.label.m_class is MClass.M_PLUS


class TestZerosThenOnes:
    def test_seed_formula_is_integral(self):
        for n in range(1, 31):
            seed = zeros_then_ones_seed(n)  # divisibility asserted inside
            assert seed > 0

    def test_known_member(self):
        r = build_series(Family.ZEROS_THEN_ONES, 6)
        m5 = r.members[4]
        assert m5.seed == 661
        assert step(m5.seed) == 992
        assert m5.depth == 11
        assert m5.coeffs.scale.as_fraction() == Fraction(729, 2048)
        assert m5.coeffs.offset.as_fraction() == Fraction(13747, 2048)
        assert m5.terminal == 242

    def test_first_iterate_closed_form(self):
        for n in range(1, 21):
            seed = zeros_then_ones_seed(n)
            want = (1 << (2 * n)) - (1 << n) if n % 2 else 3 * (1 << (2 * n)) - (1 << n)
            assert step(seed) == want

    def test_terminal_closed_form(self):
        r = build_series(Family.ZEROS_THEN_ONES, 14)
        for m in r.members:
            n = m.index
            want = 3**n - 1 if n % 2 else 3 ** (n + 1) - 1
            assert m.terminal == want

    def test_every_member_is_terminal_decreasing(self):
        # terminal never above the first iterate (equality only at index 1,
        # where the run is 1,2,1,2)
        r = build_series(Family.ZEROS_THEN_ONES, 20, index_cap=64)
        for m in r.members:
            assert m.terminal <= step(m.seed)
            if m.index >= 2:
                assert m.terminal < step(m.seed)

    def test_vector_shape(self):
        r = build_series(Family.ZEROS_THEN_ONES, 6)
        for m in r.members:
            n = m.index
            assert m.vector == (1,) + (0,) * n + (1,) * n

    def test_limits(self):
        lim = series_limits(build_series(Family.ZEROS_THEN_ONES, 18))
        assert not lim.realizable
        assert lim.a_inf == 0
        assert lim.b_inf is None  # unbounded offset
        assert lim.label.a_class is AClass.A0_MINUS
        assert lim.label.b_class is BClass.B_PLUS
        assert lim.label.s_class is SClass.S_MINUS
        assert lim.label.realizability is Realizability.NR


class TestFromPrefixes:
    def test_prefixes_of_seed_seven(self):
        prefixes = [parity_vector(7, n) for n in (4, 8, 12, 16, 20)]
        r = build_series(Family.FROM_PREFIXES, prefixes=prefixes)
        assert [m.seed for m in r.members] == [7] * 5
        lim = series_limits(r)
        assert lim.realizable
        assert lim.p_inf == 7
        assert lim.a_inf == 0
        assert lim.label.realizability is Realizability.R
        assert lim.label.a_class is AClass.A0_MINUS
        assert lim.label.b_class is BClass.B_MINUS
        assert lim.label.s_class is SClass.S_MINUS

    def test_rejects_non_prefix_chain(self):
        with pytest.raises(NotNested):
            build_series(
                Family.FROM_PREFIXES,
                prefixes=[ParityVector((1, 0)), ParityVector((0, 1, 1))],
            )

    def test_rejects_empty(self):
        with pytest.raises(NotNested):
            build_series(Family.FROM_PREFIXES, prefixes=[])


class TestSeriesMachinery:
    def test_index_cap(self):
        with pytest.raises(IndexTooLarge):
            build_series(Family.ONES_THEN_ZEROS, 100)

    def test_insufficient_evidence(self):
        r = build_series(Family.ONES_THEN_ZEROS, 2)
        with pytest.raises(InsufficientEvidence):
            series_limits(r)

    def test_table_layout(self):
        text = report_table(build_series(Family.ONES_THEN_ZEROS, 3))
        lines = text.split("\n")
        assert lines[0].split() == ["member", "seed", "scale", "offset", "terminal"]
        assert len(lines) == 4

    def test_json_shape(self):
        payload = report_to_json(build_series(Family.ZEROS_THEN_ONES, 4))
        assert payload["family"] == "zeros-ones"
        assert len(payload["members"]) == 4
        assert set(payload["trends"]) == {"seed", "scale", "offset", "terminal"}
