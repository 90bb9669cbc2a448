import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from benfordlab.digits import (
    MAX_PREFIX_LENGTH,
    DigitPrefix,
    benford_prefix_prob,
    digit_at,
    mantissa_digits,
    prefix_of,
    significand,
)

settings.register_profile("suite", deadline=None, derandomize=True)
settings.load_profile("suite")


class TestSignificand:
    def test_identity_on_unit_range(self):
        assert significand(2.718) == 2.718

    def test_shift_below_one(self):
        assert significand(0.025) == 2.5

    def test_power_of_ten(self):
        assert significand(1000) == 1.0

    def test_tenth_has_no_drift(self):
        # the double for 0.1 is a hair above 1e-1; naive exponent
        # arithmetic reports 9.999...; the rounded read must not
        assert significand(0.1) == 1.0

    def test_integral_inputs(self):
        assert significand(55) == 5.5

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, -math.inf, math.nan])
    def test_rejects_nonpositive_and_nonfinite(self, bad):
        with pytest.raises(ValueError):
            significand(bad)

    @given(
        st.floats(min_value=1e-280, max_value=1e280),
        st.integers(min_value=-20, max_value=20),
    )
    def test_scale_invariance(self, x, k):
        scaled = x * 10.0**k
        assert 0.0 < scaled < math.inf
        assert significand(scaled) == pytest.approx(significand(x), rel=1e-12)

    @given(st.floats(min_value=1e-280, max_value=1e280))
    def test_range(self, x):
        s = significand(x)
        assert 1.0 <= s < 10.0


class TestDigitAt:
    def test_known_digits(self):
        assert digit_at(2.718, 1) == 2
        assert digit_at(2.718, 3) == 1

    def test_digits_after_shift(self):
        assert digit_at(0.025, 2) == 5

    def test_first_digit_range(self):
        for x in (1.0, 9.9999, 42.0, 0.00017):
            assert 1 <= digit_at(x, 1) <= 9

    def test_position_errors(self):
        with pytest.raises(ValueError):
            digit_at(2.718, 0)
        with pytest.raises(ValueError):
            digit_at(2.718, MAX_PREFIX_LENGTH + 1)
        with pytest.raises(ValueError):
            digit_at(-3.0, 1)

    @given(
        st.floats(min_value=1e-280, max_value=1e280),
        st.integers(min_value=1, max_value=15),
    )
    def test_matches_significand_expansion(self, x, i):
        # the i-th digit must be what the significand's own decimal
        # rendering shows at that position
        expansion = mantissa_digits(significand(x))
        assert digit_at(x, i) == int(expansion[i - 1])


class TestPrefixOf:
    def test_examples(self):
        p = prefix_of(2.718, 3)
        assert p.digits == (2, 7, 1)
        assert p.value == 271
        assert prefix_of(55, 2).value == 55
        assert prefix_of(0.00999, 2).value == 99

    def test_agrees_with_scaled_floor(self):
        for x in (2.718, 55.0, 0.00999, 7.0, 9.99):
            for m in (1, 2, 3):
                p = prefix_of(x, m)
                assert p.value == int(significand(x) * 10 ** (m - 1) + 1e-9)

    def test_length_errors(self):
        with pytest.raises(ValueError):
            prefix_of(2.718, 0)
        with pytest.raises(ValueError):
            prefix_of(2.718, 16)


class TestDigitPrefix:
    def test_value_computed_from_digits(self):
        assert DigitPrefix((1, 0, 7)).value == 107

    def test_stored_value_must_match(self):
        with pytest.raises(ValueError):
            DigitPrefix((1, 2), 13)

    def test_leading_digit_nonzero(self):
        with pytest.raises(ValueError):
            DigitPrefix((0, 5))

    def test_digit_range(self):
        with pytest.raises(ValueError):
            DigitPrefix((1, 12))

    def test_length_cap(self):
        with pytest.raises(ValueError):
            DigitPrefix(tuple([1] * 16))

    def test_from_value_roundtrip(self):
        p = DigitPrefix.from_value(907)
        assert p.digits == (9, 0, 7)
        assert str(p) == "907"
        assert DigitPrefix.parse("907") == p

    def test_bucket_geometry(self):
        p = DigitPrefix.parse("25")
        assert p.bucket_low() == 2.5
        assert p.bucket_high() == 2.6
        assert p.log_low() == pytest.approx(math.log10(2.5), rel=1e-15)
        assert p.log_high() == pytest.approx(math.log10(2.6), rel=1e-15)

    def test_child(self):
        assert DigitPrefix.parse("31").child(4).value == 314


class TestPrefixProbability:
    def test_first_digit_one(self):
        assert benford_prefix_prob(DigitPrefix.parse("1")) == pytest.approx(
            0.3010300, abs=1e-7
        )

    def test_three_ones(self):
        assert benford_prefix_prob(DigitPrefix.parse("111")) == pytest.approx(
            3.89e-3, abs=0.01e-3
        )

    @pytest.mark.parametrize("depth", [1, 2, 3])
    def test_normalization(self, depth):
        total = math.fsum(
            benford_prefix_prob(DigitPrefix.from_value(x))
            for x in range(10 ** (depth - 1), 10**depth)
        )
        assert abs(total - 1.0) <= 1e-12

    @pytest.mark.parametrize("depth", [2, 3, 4])
    def test_marginalization(self, depth):
        # summing the last digit of a depth-n law recovers the
        # depth-(n-1) law exactly
        for x in range(10 ** (depth - 2), 10 ** (depth - 1)):
            parent = DigitPrefix.from_value(x)
            total = math.fsum(
                benford_prefix_prob(parent.child(d)) for d in range(10)
            )
            assert abs(total - benford_prefix_prob(parent)) <= 1e-12

    @pytest.mark.parametrize("depth", [1, 2, 3])
    def test_strictly_decreasing_in_value(self, depth):
        values = [
            benford_prefix_prob(DigitPrefix.from_value(x))
            for x in range(10 ** (depth - 1), 10**depth)
        ]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_long_prefix_precision(self):
        # log1p formulation: at 15 digits the probability is ~4.3e-16
        # and must stay positive and finite
        p = DigitPrefix.from_value(10**14 + 7)
        prob = benford_prefix_prob(p)
        assert 0.0 < prob < 1e-14
