import math

import pytest

from aliquot.alpha import (
    AlphaParams,
    alpha_p_product_form,
    alpha_term,
    alpha_two_part,
    alpha_upper_bound,
    tail_a,
)
from aliquot.errors import ParameterError
from aliquot.primes import primes_in_range

# Reference values (10 displayed digits) for L = M = 15.
SUMS_TABLE = {
    10**4: (0.6983072233, 1.0000093132e-4),
    10**5: (0.6983162365, 1.0000931323e-5),
    10**6: (0.6983169710, 1.0009313233e-6),
}


class TestAlphaTerm:
    def test_p2_m1(self):
        assert alpha_term(2, 1) == pytest.approx(0.5 * math.log(1.5), abs=1e-16)

    def test_p2_m2(self):
        assert alpha_term(2, 2) == pytest.approx(0.25 * math.log(7 / 6), rel=1e-15)

    def test_term_bounded_by_inverse_square(self):
        for p in primes_in_range(2, 100).tolist():
            for m in range(1, 11):
                assert alpha_term(p, m) <= (1.0 / p**m) ** 2

    def test_rejects_bad_m(self):
        with pytest.raises(ParameterError):
            alpha_term(5, 0)


class TestTailA:
    def test_p2_depth15(self):
        assert tail_a(2, 15) == 2.0 * 2.0**-32
        assert 2 * tail_a(2, 15) == pytest.approx(9.3132e-10, rel=1e-4)

    def test_p3_depth15(self):
        assert tail_a(3, 15) == pytest.approx(1.5 * 3.0**-32, rel=1e-15)

    def test_dominates_dropped_terms(self):
        # Tail beyond depth M, evaluated out to depth 60, never exceeds A(p, M).
        for p in primes_in_range(2, 100).tolist():
            for M in (2, 5, 15):
                dropped = math.fsum(alpha_term(p, m) for m in range(M + 1, 61))
                assert dropped <= tail_a(p, M)


class TestAlphaTwoPart:
    def test_limit_matches_direct_series(self):
        # At depth 60 the rearranged form equals the direct series
        # sum of 2^-m log(1 + 1/2 + ... + 1/2^m).
        rearranged = alpha_two_part(60).value
        direct = math.fsum(
            2.0**-m * math.log(2.0 - 2.0**-m) for m in range(1, 61)
        )
        assert abs(rearranged - direct) < 1e-15

    def test_truncation_within_tail_bound(self):
        deep = alpha_two_part(60).value
        for L in (2, 5, 15):
            short = alpha_two_part(L).value
            assert abs(short - deep) <= 2 * tail_a(2, L)

    def test_depth15_tail_below_2_to_minus_30(self):
        assert abs(alpha_two_part(15).value - alpha_two_part(60).value) <= 2.0**-30


class TestParams:
    def test_validation(self):
        with pytest.raises(ParameterError):
            AlphaParams(2, 15, 15)
        with pytest.raises(ParameterError):
            AlphaParams(100, 1, 15)
        with pytest.raises(ParameterError):
            AlphaParams(100, 15, 1)


class TestUpperBound:
    @pytest.mark.parametrize("N", [10**4, 10**5])
    def test_reference_table(self, N):
        result = alpha_upper_bound(AlphaParams(N, 15, 15))
        sums_ref, tail_ref = SUMS_TABLE[N]
        assert abs(result.sums.value - sums_ref) < 1e-9
        assert abs(result.tail_total - tail_ref) / tail_ref < 5e-7

    def test_upper_bound_exceeds_sums(self):
        result = alpha_upper_bound(AlphaParams(10**4, 15, 15))
        assert result.upper_bound >= result.sums.value
        assert result.tail_total > 0

    def test_monotone_in_N(self):
        ub = [
            alpha_upper_bound(AlphaParams(N, 15, 15)).upper_bound
            for N in (10**3, 10**4, 10**5)
        ]
        for tighter, looser in zip(ub[1:], ub[:-1]):
            assert tighter <= looser + 1e-12

    def test_worker_and_block_bit_identity(self):
        a = alpha_upper_bound(AlphaParams(10**5, 15, 15), workers=1)
        b = alpha_upper_bound(AlphaParams(10**5, 15, 15), workers=8)
        assert a.sums.value == b.sums.value
        assert a.upper_bound == b.upper_bound

    def test_block_size_within_radii(self):
        a = alpha_upper_bound(AlphaParams(10**5, 15, 15), block_size=1 << 20)
        b = alpha_upper_bound(AlphaParams(10**5, 15, 15), block_size=4096)
        assert abs(a.sums.value - b.sums.value) <= a.sums.error_radius + b.sums.error_radius

    def test_json_round_trip(self):
        import json

        result = alpha_upper_bound(AlphaParams(10**4, 15, 15))
        doc = json.loads(result.to_json())
        assert doc["params"] == {"N": 10**4, "L": 15, "M": 15}
        assert doc["upper_bound"] == result.upper_bound


class TestTwoForms:
    def test_product_and_term_forms_agree(self):
        for p in primes_in_range(2, 100).tolist():
            term_form = math.fsum(alpha_term(p, m) for m in range(1, 61))
            product_form = alpha_p_product_form(p, 60)
            assert abs(term_form - product_form) < 1e-14


class TestAllPrimeConstant:
    def test_partial_sums_approach_library_constant(self):
        # alpha(p) summed over all primes (p = 2 counted once) tends to
        # about 0.4457; at N = 1e6, depth 15, the partial sum sits within
        # 2e-5 of that value.
        result = alpha_upper_bound(AlphaParams(10**6, 15, 15))
        odd_part = result.sums.value - alpha_two_part(15).value
        a_estimate = alpha_two_part(60).value / 2 + odd_part
        assert abs(a_estimate - 0.4457) < 2e-5
