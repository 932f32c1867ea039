import pytest

from matprng.analysis.vinogradov import vinogradov_count, vinogradov_count_naive
from matprng.errors import EnumerationTooLargeError


class TestKnownCounts:
    def test_n_1_1_of_2(self):
        assert vinogradov_count(1, 1, 2) == 2  # only x1 = y1

    def test_n_2_1_of_2(self):
        # exhaustive over 16 tuples: sums 2,3,3,4 -> 1 + 4 + 1 = 6
        assert vinogradov_count(2, 1, 2) == 6

    def test_n_2_2_of_2(self):
        assert vinogradov_count(2, 2, 2) == 6  # multiset equality forced

    def test_bad_args(self):
        with pytest.raises(ValueError):
            vinogradov_count(0, 1, 2)

    def test_guards(self):
        with pytest.raises(EnumerationTooLargeError):
            vinogradov_count(30, 1, 10)
        with pytest.raises(EnumerationTooLargeError):
            vinogradov_count_naive(15, 1, 10)


class TestAgainstNaive:
    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("r", [1, 2, 3])
    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_agreement(self, k, r, m):
        assert vinogradov_count(k, r, m) == vinogradov_count_naive(k, r, m)

    def test_agreement_larger_m(self):
        for m in (6, 7, 8):
            assert vinogradov_count(2, 2, m) == vinogradov_count_naive(2, 2, m)


class TestStructure:
    @pytest.mark.parametrize("k,r,m", [(1, 1, 5), (2, 1, 4), (2, 2, 6), (3, 2, 4)])
    def test_diagonal_lower_bound(self, k, r, m):
        assert vinogradov_count(k, r, m) >= m**k

    def test_symmetric_upper_bound(self):
        for k, r, m in ((2, 1, 4), (2, 2, 5), (3, 3, 3)):
            assert vinogradov_count(k, r, m) <= m ** (2 * k)

    @pytest.mark.parametrize("k,m", [(2, 4), (2, 6), (3, 3)])
    def test_moments_determine_multisets(self, k, m):
        # for r >= k the power sums pin down the multiset, so the count
        # stabilizes
        base = vinogradov_count(k, k, m)
        for r in range(k, k + 3):
            assert vinogradov_count(k, r, m) == base
        assert vinogradov_count_naive(k, k, m) == base


class TestFordComparison:
    def test_bound_dominates_when_hypothesis_granted(self):
        # with the c0 knob at 1 the validity flag is granted for r >= d and
        # the (enormous) bound must dominate the exact count
        from matprng.analysis import solve_instance

        for k, r, m in ((2, 2, 4), (3, 2, 6), (3, 3, 5)):
            inst = solve_instance(k, r, m, d=2, c0=1)
            assert inst.bound_applies
            assert inst.count <= float(inst.ford.value)

    def test_comparison_reported_not_asserted_below_threshold(self):
        from matprng.analysis import solve_instance

        inst = solve_instance(2, 2, 4, d=2)  # default c0 = 1000
        assert not inst.bound_applies  # reported; nothing asserted about order
        # 4 equal pairs + 6 two-element multisets with 2 arrangements each:
        # 4 * 1 + 6 * 4 = 28
        assert inst.count == 28
