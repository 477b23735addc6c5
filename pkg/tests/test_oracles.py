import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critsat import (
    BudgetRegime,
    InvalidSpec,
    RngStream,
    TooLarge,
    clause_category_probs,
    enumerate_category_counts,
    gw_generation,
    gw_survival,
    gw_survival_exact,
    one_sat_bound,
    rounds_budget,
)


class TestCategoryProbs:
    def test_worked_example_n4_f2(self):
        p = clause_category_probs(4, 2)
        assert p.as_tuple() == (
            Fraction(1, 24),
            Fraction(1, 3),
            Fraction(1, 6),
            Fraction(11, 24),
        )

    def test_probabilities_sum_to_one(self):
        for n in (2, 3, 10, 97):
            for f in range(n + 1):
                assert sum(clause_category_probs(n, f).as_tuple()) == 1

    def test_no_fixing_all_untouched(self):
        p = clause_category_probs(10, 0)
        assert p.as_tuple() == (0, 0, 1, 0)

    def test_full_fixing_no_survivors(self):
        p0, p1, p2, pstar = clause_category_probs(5, 5).as_tuple()
        assert p1 == p2 == 0
        assert p0 == Fraction(1, 4)
        assert pstar == Fraction(3, 4)

    def test_enumeration_example(self):
        assert enumerate_category_counts(4, 2) == (1, 8, 4, 11)

    def test_enumeration_guard(self):
        with pytest.raises(TooLarge):
            enumerate_category_counts(300, 2)

    def test_formula_equals_enumeration_exactly(self):
        # exact rational identity on the full small-n range
        for n in range(2, 31):
            domain = 4 * math.comb(n, 2)
            for f in range(n + 1):
                counts = enumerate_category_counts(n, f)
                probs = clause_category_probs(n, f).as_tuple()
                assert sum(counts) == domain
                for count, p in zip(counts, probs):
                    assert Fraction(count, domain) == p, (n, f)


class TestOneSatBound:
    def test_exact_small_case(self):
        # F_1(2,2): 16 equally likely ordered pairs of unit clauses,
        # 4 complementary -> P(SAT) = 12/16
        assert one_sat_bound(2, 2) == Fraction(0)  # (1 - 2/2)^2
        count = 0
        for a in (1, -1, 2, -2):
            for b in (1, -1, 2, -2):
                count += a != -b
        assert Fraction(count, 16) == Fraction(3, 4)

    def test_bound_values(self):
        assert one_sat_bound(4, 2) == Fraction(1, 4)
        assert one_sat_bound(10, 0) == 1

    def test_domain_check(self):
        with pytest.raises(InvalidSpec):
            one_sat_bound(2, 3)  # needs m <= n


class TestRoundsBudget:
    def test_reference_points(self):
        assert rounds_budget(10**6, 0.4, BudgetRegime.OVER).rounds == 218
        assert rounds_budget(10**12, 0.3, BudgetRegime.UNDER).rounds == 2

    def test_under_budget_floors_to_zero_at_desk_scale(self):
        assert rounds_budget(10**5, 0.2, BudgetRegime.UNDER).rounds == 0

    def test_formulas(self):
        n, q = 10**5, 0.45
        over = rounds_budget(n, q, BudgetRegime.OVER).rounds
        assert over == math.floor(n ** (1 - 2 * q) * math.log(n))
        under = rounds_budget(n, q, BudgetRegime.UNDER).rounds
        assert under == math.floor(n ** (1 - 2 * q) / math.log(n) ** 3)

    def test_domain(self):
        with pytest.raises(InvalidSpec):
            rounds_budget(100, 0.0, BudgetRegime.OVER)
        with pytest.raises(InvalidSpec):
            rounds_budget(100, 0.51, BudgetRegime.OVER)
        rounds_budget(100, 0.5, BudgetRegime.OVER)  # boundary included

    @given(st.integers(3, 10**9), st.floats(0.01, 0.5))
    @settings(max_examples=200)
    def test_over_dominates_under(self, n, q):
        over = rounds_budget(n, q, BudgetRegime.OVER).rounds
        under = rounds_budget(n, q, BudgetRegime.UNDER).rounds
        assert over >= under >= 0


class TestGaltonWatson:
    def test_single_generation_offspring_law(self):
        # X_1 | X_0 = 1 is Poisson(1)
        rng = RngStream(17)
        draws = np.array([gw_generation(1, rng) for _ in range(20000)])
        assert abs(draws.mean() - 1.0) < 0.03
        p0 = (draws == 0).mean()
        assert abs(p0 - math.exp(-1)) < 0.01

    def test_zero_absorbing(self):
        rng = RngStream(1)
        assert gw_generation(0, rng) == 0

    def test_exact_survival_recursion(self):
        # P(survive gen) = 1 - u_gen, u_0 = 0, u_{k+1} = e^{u_k - 1}
        assert gw_survival_exact(0) == 1.0
        assert abs(gw_survival_exact(1) - (1 - math.exp(-1))) < 1e-12
        assert abs(gw_survival_exact(100) - 0.019353) < 5e-7

    def test_survival_estimate_matches_exact(self):
        res = gw_survival(x0=1, gen=30, trials=200_000, seed=5)
        exact = gw_survival_exact(30)
        assert abs(res.estimate - exact) < 4 * res.stderr + 1e-9

    def test_deterministic(self):
        a = gw_survival(1, 20, 10_000, seed=9)
        b = gw_survival(1, 20, 10_000, seed=9)
        assert a == b

    def test_x0_scaling(self):
        # extinction from x0=2 is (extinction from 1)^2
        exact1 = 1 - gw_survival_exact(25)
        res = gw_survival(x0=2, gen=25, trials=100_000, seed=3)
        expected = 1 - exact1**2
        assert abs(res.estimate - expected) < 5 * res.stderr + 1e-9
