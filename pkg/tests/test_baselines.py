import math
import random

import pytest

from hetalloc.baselines import (
    SchedulerInput,
    SchedulerUser,
    fair_queuing,
    max_min_fair,
    max_snr,
    proportional_fair,
    random_access,
    round_robin,
    weighted_fair_queuing,
)
from hetalloc.errors import DomainError

from conftest import water_level_oracle


def users(*specs):
    return tuple(SchedulerUser(**spec) for spec in specs)


def demand_input(capacity, *demands):
    return SchedulerInput(capacity, tuple(SchedulerUser(demand=float(d)) for d in demands))


class TestRoundRobin:
    def test_equal_shares(self):
        assert round_robin(SchedulerInput(9.0, users({}, {}, {}))) == [3.0, 3.0, 3.0]

    def test_no_users(self):
        assert round_robin(SchedulerInput(9.0, ())) == []

    def test_zero_capacity(self):
        assert round_robin(SchedulerInput(0.0, users({}, {}))) == [0.0, 0.0]

    def test_fair_queuing_delegates(self):
        for capacity, n in ((10.0, 1), (7.5, 3), (0.0, 4)):
            inp = SchedulerInput(capacity, users(*({} for _ in range(n))))
            assert fair_queuing(inp) == round_robin(inp)


class TestRandomAccess:
    def test_seed_reproducible(self):
        inp = SchedulerInput(50.0, users({}, {}, {}))
        assert random_access(inp, 123) == random_access(inp, 123)

    def test_unit_granularity_and_total(self):
        inp = SchedulerInput(10.7, users({}, {}, {}))
        shares = random_access(inp, 9)
        assert all(s == int(s) for s in shares)
        assert sum(shares) == 10.0

    def test_roughly_uniform(self):
        inp = SchedulerInput(100_000.0, users({}, {}, {}, {}))
        shares = random_access(inp, 2)
        for s in shares:
            assert abs(s - 25_000.0) < 1_250.0

    def test_no_users(self):
        assert random_access(SchedulerInput(5.0, ()), 1) == []


class TestMaxMinFair:
    def test_frozen_example(self):
        assert max_min_fair(demand_input(10, 2, 4, 8)) == [2.0, 4.0, 4.0]

    def test_capacity_covers_all_demands(self):
        assert max_min_fair(demand_input(100, 2, 4, 8)) == [2.0, 4.0, 8.0]

    def test_unbounded_demands_split_equally(self):
        shares = max_min_fair(SchedulerInput(9.0, users({}, {}, {})))
        assert shares == [3.0, 3.0, 3.0]

    def test_order_preserved(self):
        assert max_min_fair(demand_input(10, 8, 4, 2)) == [4.0, 4.0, 2.0]

    def test_matches_bisection_oracle_on_random_instances(self):
        rng = random.Random(314)
        for _ in range(40):
            n = rng.randint(1, 6)
            demands = [rng.uniform(0.0, 10.0) for _ in range(n)]
            capacity = rng.uniform(0.0, 25.0)
            got = max_min_fair(demand_input(capacity, *demands))
            want = water_level_oracle(capacity, demands)
            assert all(
                math.isclose(g, w, rel_tol=1e-9, abs_tol=1e-9)
                for g, w in zip(got, want)
            )


class TestWeightedFairQueuing:
    def test_weight_proportional_frozen(self):
        inp = SchedulerInput(12.0, users({"weight": 1}, {"weight": 2}, {"weight": 3}))
        assert weighted_fair_queuing(inp) == [2.0, 4.0, 6.0]

    def test_demand_cap_redistributes(self):
        inp = SchedulerInput(10.0, users({"demand": 1.0, "weight": 1}, {"weight": 1}))
        assert weighted_fair_queuing(inp) == [1.0, 9.0]

    def test_equal_weights_match_round_robin(self):
        rng = random.Random(21)
        for _ in range(30):
            n = rng.randint(1, 8)
            inp = SchedulerInput(rng.uniform(0.0, 50.0), users(*({} for _ in range(n))))
            wfq = weighted_fair_queuing(inp)
            rr = round_robin(inp)
            assert all(math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12) for a, b in zip(wfq, rr))

    def test_all_demands_met_leaves_surplus_unallocated(self):
        inp = SchedulerInput(10.0, users({"demand": 1.0}, {"demand": 2.0}))
        assert weighted_fair_queuing(inp) == [1.0, 2.0]

    def test_non_positive_weight_rejected(self):
        with pytest.raises(DomainError):
            weighted_fair_queuing(SchedulerInput(1.0, users({"weight": 0.0})))


class TestWinnerTakeAll:
    def test_max_snr_picks_strongest(self):
        inp = SchedulerInput(1.0, users({"snr": 3.0}, {"snr": 9.0}, {"snr": 5.0}))
        assert max_snr(inp) == 1

    def test_max_snr_tie_prefers_lowest_index(self):
        inp = SchedulerInput(1.0, users({"snr": 9.0}, {"snr": 9.0}))
        assert max_snr(inp) == 0

    def test_max_snr_needs_users(self):
        with pytest.raises(DomainError):
            max_snr(SchedulerInput(1.0, ()))

    def test_pf_picks_best_ratio(self):
        inp = SchedulerInput(
            1.0,
            users(
                {"instantaneous_rate": 2.0, "average_rate": 1.0},
                {"instantaneous_rate": 4.0, "average_rate": 1.0},
            ),
        )
        assert proportional_fair(inp) == 1

    def test_pf_normalizes_by_average(self):
        inp = SchedulerInput(
            1.0,
            users(
                {"instantaneous_rate": 4.0, "average_rate": 8.0},
                {"instantaneous_rate": 2.0, "average_rate": 1.0},
            ),
        )
        assert proportional_fair(inp) == 1

    def test_pf_rejects_zero_average(self):
        with pytest.raises(DomainError):
            proportional_fair(
                SchedulerInput(1.0, users({"average_rate": 0.0}))
            )


class TestSharedProperties:
    def test_shares_within_capacity_and_non_negative(self):
        rng = random.Random(654)
        dividers = (round_robin, fair_queuing, max_min_fair, weighted_fair_queuing)
        for _ in range(40):
            n = rng.randint(1, 7)
            inp = SchedulerInput(
                rng.uniform(0.0, 40.0),
                tuple(
                    SchedulerUser(
                        demand=rng.choice([math.inf, rng.uniform(0.0, 15.0)]),
                        weight=rng.uniform(0.1, 5.0),
                    )
                    for _ in range(n)
                ),
            )
            for scheduler in dividers:
                shares = scheduler(inp)
                assert len(shares) == n
                assert all(s >= 0.0 for s in shares)
                assert sum(shares) <= inp.capacity * (1.0 + 1e-9) + 1e-9
            lottery = random_access(inp, rng.randrange(2**32))
            assert sum(lottery) <= inp.capacity

    def test_user_field_validation(self):
        with pytest.raises(DomainError):
            SchedulerUser(demand=-1.0)
        with pytest.raises(DomainError):
            SchedulerUser(snr=-1.0)
        with pytest.raises(DomainError):
            SchedulerInput(-1.0, ())
