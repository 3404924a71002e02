import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bayesvote import oracle
from bayesvote.axioms import p_star_profile
from bayesvote.core import LinearOrder, Profile, SizeLimitError, VotingError, WeightedMajorityGraph, mcgarvey, wmg
from bayesvote.rules import (
    RULES,
    ScoreTable,
    WinnerSet,
    fb1_log_scores,
    fb1_top_posteriors,
    fb2_risks,
    g_scores,
    kemeny_forced_top_scores,
    kemeny_order,
    kemeny_winners,
    rule_winners,
    scores,
    winners,
)

from conftest import profiles

A, B, C = 0, 1, 2


def random_profiles(count, m_lo, m_hi, n_hi, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        m = int(rng.integers(m_lo, m_hi + 1))
        n = int(rng.integers(0, n_hi + 1))
        out.append(Profile.from_rankings([tuple(rng.permutation(m)) for _ in range(n)], m=m))
    return out


class TestKemeny:
    def test_single_vote(self):
        P = Profile.from_rankings([(A, B, C)])
        assert kemeny_forced_top_scores(P).values == (0, 1, 2)
        assert kemeny_winners(P) == {A}

    def test_three_cycle(self, three_cycle):
        assert kemeny_forced_top_scores(three_cycle).values == (4, 4, 4)
        assert kemeny_winners(three_cycle) == {A, B, C}

    def test_majority_pair(self):
        assert kemeny_winners(Profile.from_rankings([(0, 1), (1, 0)], counts=[2, 1])) == {0}

    def test_p_star(self):
        assert kemeny_winners(p_star_profile(4, 2)) == {0}

    def test_order_and_count(self, three_cycle):
        order, dist, count = kemeny_order(three_cycle)
        assert dist == 4 and count == 3
        assert order == LinearOrder((0, 1, 2))

    def test_symmetric_profile(self):
        P = Profile.from_rankings(list(itertools.permutations(range(4))))
        _, dist, count = kemeny_order(P)
        assert count == 24 and dist == 24 * 3

    def test_size_limit(self):
        G = WeightedMajorityGraph(np.zeros((25, 25), dtype=np.int64), 0)
        with pytest.raises(SizeLimitError):
            kemeny_forced_top_scores(G)

    @pytest.mark.parametrize("P", random_profiles(60, 2, 6, 7, seed=1))
    def test_against_enumeration(self, P):
        dist, orders = oracle.kemeny_enumerate(P)
        table = kemeny_forced_top_scores(P)
        assert min(table.values) == dist
        assert kemeny_winners(P) == {o.top for o in orders}
        order, d, count = kemeny_order(P)
        assert d == dist and count == len(orders) and order in orders

    def test_larger_m_runs(self):
        P = random_profiles(1, 12, 12, 15, seed=2)[0]
        assert len(kemeny_forced_top_scores(P)) == 12


class TestFb1:
    def test_two_alternatives(self):
        post = fb1_top_posteriors(Profile.from_rankings([(0, 1)]), 0.5)
        np.testing.assert_allclose(post, [2 / 3, 1 / 3], rtol=1e-12)

    def test_symmetric_profile(self):
        P = Profile.from_rankings(list(itertools.permutations(range(4))))
        t = fb1_log_scores(P, 0.5)
        assert winners(t) == {0, 1, 2, 3}

    @pytest.mark.parametrize("P", random_profiles(40, 5, 5, 9, seed=3))
    @pytest.mark.parametrize("phi", [0.3, 0.9])
    def test_against_enumeration(self, P, phi):
        np.testing.assert_allclose(
            fb1_log_scores(P, phi).values, oracle.fb1_log_scores_enumerate(P, phi), rtol=1e-9
        )

    def test_posteriors_match_exact_oracle(self):
        P = Profile.from_rankings([(0, 1, 2)])
        post = fb1_top_posteriors(P, 0.5)
        exact = oracle.exact_top_posteriors(P, Fraction(1, 2), "linear")
        assert exact[0] == Fraction(4, 7)
        np.testing.assert_allclose(post, [float(x) for x in exact], rtol=1e-12)

    def test_large_n_no_underflow(self):
        P = Profile.from_rankings([(0, 1, 2, 3), (3, 2, 1, 0)], counts=[1500, 500])
        t = fb1_log_scores(P, 0.1)
        assert all(math.isfinite(v) for v in t.values)
        assert winners(t) == {0}

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            fb1_log_scores(WeightedMajorityGraph(np.zeros((21, 21), dtype=np.int64), 0), 0.5)


class TestFb2:
    def test_two_alternatives(self):
        t = fb2_risks(Profile.from_rankings([(0, 1)]), 0.5)
        np.testing.assert_allclose(t.values, [1 / 3, 2 / 3], rtol=1e-12)
        assert fb2_risks(Profile.from_rankings([(0, 1)]), Fraction(1, 2), exact=True).values == (
            Fraction(1, 3),
            Fraction(2, 3),
        )

    @pytest.mark.parametrize("m", [2, 3, 5, 8])
    def test_empty_profile(self, m):
        t = fb2_risks(Profile.empty(m), Fraction(1, 2), exact=True)
        assert set(t.values) == {1 - Fraction(1, 2) ** (m - 1)}
        np.testing.assert_allclose(fb2_risks(Profile.empty(m), 0.5).values, 1 - 0.5 ** (m - 1))

    def test_p_star_eleven(self):
        t = fb2_risks(p_star_profile(11, 2), 0.5)
        assert t.values[0] > t.values[1]
        assert 0 not in winners(t)
        # survival ratio c:b
        ratio = math.exp(t.log_values[0] - t.log_values[1])
        # ((1 + phi^4) / (1 + phi^2))^9 * (1 + phi^-2) / (1 + phi^2) = 0.85^9 * 4
        assert ratio == pytest.approx(0.85**9 * 4, rel=1e-12)
        assert ratio == pytest.approx(0.9265, abs=5e-5)

    @pytest.mark.parametrize("P", random_profiles(60, 2, 4, 7, seed=4))
    def test_against_enumeration(self, P):
        for q in (Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)):
            exact = fb2_risks(P, q, exact=True).values
            assert list(exact) == oracle.exact_fb2_risk(P, q)
            np.testing.assert_allclose(fb2_risks(P, float(q)).values, [float(x) for x in exact], rtol=1e-9)

    def test_risks_in_unit_interval(self):
        for P in random_profiles(30, 2, 6, 40, seed=5):
            assert all(0 <= r <= 1 for r in fb2_risks(P, 0.3).values)

    def test_saturation_still_ranks(self):
        # risks round to 1.0 but the log survival keeps the order
        G = WeightedMajorityGraph.from_margins(-np.triu(np.full((60, 60), 2000), 1) + np.triu(np.full((60, 60), 2000), 1).T)
        t = fb2_risks(G, 0.9)
        assert winners(t) == {59}


class TestG:
    def test_condorcet_winner_scores_zero(self):
        assert g_scores(Profile.from_rankings([(2, 0, 1)])).values[2] == 0

    def test_cycle(self, three_cycle):
        t = g_scores(three_cycle)
        assert t.values == (1, 1, 1)
        assert winners(t) == {0, 1, 2}

    def test_p_star(self):
        t = g_scores(p_star_profile(4, 2))
        assert t.values == (0, 2, 6, 6)
        assert winners(t) == {0}

    @given(profiles(min_m=2, max_m=6), st.integers(1, 5))
    def test_scale_invariance(self, P, k):
        a, b = g_scores(P), g_scores(P.scaled(k))
        assert b.values == tuple(k * v for v in a.values)
        assert winners(a) == winners(b)


class TestWinnerExtraction:
    def test_float_ties(self):
        assert winners(ScoreTable("fb2_risk", (0.2, 0.5, 0.2), "minimize")) == {0, 2}

    def test_integer(self):
        assert winners(ScoreTable("g_incoming", (0, 2, 6, 6), "minimize")) == {0}

    def test_tolerance(self):
        t = ScoreTable("fb1_log_score", (-100.0, -100.0 * (1 + 5e-10), -100.1), "maximize")
        assert winners(t) == {0, 1}

    def test_winnerset_sorted_nonempty(self):
        assert list(WinnerSet([3, 1, 2])) == [1, 2, 3]
        with pytest.raises(VotingError):
            WinnerSet([])

    def test_unknown_rule(self):
        with pytest.raises(VotingError):
            scores("borda", Profile.empty(3), 0.5)

    def test_bayesian_rules_need_phi(self):
        with pytest.raises(VotingError):
            rule_winners("fb1", Profile.empty(3))


@given(profiles(min_m=2, max_m=5, max_n=7), st.data())
def test_label_equivariance(P, data):
    perm = data.draw(st.permutations(range(P.m)))
    Q = P.relabel(perm)
    for rule in RULES:
        a = scores(rule, P, 0.5).values
        b = scores(rule, Q, 0.5).values
        np.testing.assert_allclose([b[perm[x]] for x in range(P.m)], a, rtol=1e-9, atol=1e-12)
        assert rule_winners(rule, Q, 0.5) == {perm[x] for x in rule_winners(rule, P, 0.5)}


@given(profiles(min_m=2, max_m=5, max_n=7))
def test_wmg_and_profile_inputs_agree(P):
    G = wmg(P)
    for rule in RULES:
        assert rule_winners(rule, P, 0.5) == rule_winners(rule, G, 0.5)


def test_tournament_profiles_accepted():
    P = mcgarvey(np.array([[0, 2, 0], [-2, 0, 2], [0, -2, 0]]))
    T = Profile.from_tournaments([v.to_tournament() for v in P.expand()], m=3)
    for rule in RULES:
        assert rule_winners(rule, T, 0.5) == rule_winners(rule, P, 0.5)
