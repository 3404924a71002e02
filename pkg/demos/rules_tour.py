"""
Four ways to pick a winner
==========================

A small profile run through the Kemeny rule, the two Bayesian estimators
and the polynomial surrogate ``g``.
"""

from fractions import Fraction

from bayesvote import Profile, kemeny_order, rule_winners, wmg
from bayesvote.rules import fb1_top_posteriors, fb2_risks, g_scores

# seven voters over three alternatives, with a majority cycle a > b > c > a
P = Profile.from_rankings(
    [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1)],
    counts=[2, 2, 2, 1],
    labels=("a", "b", "c"),
)
print(P)

# everything below only looks at pairwise margins
G = wmg(P)
print("margins:\n", G.w)

order, dist, ties = kemeny_order(P)
print("a Kemeny order:", [P.alternatives.labels[x] for x in order.ranking], "distance", dist, "optimal orders", ties)

phi = 0.5
print("Mallows posterior of each top:", fb1_top_posteriors(P, phi).round(4))
print("Condorcet-model risks:", [round(r, 4) for r in fb2_risks(P, phi).values])
print("same, exact:", fb2_risks(P, Fraction(1, 2), exact=True).values)
print("g scores (incoming positive weight):", g_scores(P).values)

for rule in ("kemeny", "fb1", "fb2", "g"):
    ws = rule_winners(rule, P, phi)
    print(f"{rule:>6}: {[P.alternatives.labels[x] for x in ws]}")
