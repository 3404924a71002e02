"""
When the Condorcet winner loses
===============================

The Bayesian rules trade normative properties for accuracy. These profile
families make that concrete and the closed-form ratios say by how much.
"""

from fractions import Fraction

from bayesvote import condorcet_winner, oracle, rule_winners, union
from bayesvote.axioms import closed_form_ratio, consistency_pair, p_star_profile, smallest_violating_m

# c beats everyone by 2, b beats the rest by 2k
P = p_star_profile(4, 10)
labels = P.alternatives.labels
print("Condorcet winner:", labels[condorcet_winner(P)])
print("fb1 winners at phi=0.9:", [labels[x] for x in rule_winners("fb1", P, 0.9)])

# the exact posterior ratio agrees with the closed form
r = oracle.posterior_ratio(P, 0, 1, Fraction(9, 10), "linear")
print("posterior ratio c:b  exact", float(r), " formula", closed_form_ratio("fb1_condorcet", 4, 10, 0.9))

# the Condorcet-model rule needs more alternatives before c loses
m = smallest_violating_m(0.5, 2)
print("fb2 first rejects c at m =", m)
P11 = p_star_profile(11, 2)
print("fb2 winners on m=11:", [P11.alternatives.labels[x] for x in rule_winners("fb2", P11, 0.5)])

# consistency: c wins both halves, but ties with b on the union
p1, p2 = consistency_pair(1)
for rule in ("fb1", "fb2"):
    sets = [sorted(p1.alternatives.labels[x] for x in rule_winners(rule, q, 0.5)) for q in (p1, p2, union(p1, p2))]
    print(rule, "P1:", sets[0], "P2:", sets[1], "union:", sets[2])
