"""
Sampling votes and checking against brute force
===============================================

Draw profiles from both noise models, then compare the fast rules with
the exact enumeration oracle.
"""

from fractions import Fraction

import numpy as np

from bayesvote import LinearOrder, RandomState, fb2_risks, oracle, sample_condorcet, sample_mallows
from bayesvote.experiments import w5rot

rng = RandomState(2024)
W = LinearOrder((0, 1, 2, 3))

P = sample_mallows(W, 0.6, 12, rng)
print("Mallows sample:", P)

# the DP posterior against the m! enumeration
from bayesvote.rules import fb1_top_posteriors

exact = oracle.exact_top_posteriors(P, Fraction(3, 5), "linear")
print("fb1 DP   :", fb1_top_posteriors(P, 0.6).round(6))
print("enumerate:", np.array([float(x) for x in exact]).round(6))

# tournament votes around a cyclic ground truth
T = sample_condorcet(w5rot(), 0.5, 6, "tournament", rng)
print("Condorcet sample:", T)
print("closed form == enumeration:", list(fb2_risks(T, Fraction(1, 2), exact=True).values) == oracle.exact_fb2_risk(T, Fraction(1, 2)))

# linear votes are acyclic draws kept by rejection
L = sample_condorcet(w5rot(), 0.5, 1000, "linear", rng)
print("distinct linear votes among 1000:", len(L.votes))
