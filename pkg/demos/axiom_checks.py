"""
Randomized axiom checks
=======================

Search for violations of the classic voting axioms. Anonymity, neutrality
and monotonicity should come back clean; the Condorcet criterion fails for
the Bayesian rules once the right profile is in the mix.
"""

from bayesvote import RandomState
from bayesvote.axioms import check_axiom, p_star_profile

for rule in ("kemeny", "fb1", "fb2", "g"):
    for axiom in ("anonymity", "neutrality", "monotonicity"):
        r = check_axiom(rule, axiom, 0.5, trials=200, rng=RandomState(7))
        print(f"{rule:>6} {axiom:<12} violations: {len(r.violations)}")

# seed the search with a known counterexample
report = check_axiom("fb2", "condorcet", 0.5, trials=50, rng=RandomState(8), seed_profiles=[p_star_profile(11, 2)])
# the full text also carries the witness profile in file format
for line in report.to_text().splitlines():
    if not line[0].isdigit() and not line.startswith(("m=", "alt")):
        print(line)
