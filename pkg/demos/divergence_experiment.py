"""
How often do g and Kemeny disagree?
===================================

A scaled-down version of the Monte-Carlo comparison on the five-alternative
rotational tournament. Expect roughly 30% disagreement for small and medium
dispersion and about 10% at 0.9. Raise ``trials`` for tighter intervals.
"""

import sys

from bayesvote.experiments import ExperimentConfig, run_experiment, to_csv

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 100

cfg = ExperimentConfig(
    model="condorcet",
    ground_truth="w5rot",
    phi_list=[0.1, 0.5, 0.9],
    n_list=[200, 1000],
    trials=trials,
    rules=["kemeny", "fb2", "g"],
    seed=1,
)
rows = run_experiment(cfg)
sys.stdout.write(to_csv(rows, cfg.rules))

for r in rows:
    print(f"phi={r.phi} n={r.n}: g vs kemeny {r.disagreement('g', 'kemeny'):.2f} +- {r.ci[('kemeny', 'g')]:.2f}")

# tournament votes (each pair flipped independently) for comparison
tour = ExperimentConfig(**{**cfg.__dict__, "vote_kind": "tournament", "n_list": (1000,)})
for r in run_experiment(tour):
    print(f"tournament votes, phi={r.phi}: g vs kemeny {r.disagreement('g', 'kemeny'):.2f}")
