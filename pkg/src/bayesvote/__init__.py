"""Statistical decision-theoretic voting rules.

Bayesian estimators for the Mallows and Condorcet ranking models, the Kemeny
rule, the incoming-weight rule ``g``, samplers, brute-force oracles, axiom
checks and a Monte-Carlo harness.
"""

from .core import (
    AlternativeSet,
    LinearOrder,
    Profile,
    SizeLimitError,
    Tournament,
    VotingError,
    WeightedMajorityGraph,
    condorcet_winner,
    kendall,
    majority_candidate,
    mcgarvey,
    union,
    wmg,
)
from .models import (
    RandomState,
    RankingModel,
    log_normalizer,
    pairwise_marginal,
    profile_log_likelihood,
    sample_condorcet,
    sample_mallows,
)
from .rules import (
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
    winners,
)

__all__ = [
    "AlternativeSet",
    "LinearOrder",
    "Profile",
    "SizeLimitError",
    "Tournament",
    "VotingError",
    "WeightedMajorityGraph",
    "condorcet_winner",
    "kendall",
    "majority_candidate",
    "mcgarvey",
    "union",
    "wmg",
    "RandomState",
    "RankingModel",
    "log_normalizer",
    "pairwise_marginal",
    "profile_log_likelihood",
    "sample_condorcet",
    "sample_mallows",
    "ScoreTable",
    "WinnerSet",
    "fb1_log_scores",
    "fb1_top_posteriors",
    "fb2_risks",
    "g_scores",
    "kemeny_forced_top_scores",
    "kemeny_order",
    "kemeny_winners",
    "rule_winners",
    "winners",
]

__version__ = "0.1.0"
