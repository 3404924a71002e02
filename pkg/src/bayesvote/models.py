"""Mallows (fixed dispersion) and Condorcet ranking models.

Both models weight a vote ``V`` by ``phi ** kendall(V, W)``. They differ in
the parameter space: linear orders for Mallows, all tournaments for the
Condorcet model. Everything is computed in the natural-log domain.

Random numbers come from :class:`RandomState`, a thin wrapper over numpy's
PCG64 bit generator. Only uniform doubles are drawn (53 high bits of each
64-bit output), which keeps streams identical across platforms and numpy
releases.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Literal, Optional, Union

import numpy as np

from .core import (
    AlternativeSet,
    LinearOrder,
    Profile,
    SizeLimitError,
    Tournament,
    VotingError,
    kendall,
    n_pairs,
    wmg,
)

ModelKind = Literal["mallows", "condorcet"]

MAX_ENUMERATION_M = 9
MAX_REJECTION_ATTEMPTS = 10_000


@dataclass(frozen=True)
class RankingModel:
    kind: ModelKind
    phi: float
    m: int

    def __post_init__(self):
        if self.kind not in ("mallows", "condorcet"):
            raise VotingError(f"unknown model {self.kind!r}")
        if not 0 < float(self.phi) < 1:
            raise VotingError(f"dispersion must lie in (0, 1), got {self.phi}")
        if self.m < 1:
            raise VotingError("m must be positive")


class RandomState:
    """Seeded source of uniform doubles (PCG64 under the hood)."""

    def __init__(self, seed: int):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def random(self, size=None):
        return self._gen.random(size)

    def integers(self, low: int, high: int) -> int:
        """Uniform integer in ``[low, high]`` (inclusive), from one uniform draw."""
        return low + min(int(self.random() * (high - low + 1)), high - low)

    def permutation(self, k: int) -> list[int]:
        # Fisher-Yates driven by uniform doubles only
        items = list(range(k))
        for i in range(k - 1, 0, -1):
            j = self.integers(0, i)
            items[i], items[j] = items[j], items[i]
        return items

    def choice(self, seq):
        return seq[self.integers(0, len(seq) - 1)]


def log_normalizer(model: RankingModel) -> float:
    """Natural log of the model's normalizing constant (independent of the ground truth)."""
    phi = float(model.phi)
    if model.kind == "mallows":
        # Z = prod_i (1 + phi + ... + phi^(i-1))
        return sum(math.log((1 - phi**i) / (1 - phi)) for i in range(1, model.m + 1))
    return n_pairs(model.m) * math.log1p(phi)


def _check_spaces(model: RankingModel, W, profile: Profile):
    if W.m != model.m or profile.m != model.m:
        raise VotingError("model, ground truth and profile disagree on m")
    if model.kind == "mallows":
        if not isinstance(W, LinearOrder):
            raise VotingError("the Mallows parameter space holds linear orders only")
        if profile.kind != "linear":
            raise VotingError("Mallows votes must be linear orders")
        return W
    if isinstance(W, LinearOrder):
        return W.to_tournament()
    return W


def profile_log_likelihood(
    model: RankingModel,
    W: Union[LinearOrder, Tournament],
    profile: Profile,
    method: Literal["wmg", "votes"] = "wmg",
) -> float:
    """log Pr(P | W).

    ``method="wmg"`` reads disagreement counts off the weighted majority graph
    (for ``a`` above ``b`` in ``W``, ``(n - w(a, b)) / 2`` votes disagree);
    ``method="votes"`` sums Kendall distances vote by vote.
    """
    W = _check_spaces(model, W, profile)
    n = profile.n
    if n == 0:
        return 0.0
    log_phi = math.log(float(model.phi))
    if method == "votes":
        total = sum(c * kendall(v, W) for v, c in profile.votes)
    elif method == "wmg":
        w = wmg(profile).w
        total = 0
        for a in range(model.m):
            for b in range(model.m):
                if a != b and W.prefers(a, b):
                    total += (n - int(w[a, b])) // 2
    else:
        raise VotingError(f"unknown likelihood method {method!r}")
    return total * log_phi - n * log_normalizer(model)


def _all_orders(m: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(m))), dtype=np.int64).reshape(-1, m)


def pairwise_marginal(model: RankingModel, W: Union[LinearOrder, Tournament], a: int, b: int) -> float:
    """Probability that a single random vote ranks ``a`` above ``b``."""
    if a == b:
        raise VotingError("a and b must differ")
    if model.kind == "condorcet":
        T = W.to_tournament()
        phi = float(model.phi)
        return 1 / (1 + phi) if T.prefers(a, b) else phi / (1 + phi)
    if not isinstance(W, LinearOrder):
        raise VotingError("the Mallows parameter space holds linear orders only")
    if model.m > MAX_ENUMERATION_M:
        raise SizeLimitError(f"exact Mallows marginals enumerate m! orders; m={model.m} > {MAX_ENUMERATION_M}")
    orders = _all_orders(model.m)
    pos = np.argsort(orders, axis=1)
    i, j = np.triu_indices(model.m, k=1)
    wpos = np.asarray(W.positions)
    dist = ((pos[:, i] < pos[:, j]) != (wpos[i] < wpos[j])).sum(axis=1)
    weights = float(model.phi) ** dist
    hit = pos[:, a] < pos[:, b]
    return float(weights[hit].sum() / weights.sum())


def _mallows_positions(W: LinearOrder, phi: float, n: int, rng: RandomState) -> np.ndarray:
    """``(n, m)`` array of each alternative's 0-based position, by repeated insertion."""
    m = W.m
    u = rng.random((n, m))
    slot = np.zeros((n, m), dtype=np.int64)  # slot[:, i]: position of W[i] among the first i+1
    for i in range(1, m):
        # insertion at 0-based slot j among i+1 slots has weight phi^(i - j)
        weights = phi ** np.arange(i, -1, -1, dtype=float)
        cdf = np.cumsum(weights) / weights.sum()
        slot[:, i] = np.minimum(np.searchsorted(cdf, u[:, i], side="right"), i)
    pos = np.zeros((n, m), dtype=np.int64)
    for i in range(1, m):
        cur = pos[:, :i]
        cur += cur >= slot[:, i : i + 1]
        pos[:, i] = slot[:, i]
    out = np.empty_like(pos)
    out[:, np.asarray(W.ranking)] = pos
    return out


def _condorcet_pair_draws(W: Tournament, phi: float, n: int, rng: RandomState) -> np.ndarray:
    """``(n, pairs)`` boolean tournaments; each pair agrees with ``W`` w.p. 1/(1+phi)."""
    u = rng.random((n, n_pairs(W.m)))
    return (u < 1 / (1 + phi)) == W.pair_vector()[None, :]


def _out_degrees(rows: np.ndarray, m: int) -> np.ndarray:
    i, j = np.triu_indices(m, k=1)
    deg = np.zeros((rows.shape[0], m), dtype=np.int64)
    for k in range(len(i)):
        deg[:, i[k]] += rows[:, k]
        deg[:, j[k]] += ~rows[:, k]
    return deg


def _condorcet_linear_positions(W: Tournament, phi: float, n: int, rng: RandomState) -> np.ndarray:
    """Rejection sampling of acyclic tournaments; returns ``(n, m)`` positions.

    Draws come in batches whose size depends only on ``n`` and ``m``; a vote
    needing more than ``MAX_REJECTION_ATTEMPTS`` draws raises.
    """
    m = W.m
    if n == 0:
        return np.zeros((0, m), dtype=np.int64)
    batch = int(min(1 << 20, max(64, 2 * n * 2 ** n_pairs(m) / math.factorial(m))))
    kept: list[np.ndarray] = []
    got, drawn, last = 0, 0, -1  # last: global index of the latest accepted draw
    while got < n:
        rows = _condorcet_pair_draws(W, phi, batch, rng)
        deg = _out_degrees(rows, m)
        ok = np.flatnonzero((np.sort(deg, axis=1) == np.arange(m)).all(axis=1))[: n - got]
        gaps = np.diff(np.concatenate(([last], drawn + ok)))
        if len(gaps) and gaps.max() > MAX_REJECTION_ATTEMPTS:
            raise VotingError(f"rejection sampler exceeded {MAX_REJECTION_ATTEMPTS} attempts for one vote")
        if len(ok):
            last = drawn + int(ok[-1])
            kept.append(deg[ok])
            got += len(ok)
        drawn += batch
        if got < n and drawn - last > MAX_REJECTION_ATTEMPTS:
            raise VotingError(f"rejection sampler exceeded {MAX_REJECTION_ATTEMPTS} attempts for one vote")
    # position = number of alternatives beating it
    return (m - 1) - np.concatenate(kept)


def _profile_from_positions(pos: np.ndarray, alternatives: AlternativeSet) -> Profile:
    if pos.shape[0] == 0:
        return Profile(alternatives, "linear", ())
    uniq, counts = np.unique(pos, axis=0, return_counts=True)
    votes = tuple((LinearOrder(tuple(np.argsort(row))), int(c)) for row, c in zip(uniq, counts))
    return Profile(alternatives, "linear", votes)


def _profile_from_pair_rows(rows: np.ndarray, alternatives: AlternativeSet) -> Profile:
    if rows.shape[0] == 0:
        return Profile(alternatives, "tournament", ())
    uniq, counts = np.unique(rows, axis=0, return_counts=True)
    votes = tuple((Tournament(alternatives.m, tuple(row)), int(c)) for row, c in zip(uniq, counts))
    return Profile(alternatives, "tournament", votes)


def sample_mallows(W: LinearOrder, phi: float, n: int, rng: RandomState, labels=()) -> Profile:
    """Draw ``n`` i.i.d. votes from the Mallows model centred at ``W``."""
    if not 0 < phi < 1:
        raise VotingError(f"dispersion must lie in (0, 1), got {phi}")
    if n < 0:
        raise VotingError("n must be non-negative")
    return _profile_from_positions(_mallows_positions(W, phi, n, rng), AlternativeSet(W.m, tuple(labels)))


def sample_condorcet(
    W: Union[Tournament, LinearOrder],
    phi: float,
    n: int,
    kind: Literal["tournament", "linear"],
    rng: RandomState,
    labels=(),
) -> Profile:
    """Draw ``n`` votes from the Condorcet model with ground truth ``W``.

    ``kind="tournament"`` flips every pair independently. ``kind="linear"``
    keeps only acyclic draws, which conditions the model on linear orders.
    """
    if not 0 < phi < 1:
        raise VotingError(f"dispersion must lie in (0, 1), got {phi}")
    if n < 0:
        raise VotingError("n must be non-negative")
    W = W.to_tournament()
    alts = AlternativeSet(W.m, tuple(labels))
    if kind == "tournament":
        return _profile_from_pair_rows(_condorcet_pair_draws(W, phi, n, rng), alts)
    if kind == "linear":
        return _profile_from_positions(_condorcet_linear_positions(W, phi, n, rng), alts)
    raise VotingError(f"unknown vote kind {kind!r}")


def model_sampler(model: RankingModel, W, vote_kind: Optional[str] = None):
    """Return ``f(n, rng) -> Profile`` for the given model and ground truth."""
    if model.kind == "mallows":
        if not isinstance(W, LinearOrder):
            raise VotingError("the Mallows parameter space holds linear orders only")
        return lambda n, rng: sample_mallows(W, model.phi, n, rng)
    return lambda n, rng: sample_condorcet(W, model.phi, n, vote_kind or "tournament", rng)
