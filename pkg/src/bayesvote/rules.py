"""Kemeny, the two Bayesian estimators, and the incoming-weight rule ``g``.

All rules only look at pairwise counts, so each accepts either a
:class:`~bayesvote.core.Profile` (of either vote kind) or a precomputed
:class:`~bayesvote.core.WeightedMajorityGraph`.

The Kemeny and Mallows-posterior rules share one subset dynamic program.
For a set ``R`` of not-yet-placed alternatives, putting ``x`` on top of the
rest costs ``cost_R(x) = sum_{y in R - x} N[y, x]`` disagreements, where
``N[y, x]`` counts votes ranking ``y`` above ``x``. Kemeny minimizes the
total; the Mallows posterior log-sum-exps ``-lambda * total`` with
``lambda = -log(phi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence, Union

import numpy as np
from scipy.special import logsumexp

from .core import (
    LinearOrder,
    Profile,
    SizeLimitError,
    VotingError,
    WeightedMajorityGraph,
    as_wmg,
)

MAX_KEMENY_M = 24
MAX_FB1_M = 20
TIE_RTOL = 1e-9
RULES = ("kemeny", "fb1", "fb2", "g")

ScoreKind = Literal["kemeny_forced_top", "fb1_log_score", "fb2_risk", "g_incoming"]
ProfileLike = Union[Profile, WeightedMajorityGraph]

_CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class ScoreTable:
    """One value per alternative plus how to read it.

    ``log_values`` is the numerically faithful comparison key when the
    displayed ``values`` lose precision (fb2 risks saturate at 1 long before
    their logs stop being distinguishable); it is compared with maximize
    orientation.
    """

    kind: ScoreKind
    values: tuple
    orientation: Literal["minimize", "maximize"]
    log_values: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.values)


class WinnerSet(frozenset):
    """Non-empty set of co-winning alternatives; iterates in index order."""

    def __new__(cls, alternatives=()):
        obj = super().__new__(cls, (int(a) for a in alternatives))
        if not obj:
            raise VotingError("a winner set cannot be empty")
        if min(obj) < 0:
            raise VotingError("alternative indices are non-negative")
        return obj

    def __iter__(self):
        return iter(sorted(frozenset.__iter__(self)))

    @property
    def alternatives(self) -> tuple[int, ...]:
        return tuple(self)

    def __repr__(self):
        return f"WinnerSet({list(self)})"


def _popcount_layers(m: int) -> list[np.ndarray]:
    masks = np.arange(1 << m, dtype=np.int64)
    pc = np.bitwise_count(masks)
    order = np.argsort(pc, kind="stable")
    bounds = np.searchsorted(pc[order], np.arange(m + 2))
    return [order[bounds[p] : bounds[p + 1]] for p in range(m + 1)]


def _subset_dp(N: np.ndarray, scale: float, mode: Literal["min", "logsumexp"]) -> np.ndarray:
    """Value of every subset of alternatives, indexed by bitmask.

    ``F[R] = reduce_{x in R} (scale * cost_R(x) + F[R - x])`` with ``F[{}] = 0``.
    """
    m = N.shape[0]
    F = np.zeros(1 << m, dtype=float)
    Nf = N.astype(float)
    bits = np.int64(1) << np.arange(m, dtype=np.int64)
    fill = np.inf if mode == "min" else -np.inf
    for layer in _popcount_layers(m)[1:]:
        for start in range(0, len(layer), _CHUNK):
            masks = layer[start : start + _CHUNK]
            member = (masks[:, None] & bits[None, :]) != 0
            cost = member.astype(float) @ Nf
            cand = scale * cost + F[masks[:, None] ^ bits[None, :]]
            cand[~member] = fill
            F[masks] = cand.min(axis=1) if mode == "min" else logsumexp(cand, axis=1)
    return F


def _forced_top(N: np.ndarray, F: np.ndarray, scale: float) -> np.ndarray:
    m = N.shape[0]
    full = (1 << m) - 1
    return np.array([scale * N[:, c].sum() + F[full ^ (1 << c)] for c in range(m)])


def kemeny_forced_top_scores(data: ProfileLike) -> ScoreTable:
    """Minimum total Kendall distance over orders with each alternative on top."""
    G = as_wmg(data)
    if G.m > MAX_KEMENY_M:
        raise SizeLimitError(f"Kemeny subset DP supports m <= {MAX_KEMENY_M}, got {G.m}")
    N = G.pairwise_counts()
    F = _subset_dp(N, 1.0, "min")
    scores = np.rint(_forced_top(N, F, 1.0)).astype(np.int64)
    return ScoreTable("kemeny_forced_top", tuple(int(s) for s in scores), "minimize")


def kemeny_winners(data: ProfileLike) -> WinnerSet:
    return winners(kemeny_forced_top_scores(data))


def kemeny_order(data: ProfileLike) -> tuple[LinearOrder, int, int]:
    """One optimal Kemeny order, its distance, and the number of optimal orders.

    The returned order breaks ties towards lower indices. Counts are carried
    in double precision, so they are exact up to 2**53.
    """
    G = as_wmg(data)
    m = G.m
    if m > MAX_KEMENY_M:
        raise SizeLimitError(f"Kemeny subset DP supports m <= {MAX_KEMENY_M}, got {m}")
    N = G.pairwise_counts()
    F = _subset_dp(N, 1.0, "min")
    count = np.zeros(1 << m, dtype=float)
    count[0] = 1.0
    bits = np.int64(1) << np.arange(m, dtype=np.int64)
    Nf = N.astype(float)
    for layer in _popcount_layers(m)[1:]:
        for start in range(0, len(layer), _CHUNK):
            masks = layer[start : start + _CHUNK]
            member = (masks[:, None] & bits[None, :]) != 0
            prev = masks[:, None] ^ bits[None, :]
            cand = member.astype(float) @ Nf + F[prev]
            best = member & (cand == F[masks][:, None])
            count[masks] = np.where(best, count[prev], 0.0).sum(axis=1)

    ranking = []
    mask = (1 << m) - 1
    while mask:
        for x in range(m):
            if mask >> x & 1:
                rest = mask ^ (1 << x)
                cost = sum(int(N[y, x]) for y in range(m) if rest >> y & 1)
                if cost + F[rest] == F[mask]:
                    ranking.append(x)
                    mask = rest
                    break
    return LinearOrder(tuple(ranking)), int(round(F[-1])), int(round(count[-1]))


def fb1_log_scores(data: ProfileLike, phi: float) -> ScoreTable:
    """``log sum_{V with c on top} phi ** kendall(P, V)`` for each alternative ``c``."""
    phi = float(phi)
    if not 0 < phi < 1:
        raise VotingError(f"dispersion must lie in (0, 1), got {phi}")
    G = as_wmg(data)
    if G.m > MAX_FB1_M:
        raise SizeLimitError(f"Mallows posterior DP supports m <= {MAX_FB1_M}, got {G.m}")
    N = G.pairwise_counts()
    scale = math.log(phi)  # == -lambda
    F = _subset_dp(N, scale, "logsumexp")
    scores = _forced_top(N, F, scale)
    return ScoreTable("fb1_log_score", tuple(float(s) for s in scores), "maximize", scores)


def fb1_top_posteriors(data: ProfileLike, phi: float) -> np.ndarray:
    """Posterior probability that each alternative tops the ground-truth order."""
    s = np.asarray(fb1_log_scores(data, phi).values)
    return np.exp(s - logsumexp(s))


def _coerce_fraction(phi) -> Fraction:
    if isinstance(phi, Fraction):
        return phi
    if isinstance(phi, float):
        return Fraction(repr(phi))
    return Fraction(phi)


def fb2_risks(data: ProfileLike, phi, exact: bool = False) -> ScoreTable:
    """Bayesian risk of each alternative under the Condorcet model.

    ``risk(c) = 1 - prod_{b != c} 1 / (1 + phi ** w(c, b))``. In floating mode
    the survival product is accumulated as
    ``-sum log(1 + exp(w(c, b) * log(phi)))``; in exact mode ``phi`` is a
    rational and the result is a tuple of :class:`fractions.Fraction`.
    """
    G = as_wmg(data)
    m = G.m
    if exact:
        q = _coerce_fraction(phi)
        if not 0 < q < 1:
            raise VotingError(f"dispersion must lie in (0, 1), got {q}")
        risks = []
        for c in range(m):
            surv = Fraction(1)
            for b in range(m):
                if b != c:
                    surv /= 1 + q ** int(G.w[c, b])
            risks.append(1 - surv)
        return ScoreTable("fb2_risk", tuple(risks), "minimize")
    phi = float(phi)
    if not 0 < phi < 1:
        raise VotingError(f"dispersion must lie in (0, 1), got {phi}")
    t = G.w.astype(float) * math.log(phi)
    off = ~np.eye(m, dtype=bool)
    log_surv = -np.where(off, np.logaddexp(0.0, t), 0.0).sum(axis=1)
    risks = -np.expm1(log_surv)
    return ScoreTable("fb2_risk", tuple(float(r) for r in risks), "minimize", log_surv)


def g_scores(data: ProfileLike) -> ScoreTable:
    """Total positive incoming margin of each alternative."""
    w = as_wmg(data).w
    s = np.clip(w, 0, None).sum(axis=0)
    return ScoreTable("g_incoming", tuple(int(x) for x in s), "minimize")


def winners(table: ScoreTable) -> WinnerSet:
    """Alternatives attaining the best value of a score table."""
    if table.kind in ("kemeny_forced_top", "g_incoming") or isinstance(table.values[0], Fraction):
        vals = list(table.values)
        best = min(vals) if table.orientation == "minimize" else max(vals)
        return WinnerSet(i for i, v in enumerate(vals) if v == best)
    if table.log_values is not None:
        key = np.asarray(table.log_values, dtype=float)
        best = key.max()
    else:
        key = np.asarray(table.values, dtype=float)
        best = key.min() if table.orientation == "minimize" else key.max()
    tol = TIE_RTOL * max(1.0, abs(best))
    return WinnerSet(np.flatnonzero(np.abs(key - best) <= tol))


def scores(rule: str, data: ProfileLike, phi=None, exact: bool = False) -> ScoreTable:
    if rule == "kemeny":
        return kemeny_forced_top_scores(data)
    if rule == "g":
        return g_scores(data)
    if phi is None:
        raise VotingError(f"rule {rule!r} needs a dispersion phi")
    if rule == "fb1":
        return fb1_log_scores(data, phi)
    if rule == "fb2":
        return fb2_risks(data, phi, exact=exact)
    raise VotingError(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}")


def rule_winners(rule: str, data: ProfileLike, phi=None, exact: bool = False) -> WinnerSet:
    return winners(scores(rule, data, phi, exact))


def winner_labels(ws: WinnerSet, labels: Sequence[str]) -> list[str]:
    return [labels[a] for a in ws]
