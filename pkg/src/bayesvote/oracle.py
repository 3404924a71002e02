"""Brute-force references over whole parameter spaces.

Nothing here touches the weighted majority graph: every candidate ground
truth is scored by summing vote-by-vote Kendall distances, and posteriors are
accumulated in exact rationals. Slow on purpose.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from typing import Literal

import numpy as np
from scipy.special import logsumexp

from .core import LinearOrder, Profile, SizeLimitError, VotingError

MAX_LINEAR_M = 7
MAX_TOURNAMENT_M = 6


def _as_fraction(phi) -> Fraction:
    if isinstance(phi, Fraction):
        q = phi
    elif isinstance(phi, float):
        q = Fraction(repr(phi))
    else:
        q = Fraction(phi)
    if not 0 < q < 1:
        raise VotingError(f"dispersion must lie in (0, 1), got {q}")
    return q


def _pair_relations(m: int, space: str):
    """Every ground truth in the space as ``(pair bits, top or None)``."""
    pairs = list(itertools.combinations(range(m), 2))
    if space == "linear":
        if m > MAX_LINEAR_M:
            raise SizeLimitError(f"linear-order enumeration supports m <= {MAX_LINEAR_M}, got {m}")
        rows, tops = [], []
        for perm in itertools.permutations(range(m)):
            pos = {a: p for p, a in enumerate(perm)}
            rows.append([pos[i] < pos[j] for i, j in pairs])
            tops.append(perm[0])
        return np.array(rows, dtype=bool).reshape(len(rows), len(pairs)), tops
    if space == "tournament":
        if m > MAX_TOURNAMENT_M:
            raise SizeLimitError(f"tournament enumeration supports m <= {MAX_TOURNAMENT_M}, got {m}")
        rows, tops = [], []
        for bits in itertools.product((True, False), repeat=len(pairs)):
            wins = [0] * m
            for (i, j), b in zip(pairs, bits):
                wins[i if b else j] += 1
            top = [a for a in range(m) if wins[a] == m - 1]
            rows.append(bits)
            tops.append(top[0] if top else None)
        return np.array(rows, dtype=bool).reshape(len(rows), len(pairs)), tops
    raise VotingError(f"unknown space {space!r}")


def _vote_bits(vote, m: int) -> list[bool]:
    return [vote.prefers(i, j) for i, j in itertools.combinations(range(m), 2)]


def total_distances(profile: Profile, space: Literal["linear", "tournament"]):
    """Total Kendall distance from the profile to every ground truth in the space."""
    m = profile.m
    rows, tops = _pair_relations(m, space)
    total = np.zeros(len(rows), dtype=np.int64)
    for vote, count in profile.votes:
        vb = np.array(_vote_bits(vote, m), dtype=bool)
        total += count * (rows != vb).sum(axis=1)
    return rows, tops, total


def exact_top_posteriors(profile: Profile, phi, space: Literal["linear", "tournament"]) -> list[Fraction]:
    """Exact posterior probability that each alternative tops the ground truth.

    Uniform prior over the space. In the tournament space the values sum to
    the posterior mass of relations that have a top, which is below 1 for
    ``m >= 3``.
    """
    q = _as_fraction(phi)
    _, tops, total = total_distances(profile, space)
    by_top: dict = defaultdict(lambda: defaultdict(int))
    for t, d in zip(tops, total.tolist()):
        by_top[t][d] += 1
    dmin = int(total.min())
    powers: dict[int, Fraction] = {}

    def mass(hist) -> Fraction:
        s = Fraction(0)
        for d, k in hist.items():
            if d not in powers:
                powers[d] = q ** (d - dmin)
            s += k * powers[d]
        return s

    per_top = {t: mass(h) for t, h in by_top.items()}
    Z = sum(per_top.values(), Fraction(0))
    return [per_top.get(c, Fraction(0)) / Z for c in range(profile.m)]


def exact_fb2_risk(profile: Profile, phi) -> list[Fraction]:
    """1 minus the exact tournament-space top posterior."""
    return [1 - p for p in exact_top_posteriors(profile, phi, "tournament")]


def fb1_log_scores_enumerate(profile: Profile, phi: float) -> np.ndarray:
    """``log sum_{V with c on top} phi ** kendall(P, V)`` by scanning all m! orders."""
    phi = float(phi)
    _, tops, total = total_distances(profile, "linear")
    tops = np.asarray(tops)
    logw = total * np.log(phi)
    return np.array([logsumexp(logw[tops == c]) for c in range(profile.m)])


def kemeny_enumerate(profile: Profile) -> tuple[int, list[LinearOrder]]:
    """Minimum total Kendall distance and every order attaining it."""
    m = profile.m
    if m > MAX_LINEAR_M:
        raise SizeLimitError(f"linear-order enumeration supports m <= {MAX_LINEAR_M}, got {m}")
    perms = list(itertools.permutations(range(m)))
    _, _, total = total_distances(profile, "linear")
    best = int(total.min())
    return best, [LinearOrder(p) for p, d in zip(perms, total) if d == best]


def posterior_ratio(profile: Profile, a: int, b: int, phi, space: Literal["linear", "tournament"]) -> Fraction:
    """Exact ratio of posterior top-probabilities of ``a`` and ``b``."""
    post = exact_top_posteriors(profile, phi, space)
    return post[a] / post[b]
