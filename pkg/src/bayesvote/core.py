"""Orders, tournaments, profiles and weighted majority graphs.

Alternatives are always 0-based integer indices; display labels only matter
at the file/CLI boundary. Pairwise relations are stored as packed
upper-triangular vectors over pairs ``(i, j)``, ``i < j``, in lexicographic
order, so the same Kendall-tau code serves linear orders and tournaments.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Optional, Sequence, Union

import numpy as np

VoteKind = Literal["linear", "tournament"]
VOTE_KINDS = ("linear", "tournament")


class VotingError(ValueError):
    """Invalid input to a voting computation."""


class SizeLimitError(VotingError):
    """Raised when an exact algorithm is asked for more alternatives than it supports."""


def n_pairs(m: int) -> int:
    return m * (m - 1) // 2


def pair_index(i: int, j: int, m: int) -> int:
    """Position of the unordered pair ``(i, j)``, ``i < j``, in the packed vector."""
    if not 0 <= i < j < m:
        raise VotingError(f"invalid pair ({i}, {j}) for m={m}")
    return i * m - i * (i + 1) // 2 + (j - i - 1)


def pair_list(m: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(m), 2))


@dataclass(frozen=True)
class AlternativeSet:
    m: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.m < 1:
            raise VotingError(f"need at least one alternative, got m={self.m}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"c{i + 1}" for i in range(self.m)))
        else:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.m:
                raise VotingError(f"expected {self.m} labels, got {len(labels)}")
            if len(set(labels)) != self.m:
                raise VotingError("alternative labels must be distinct")
            object.__setattr__(self, "labels", labels)

    def label(self, a: int) -> str:
        return self.labels[a]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    @property
    def has_default_labels(self) -> bool:
        return self.labels == tuple(f"c{i + 1}" for i in range(self.m))


@dataclass(frozen=True)
class LinearOrder:
    """A strict ranking, most preferred alternative first."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        ranking = tuple(int(a) for a in self.ranking)
        if sorted(ranking) != list(range(len(ranking))) or not ranking:
            raise VotingError(f"{self.ranking!r} is not a permutation of 0..m-1")
        object.__setattr__(self, "ranking", ranking)

    @property
    def m(self) -> int:
        return len(self.ranking)

    @property
    def top(self) -> int:
        return self.ranking[0]

    @cached_property
    def positions(self) -> tuple[int, ...]:
        pos = [0] * self.m
        for p, a in enumerate(self.ranking):
            pos[a] = p
        return tuple(pos)

    def prefers(self, a: int, b: int) -> bool:
        return self.positions[a] < self.positions[b]

    def pair_vector(self) -> np.ndarray:
        pos = np.asarray(self.positions)
        i, j = np.triu_indices(self.m, k=1)
        return pos[i] < pos[j]

    def to_tournament(self) -> Tournament:
        return Tournament(self.m, tuple(bool(x) for x in self.pair_vector()))

    def relabel(self, perm: Sequence[int]) -> LinearOrder:
        return LinearOrder(tuple(perm[a] for a in self.ranking))

    def __str__(self):
        return ">".join(str(a) for a in self.ranking)


@dataclass(frozen=True)
class Tournament:
    """A complete antisymmetric pairwise relation, possibly cyclic.

    ``beats[pair_index(i, j, m)]`` is True when ``i`` beats ``j`` (``i < j``).
    """

    m: int
    beats: tuple[bool, ...]

    def __post_init__(self):
        beats = tuple(bool(x) for x in self.beats)
        if self.m < 1:
            raise VotingError("a tournament needs at least one alternative")
        if len(beats) != n_pairs(self.m):
            raise VotingError(
                f"tournament over m={self.m} needs {n_pairs(self.m)} pair entries, got {len(beats)}"
            )
        object.__setattr__(self, "beats", beats)

    @classmethod
    def from_relation(cls, m: int, beats) -> Tournament:
        """Build from a callable ``beats(i, j)`` evaluated for every ``i < j``."""
        return cls(m, tuple(bool(beats(i, j)) for i, j in pair_list(m)))

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[tuple[int, int]]) -> Tournament:
        """Build from directed edges ``(winner, loser)``; every pair must appear exactly once."""
        entry: dict[int, bool] = {}
        for a, b in edges:
            i, j = min(a, b), max(a, b)
            k = pair_index(i, j, m)
            if k in entry:
                raise VotingError(f"pair ({i}, {j}) listed twice")
            entry[k] = a < b
        if len(entry) != n_pairs(m):
            raise VotingError("edge list does not cover every pair")
        return cls(m, tuple(entry[k] for k in range(n_pairs(m))))

    def prefers(self, a: int, b: int) -> bool:
        if a == b:
            raise VotingError("an alternative is not compared with itself")
        if a < b:
            return self.beats[pair_index(a, b, self.m)]
        return not self.beats[pair_index(b, a, self.m)]

    def pair_vector(self) -> np.ndarray:
        return np.array(self.beats, dtype=bool)

    def to_tournament(self) -> Tournament:
        return self

    def out_degrees(self) -> np.ndarray:
        deg = np.zeros(self.m, dtype=int)
        for (i, j), b in zip(pair_list(self.m), self.beats):
            deg[i if b else j] += 1
        return deg

    @property
    def top(self) -> Optional[int]:
        """The alternative beating all others, if one exists."""
        deg = self.out_degrees()
        hits = np.flatnonzero(deg == self.m - 1)
        return int(hits[0]) if len(hits) else None

    def is_acyclic(self) -> bool:
        return sorted(self.out_degrees().tolist()) == list(range(self.m))

    def to_linear(self) -> LinearOrder:
        if not self.is_acyclic():
            raise VotingError("cyclic tournament has no linear order")
        return LinearOrder(tuple(int(a) for a in np.argsort(-self.out_degrees(), kind="stable")))

    def relabel(self, perm: Sequence[int]) -> Tournament:
        inv = [0] * self.m
        for a, p in enumerate(perm):
            inv[p] = a
        return Tournament.from_relation(self.m, lambda i, j: self.prefers(inv[i], inv[j]))

    def __str__(self):
        return "".join("1" if b else "0" for b in self.beats)


Vote = Union[LinearOrder, Tournament]


def kendall(x: Vote, y: Vote) -> int:
    """Number of unordered pairs on which ``x`` and ``y`` disagree.

    Linear orders are compared as tournaments, so the distance is defined
    between any two of the supported vote types.
    """
    if x.m != y.m:
        raise VotingError(f"cannot compare relations over {x.m} and {y.m} alternatives")
    return int(np.count_nonzero(x.pair_vector() != y.pair_vector()))


def _vote_kind(v: Vote) -> str:
    return "linear" if isinstance(v, LinearOrder) else "tournament"


@dataclass(frozen=True, eq=False)
class Profile:
    """A multiset of votes stored as ``(vote, multiplicity)`` entries.

    Duplicate votes are merged on construction, keeping first-seen order.
    Equality is multiset equality.
    """

    alternatives: AlternativeSet
    kind: VoteKind
    votes: tuple[tuple[Vote, int], ...] = ()

    def __post_init__(self):
        if self.kind not in VOTE_KINDS:
            raise VotingError(f"unknown vote kind {self.kind!r}")
        merged: dict[Vote, int] = {}
        for vote, count in self.votes:
            count = int(count)
            if count <= 0:
                raise VotingError(f"vote multiplicities must be positive, got {count}")
            if _vote_kind(vote) != self.kind:
                raise VotingError(f"{_vote_kind(vote)} vote in a {self.kind} profile")
            if vote.m != self.alternatives.m:
                raise VotingError(f"vote over {vote.m} alternatives in a profile with m={self.m}")
            merged[vote] = merged.get(vote, 0) + count
        object.__setattr__(self, "votes", tuple(merged.items()))

    @classmethod
    def empty(cls, m: int, kind: VoteKind = "linear", labels: Sequence[str] = ()) -> Profile:
        return cls(AlternativeSet(m, tuple(labels)), kind, ())

    @classmethod
    def from_rankings(
        cls,
        rankings: Iterable[Sequence[int]],
        counts: Optional[Iterable[int]] = None,
        m: Optional[int] = None,
        labels: Sequence[str] = (),
    ) -> Profile:
        orders = [r if isinstance(r, LinearOrder) else LinearOrder(tuple(r)) for r in rankings]
        if m is None:
            if not orders:
                raise VotingError("m is required for an empty profile")
            m = orders[0].m
        counts = [1] * len(orders) if counts is None else list(counts)
        if len(counts) != len(orders):
            raise VotingError("counts and rankings differ in length")
        return cls(AlternativeSet(m, tuple(labels)), "linear", tuple(zip(orders, counts)))

    @classmethod
    def from_tournaments(
        cls,
        tournaments: Iterable[Tournament],
        counts: Optional[Iterable[int]] = None,
        m: Optional[int] = None,
        labels: Sequence[str] = (),
    ) -> Profile:
        ts = list(tournaments)
        if m is None:
            if not ts:
                raise VotingError("m is required for an empty profile")
            m = ts[0].m
        counts = [1] * len(ts) if counts is None else list(counts)
        if len(counts) != len(ts):
            raise VotingError("counts and tournaments differ in length")
        return cls(AlternativeSet(m, tuple(labels)), "tournament", tuple(zip(ts, counts)))

    @property
    def m(self) -> int:
        return self.alternatives.m

    @property
    def n(self) -> int:
        return sum(c for _, c in self.votes)

    def counter(self) -> Counter:
        return Counter(dict(self.votes))

    def expand(self) -> list[Vote]:
        """One entry per voter, in storage order."""
        return [v for v, c in self.votes for _ in range(c)]

    @classmethod
    def from_votes(cls, votes: Iterable[Vote], alternatives: AlternativeSet, kind: VoteKind) -> Profile:
        return cls(alternatives, kind, tuple((v, 1) for v in votes))

    def scaled(self, factor: int) -> Profile:
        if factor < 1:
            raise VotingError("scale factor must be a positive integer")
        return Profile(self.alternatives, self.kind, tuple((v, c * factor) for v, c in self.votes))

    def relabel(self, perm: Sequence[int]) -> Profile:
        """Rename alternative ``a`` to ``perm[a]`` in every vote (labels stay by position)."""
        if sorted(perm) != list(range(self.m)):
            raise VotingError("relabeling must be a permutation of the alternatives")
        return Profile(self.alternatives, self.kind, tuple((v.relabel(perm), c) for v, c in self.votes))

    @cached_property
    def pair_signs(self) -> np.ndarray:
        """``(distinct votes) x (pairs)`` array: +1 where the lower index wins the pair, else -1."""
        if not self.votes:
            return np.zeros((0, n_pairs(self.m)), dtype=np.int64)
        rows = np.array([v.pair_vector() for v, _ in self.votes], dtype=bool).reshape(
            len(self.votes), n_pairs(self.m)
        )
        return np.where(rows, 1, -1).astype(np.int64)

    @cached_property
    def count_array(self) -> np.ndarray:
        return np.array([c for _, c in self.votes], dtype=np.int64)

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return (
            self.alternatives == other.alternatives
            and self.kind == other.kind
            and dict(self.votes) == dict(other.votes)
        )

    def __hash__(self):
        return hash((self.alternatives, self.kind, frozenset(self.votes)))

    def __repr__(self):
        body = ", ".join(f"{c}x[{v}]" for v, c in self.votes)
        return f"Profile(m={self.m}, kind={self.kind}, n={self.n}, {{{body}}})"


@dataclass(frozen=True, eq=False)
class WeightedMajorityGraph:
    """Antisymmetric margin matrix ``w[a, b] = #(a over b) - #(b over a)``."""

    w: np.ndarray
    n: int
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        w = np.array(self.w, dtype=np.int64)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise VotingError(f"margin matrix must be square, got shape {w.shape}")
        if np.any(np.diag(w) != 0):
            raise VotingError("margins on the diagonal must be zero")
        if np.any(w != -w.T):
            raise VotingError("margins must be antisymmetric")
        n = int(self.n)
        if n < 0 or np.any(np.abs(w) > n):
            raise VotingError(f"margin magnitudes cannot exceed n={n}")
        off = ~np.eye(w.shape[0], dtype=bool)
        if np.any((w[off] - n) % 2 != 0):
            raise VotingError("every margin must have the parity of n")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "n", n)

    @classmethod
    def from_margins(cls, w, labels: Sequence[str] = ()) -> WeightedMajorityGraph:
        """Wrap an even-weight target; ``n`` is set to the McGarvey profile size."""
        w = np.asarray(w, dtype=np.int64)
        return cls(w, int(np.clip(w, 0, None).sum()), tuple(labels))

    @property
    def m(self) -> int:
        return self.w.shape[0]

    @property
    def alternatives(self) -> AlternativeSet:
        return AlternativeSet(self.m, self.labels)

    def pairwise_counts(self) -> np.ndarray:
        """``N[a, b]``: number of votes ranking ``a`` above ``b``."""
        counts = (self.n + self.w) // 2
        np.fill_diagonal(counts, 0)
        return counts

    def relabel(self, perm: Sequence[int]) -> WeightedMajorityGraph:
        perm = np.asarray(perm)
        w = np.empty_like(self.w)
        w[np.ix_(perm, perm)] = self.w
        return WeightedMajorityGraph(w, self.n, self.labels)

    def __eq__(self, other):
        if not isinstance(other, WeightedMajorityGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.w, other.w)

    def __hash__(self):
        return hash((self.n, self.w.tobytes()))


def wmg(profile: Profile) -> WeightedMajorityGraph:
    """Weighted majority graph of a profile (either vote kind)."""
    m = profile.m
    w = np.zeros((m, m), dtype=np.int64)
    if profile.votes:
        margins = profile.count_array @ profile.pair_signs
        i, j = np.triu_indices(m, k=1)
        w[i, j] = margins
        w[j, i] = -margins
    return WeightedMajorityGraph(w, profile.n, profile.alternatives.labels)


def as_wmg(data: Union[Profile, WeightedMajorityGraph]) -> WeightedMajorityGraph:
    return data if isinstance(data, WeightedMajorityGraph) else wmg(data)


def union(p1: Profile, p2: Profile) -> Profile:
    """Multiset sum of two profiles over the same alternatives and vote kind."""
    if p1.alternatives != p2.alternatives:
        raise VotingError("profiles are over different alternative sets")
    if p1.kind != p2.kind:
        raise VotingError(f"cannot join a {p1.kind} profile with a {p2.kind} profile")
    return Profile(p1.alternatives, p1.kind, p1.votes + p2.votes)


def mcgarvey(target, labels: Sequence[str] = ()) -> Profile:
    """Linear-order profile whose WMG equals an even-weight target.

    For each edge ``a -> b`` of weight ``w > 0`` we add ``w / 2`` copies of the
    pair ``[a, b, rest ascending]`` and ``[rest descending, a, b]``. The pair
    adds 2 to ``w(a, b)`` and cancels on every other comparison. The ``n`` of
    the target is ignored.
    """
    if isinstance(target, WeightedMajorityGraph):
        labels = labels or target.labels
        w = target.w
    else:
        w = np.asarray(target, dtype=np.int64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise VotingError("target must be a square margin matrix")
    m = w.shape[0]
    if np.any(np.diag(w) != 0) or np.any(w != -w.T):
        raise VotingError("target margins must be antisymmetric with a zero diagonal")
    if np.any(w % 2 != 0):
        raise VotingError("McGarvey construction needs even weights")
    votes: list[tuple[LinearOrder, int]] = []
    for a in range(m):
        for b in range(m):
            if w[a, b] > 0:
                rest = [x for x in range(m) if x not in (a, b)]
                half = int(w[a, b]) // 2
                votes.append((LinearOrder((a, b, *rest)), half))
                votes.append((LinearOrder((*rest[::-1], a, b)), half))
    return Profile(AlternativeSet(m, tuple(labels)), "linear", tuple(votes))


def condorcet_winner(data: Union[Profile, WeightedMajorityGraph]) -> Optional[int]:
    w = as_wmg(data).w
    m = w.shape[0]
    for a in range(m):
        if all(w[a, b] > 0 for b in range(m) if b != a):
            return a
    return None


def majority_candidate(profile: Profile) -> Optional[int]:
    """Alternative ranked first in strictly more than half of the votes."""
    if profile.kind != "linear":
        raise VotingError("majority candidate is defined for linear-order profiles only")
    tops = Counter()
    for v, c in profile.votes:
        tops[v.top] += c
    for a, c in tops.items():
        if 2 * c > profile.n:
            return a
    return None
