"""Axiom falsification and the counterexample families for the Bayesian rules.

The counterexamples are built from their weighted majority graphs through
McGarvey's construction, so the pairwise structure is exactly the one the
closed-form ratios describe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import (
    AlternativeSet,
    LinearOrder,
    Profile,
    VotingError,
    condorcet_winner,
    majority_candidate,
    mcgarvey,
    union,
)
from .formats import format_profile
from .models import RandomState
from .rules import RULES, WinnerSet, rule_winners

AXIOMS = ("anonymity", "neutrality", "monotonicity", "majority", "condorcet", "consistency")
RATIO_KINDS = ("fb1_condorcet", "fb2_condorcet", "fb1_consistency", "fb2_consistency")


def _family_labels(m: int) -> tuple[str, ...]:
    return ("c", "b") + tuple(f"c{i}" for i in range(3, m + 1))


def p_star_wmg(m: int, k: int) -> np.ndarray:
    """Margins ``c -> b`` = 2, ``c -> c_i`` = 2, ``b -> c_i`` = 2k, none among the ``c_i``."""
    if m < 3 or k < 1:
        raise VotingError("need m >= 3 and k >= 1")
    w = np.zeros((m, m), dtype=np.int64)
    w[0, 1:] = 2
    w[1, 2:] = 2 * k
    return w - w.T


def p_star_profile(m: int, k: int) -> Profile:
    """Profile with Condorcet winner ``c`` (index 0) that the Bayesian rules can reject."""
    return mcgarvey(p_star_wmg(m, k), labels=_family_labels(m))


def p_star_votes(m: int, k: int) -> Profile:
    """The literal vote list: ``k+1`` x [c, b, c3..cm] and ``k-1`` x [b, c3..cm, c].

    ``c`` has a strict majority of first places here, but for ``m >= 4`` the
    ``c_i`` are no longer tied with each other, so this is not the graph the
    ratio formulas assume. Use :func:`p_star_profile` for those.
    """
    if m < 3 or k < 1:
        raise VotingError("need m >= 3 and k >= 1")
    first = LinearOrder(tuple(range(m)))
    second = LinearOrder((1, *range(2, m), 0))
    votes = [(first, k + 1)] + ([(second, k - 1)] if k > 1 else [])
    return Profile(AlternativeSet(m, _family_labels(m)), "linear", tuple(votes))


def consistency_wmgs(k: int) -> tuple[np.ndarray, np.ndarray]:
    if k < 1:
        raise VotingError("need k >= 1")
    c, b, c3, c4 = range(4)
    w1 = np.zeros((4, 4), dtype=np.int64)
    w1[c, c3] = w1[c, c4] = 2 * k
    w1[b, c4] = 4 * k
    w2 = w1.copy()
    w2[b, c4], w2[b, c3] = 0, 4 * k
    return w1 - w1.T, w2 - w2.T


def consistency_pair(k: int) -> tuple[Profile, Profile]:
    """Two profiles sharing the winner ``c`` whose union makes ``c`` and ``b`` tie."""
    w1, w2 = consistency_wmgs(k)
    labels = _family_labels(4)
    return mcgarvey(w1, labels=labels), mcgarvey(w2, labels=labels)


def closed_form_ratio(kind: str, m: int, k: int, phi: float) -> float:
    """Posterior top-mass ratio of ``c`` over ``b`` on the counterexample families.

    Values below 1 certify that ``c`` loses to ``b``.
    """
    phi = float(phi)
    if kind == "fb1_condorcet":
        num = sum(phi ** (2 * k * t) for t in range(m - 1))
        den = sum(phi ** (2 * t) for t in range(m - 1))
        return num / den / phi**2
    if kind == "fb2_condorcet":
        return ((1 + phi ** (2 * k)) / (1 + phi**2)) ** (m - 2) * (1 + phi**-2) / (1 + phi**2)
    if kind == "fb1_consistency":
        return 3 * (1 + phi ** (4 * k)) / (2 * (1 + phi ** (2 * k) + phi ** (4 * k)))
    if kind == "fb2_consistency":
        return 2 * (1 + phi ** (4 * k)) / (1 + phi ** (2 * k)) ** 2
    raise VotingError(f"unknown ratio kind {kind!r}; expected one of {', '.join(RATIO_KINDS)}")


@dataclass
class Violation:
    profiles: tuple[Profile, ...]
    winners: tuple[WinnerSet, ...]
    note: str = ""
    # raised alternative (monotonicity) or mandated winner (majority, condorcet)
    subject: Optional[int] = None
    perm: Optional[tuple[int, ...]] = None


@dataclass
class AxiomReport:
    axiom: str
    rule: str
    phi: Optional[float]
    trials: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def replay(self, violation: Violation) -> bool:
        """Recompute winners on the witness; True when the violation still stands."""
        ws = tuple(rule_winners(self.rule, p, self.phi) for p in violation.profiles)
        return ws == violation.winners and _is_violation(self.axiom, violation, ws)

    def to_text(self) -> str:
        lines = [
            f"axiom: {self.axiom}",
            f"rule: {self.rule}",
            f"phi: {self.phi}",
            f"trials: {self.trials}",
            f"violations: {len(self.violations)}",
        ]
        for idx, v in enumerate(self.violations, start=1):
            lines.append(f"--- violation {idx}: {v.note}")
            for p, ws in zip(v.profiles, v.winners):
                labels = p.alternatives.labels
                lines.append("winners: " + " ".join(labels[a] for a in ws))
                lines.append(format_profile(p).rstrip("\n"))
        return "\n".join(lines) + "\n"


def _is_violation(axiom: str, v: Violation, ws: tuple[WinnerSet, ...]) -> bool:
    if axiom == "anonymity":
        return ws[0] != ws[1]
    if axiom == "neutrality":
        return WinnerSet(v.perm[a] for a in ws[0]) != ws[1]
    if axiom == "monotonicity":
        return v.subject in ws[0] and v.subject not in ws[1]
    if axiom in ("majority", "condorcet"):
        return ws[0] != {v.subject}
    if axiom == "consistency":
        shared = ws[0] & ws[1]
        return bool(shared) and ws[2] != shared
    raise VotingError(f"unknown axiom {axiom!r}")


def random_profile(m: int, n: int, rng: RandomState) -> Profile:
    """``n`` uniformly random linear orders over ``m`` alternatives."""
    return Profile.from_rankings([rng.permutation(m) for _ in range(n)], m=m)


def _random_even_wmg(m: int, rng: RandomState, max_half: int = 2) -> np.ndarray:
    w = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(i + 1, m):
            w[i, j] = 2 * rng.integers(-max_half, max_half)
            w[j, i] = -w[i, j]
    return w


def _raise_once(vote: LinearOrder, c: int) -> LinearOrder:
    r = list(vote.ranking)
    p = r.index(c)
    r[p - 1], r[p] = r[p], r[p - 1]
    return LinearOrder(tuple(r))


class _Checker:
    def __init__(self, rule: str, phi, report: AxiomReport):
        self.rule, self.phi, self.report = rule, phi, report

    def winners(self, p: Profile) -> WinnerSet:
        return rule_winners(self.rule, p, self.phi)

    def record(self, profiles, ws, note="", subject=None, perm=None):
        v = Violation(tuple(profiles), tuple(ws), note, subject, perm)
        if _is_violation(self.report.axiom, v, v.winners):
            self.report.violations.append(v)

    def anonymity(self, p: Profile, rng: RandomState):
        votes = p.expand()
        order = rng.permutation(len(votes))
        shuffled = Profile.from_votes([votes[i] for i in order], p.alternatives, p.kind)
        self.record((p, shuffled), (self.winners(p), self.winners(shuffled)), "shuffled voters")

    def neutrality(self, p: Profile, rng: RandomState):
        perm = rng.permutation(p.m)
        q = p.relabel(perm)
        note = "relabeled by " + ",".join(map(str, perm))
        self.record((p, q), (self.winners(p), self.winners(q)), note, perm=tuple(perm))

    def monotonicity(self, p: Profile, rng: RandomState):
        ws = self.winners(p)
        c = rng.choice(list(ws))
        votes = p.expand()
        raisable = [i for i, v in enumerate(votes) if v.top != c]
        if not raisable:
            return False
        i = rng.choice(raisable)
        votes[i] = _raise_once(votes[i], c)
        q = Profile.from_votes(votes, p.alternatives, p.kind)
        self.record((p, q), (ws, self.winners(q)), f"raised {c} in voter {i}", subject=c)
        return True

    def majority(self, p: Profile):
        c = majority_candidate(p)
        if c is None:
            return False
        self.record((p,), (self.winners(p),), "majority candidate must win alone", subject=c)
        return True

    def condorcet(self, p: Profile):
        c = condorcet_winner(p)
        if c is None:
            return False
        self.record((p,), (self.winners(p),), "Condorcet winner must win alone", subject=c)
        return True

    def consistency(self, p1: Profile, p2: Profile):
        u = union(p1, p2)
        ws = (self.winners(p1), self.winners(p2), self.winners(u))
        self.record((p1, p2, u), ws, "r(P1 + P2) must equal r(P1) & r(P2)")


def _majority_profile(m: int, n: int, rng: RandomState) -> Profile:
    c = rng.integers(0, m - 1)
    rankings = []
    for idx in range(n):
        r = rng.permutation(m)
        if idx <= n // 2:
            r.remove(c)
            r.insert(0, c)
        rankings.append(r)
    return Profile.from_rankings(rankings, m=m)


def check_axiom(
    rule: str,
    axiom: str,
    phi=None,
    trials: int = 1000,
    rng: Optional[RandomState] = None,
    m_range: tuple[int, int] = (3, 5),
    n_range: tuple[int, int] = (1, 9),
    seed_profiles: Sequence = (),
) -> AxiomReport:
    """Randomized search for violations of one axiom by one rule.

    ``seed_profiles`` are checked before the random trials (profile pairs for
    consistency, single profiles otherwise) and count towards ``trials``.
    """
    if rule not in RULES:
        raise VotingError(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}")
    if axiom not in AXIOMS:
        raise VotingError(f"unknown axiom {axiom!r}; expected one of {', '.join(AXIOMS)}")
    if rule in ("fb1", "fb2") and phi is None:
        raise VotingError(f"rule {rule!r} needs a dispersion phi")
    rng = rng if rng is not None else RandomState(0)
    report = AxiomReport(axiom, rule, None if phi is None else float(phi))
    chk = _Checker(rule, phi, report)

    for seed in seed_profiles:
        if axiom == "consistency":
            chk.consistency(*seed)
        elif axiom in ("majority", "condorcet"):
            getattr(chk, axiom)(seed)
        else:
            getattr(chk, axiom)(seed, rng)
        report.trials += 1

    done = 0
    while done < trials:
        m = rng.integers(*m_range)
        n = rng.integers(*n_range)
        if axiom == "consistency":
            p1 = mcgarvey(_random_even_wmg(m, rng))
            p2 = mcgarvey(_random_even_wmg(m, rng))
            if p1.n == 0 or p2.n == 0:
                continue
            chk.consistency(p1, p2)
        elif axiom == "majority":
            chk.majority(_majority_profile(m, n, rng))
        elif axiom == "condorcet":
            if not chk.condorcet(random_profile(m, n, rng)):
                continue
        elif axiom == "monotonicity":
            if not chk.monotonicity(random_profile(m, n, rng), rng):
                continue
        else:
            getattr(chk, axiom)(random_profile(m, n, rng), rng)
        done += 1
    report.trials += done
    return report


def certified_ratio_bound(phi: float) -> float:
    """Limit of the Mallows ratio for large ``k`` and ``m``: ``(1 - phi^2) / phi^2``."""
    return (1 - phi**2) / phi**2


def smallest_violating_m(phi: float, k: int, kind: str = "fb2_condorcet", m_max: int = 200) -> Optional[int]:
    """Smallest ``m`` for which the closed-form ratio drops below 1, if any up to ``m_max``."""
    for m in range(3, m_max + 1):
        if closed_form_ratio(kind, m, k, phi) < 1:
            return m
    return None

