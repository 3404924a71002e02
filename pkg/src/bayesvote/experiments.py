"""Monte-Carlo comparison of the four rules on synthetic profiles.

Every trial owns a :class:`~bayesvote.models.RandomState` seeded with
``derive_seed(master, cell, trial)``, and cells only aggregate counts, so the
output does not depend on how trials are split across worker processes.
"""

from __future__ import annotations

import io
import itertools
import json
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .core import LinearOrder, Tournament, VotingError, WeightedMajorityGraph
from .models import (
    RandomState,
    _condorcet_linear_positions,
    _condorcet_pair_draws,
    _mallows_positions,
)
from .rules import MAX_FB1_M, MAX_KEMENY_M, RULES, SizeLimitError, rule_winners

MASK64 = 0xFFFFFFFFFFFFFFFF
WILSON_Z = 1.959963984540054


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, cell_index: int, trial_index: int) -> int:
    """SplitMix64 chain over (master, cell, trial)."""
    x = _splitmix64(int(master) & MASK64)
    x = _splitmix64(x ^ (int(cell_index) & MASK64))
    return _splitmix64(x ^ (int(trial_index) & MASK64))


def w5rot() -> Tournament:
    """Five alternatives, each beating the next two (cyclically)."""
    return Tournament.from_edges(5, [(i, (i + d) % 5) for i in range(5) for d in (1, 2)])


def builtin_ground_truth(name: str) -> Union[Tournament, LinearOrder]:
    if name == "w5rot":
        return w5rot()
    match = re.fullmatch(r"identity\((\d+)\)", name.strip())
    if match:
        m = int(match.group(1))
        if m < 1:
            raise VotingError("identity needs m >= 1")
        return LinearOrder(tuple(range(m)))
    raise VotingError(f"unknown ground truth {name!r}; expected w5rot or identity(m)")


def parse_ground_truth(text: str) -> Union[Tournament, LinearOrder]:
    """Builtin name, ``1>2>3`` order literal, or ``m:bitstring`` tournament literal."""
    text = text.strip()
    if ">" in text:
        return LinearOrder(tuple(int(x) - 1 for x in text.split(">")))
    if ":" in text:
        m, bits = text.split(":", 1)
        return Tournament(int(m), tuple(ch == "1" for ch in bits.strip()))
    return builtin_ground_truth(text)


@dataclass
class ExperimentConfig:
    model: str = "condorcet"
    ground_truth: str = "w5rot"
    phi_list: Sequence[float] = (0.5,)
    n_list: Sequence[int] = (1000,)
    trials: int = 500
    # linear (acyclic-conditioned) votes reproduce the published divergence rates
    vote_kind: str = "linear"
    rules: Sequence[str] = RULES
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.model not in ("mallows", "condorcet"):
            raise VotingError(f"unknown model {self.model!r}")
        if self.vote_kind not in ("tournament", "linear"):
            raise VotingError(f"unknown vote kind {self.vote_kind!r}")
        if self.trials < 1:
            raise VotingError("trials must be at least 1")
        if not all(0 < float(p) < 1 for p in self.phi_list) or not self.phi_list:
            raise VotingError("every phi must lie in (0, 1)")
        if not all(int(n) >= 1 for n in self.n_list) or not self.n_list:
            raise VotingError("every n must be at least 1")
        bad = [r for r in self.rules if r not in RULES]
        if bad or not self.rules:
            raise VotingError(f"unknown rules {bad}; expected a subset of {RULES}")
        self.phi_list = tuple(float(p) for p in self.phi_list)
        self.n_list = tuple(int(n) for n in self.n_list)
        self.rules = tuple(self.rules)
        truth = parse_ground_truth(self.ground_truth)
        if self.model == "mallows" and not isinstance(truth, LinearOrder):
            raise VotingError("the Mallows ground truth must be a linear order")
        m = truth.m
        if "kemeny" in self.rules and m > MAX_KEMENY_M:
            raise SizeLimitError(f"kemeny supports m <= {MAX_KEMENY_M}, ground truth has m={m}")
        if "fb1" in self.rules and m > MAX_FB1_M:
            raise SizeLimitError(f"fb1 supports m <= {MAX_FB1_M}, ground truth has m={m}")

    @classmethod
    def from_json(cls, text: str) -> ExperimentConfig:
        return cls(**json.loads(text))

    @classmethod
    def from_file(cls, path) -> ExperimentConfig:
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def cells(self) -> list[tuple[float, int]]:
        return sorted(itertools.product(self.phi_list, self.n_list))


def rule_pairs(rules: Sequence[str]) -> list[tuple[str, str]]:
    return list(itertools.combinations(rules, 2))


@dataclass
class ResultRow:
    model: str
    phi: float
    n: int
    trials: int
    disagree: dict[tuple[str, str], float] = field(default_factory=dict)
    ci: dict[tuple[str, str], float] = field(default_factory=dict)
    truetop: dict[str, float] = field(default_factory=dict)

    def disagreement(self, r1: str, r2: str) -> float:
        if r1 == r2:
            return 0.0
        return self.disagree[(r1, r2)] if (r1, r2) in self.disagree else self.disagree[(r2, r1)]


def wilson_halfwidth(k: int, n: int, z: float = WILSON_Z) -> float:
    """Half-width of the Wilson score interval for ``k`` successes in ``n`` trials."""
    p = k / n
    return z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n)


def _truth_top(truth) -> Optional[int]:
    return truth.top


def _sample_wmg(model: str, truth, phi: float, n: int, vote_kind: str, rng: RandomState) -> WeightedMajorityGraph:
    """Draw a profile and return only its WMG (same RNG consumption as the public samplers)."""
    m = truth.m
    i, j = np.triu_indices(m, k=1)
    if model == "condorcet" and vote_kind == "tournament":
        rows = _condorcet_pair_draws(truth.to_tournament(), phi, n, rng)
        margins = np.where(rows, 1, -1).sum(axis=0)
    else:
        if model == "mallows":
            pos = _mallows_positions(truth, phi, n, rng)
        else:
            pos = _condorcet_linear_positions(truth.to_tournament(), phi, n, rng)
        margins = np.where(pos[:, i] < pos[:, j], 1, -1).sum(axis=0)
    w = np.zeros((m, m), dtype=np.int64)
    w[i, j] = margins
    w[j, i] = -margins
    return WeightedMajorityGraph(w, n)


def _run_chunk(args) -> tuple[int, dict, dict]:
    cfg_dict, cell_index, phi, n, trial_lo, trial_hi = args
    cfg = ExperimentConfig(**cfg_dict)
    truth = parse_ground_truth(cfg.ground_truth)
    top = _truth_top(truth)
    pairs = rule_pairs(cfg.rules)
    disagree = {p: 0 for p in pairs}
    hits = {r: 0 for r in cfg.rules}
    for t in range(trial_lo, trial_hi):
        rng = RandomState(derive_seed(cfg.seed, cell_index, t))
        G = _sample_wmg(cfg.model, truth, phi, n, cfg.vote_kind, rng)
        ws = {r: rule_winners(r, G, phi) for r in cfg.rules}
        for a, b in pairs:
            disagree[(a, b)] += ws[a] != ws[b]
        if top is not None:
            for r in cfg.rules:
                hits[r] += ws[r] == {top}
    return cell_index, disagree, hits


def run_experiment(cfg: ExperimentConfig) -> list[ResultRow]:
    """Evaluate every (phi, n) cell; rows come back sorted by (phi, n)."""
    cells = cfg.cells()
    cfg_dict = asdict(cfg)
    workers = max(1, int(cfg.workers))
    per_chunk = max(1, math.ceil(cfg.trials / workers))
    tasks = [
        (cfg_dict, ci, phi, n, lo, min(lo + per_chunk, cfg.trials))
        for ci, (phi, n) in enumerate(cells)
        for lo in range(0, cfg.trials, per_chunk)
    ]
    if workers == 1:
        results = [_run_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_chunk, tasks))

    pairs = rule_pairs(cfg.rules)
    totals = [({p: 0 for p in pairs}, {r: 0 for r in cfg.rules}) for _ in cells]
    for ci, disagree, hits in results:
        for p, k in disagree.items():
            totals[ci][0][p] += k
        for r, k in hits.items():
            totals[ci][1][r] += k

    top = _truth_top(parse_ground_truth(cfg.ground_truth))
    rows = []
    for ci, (phi, n) in enumerate(cells):
        disagree, hits = totals[ci]
        row = ResultRow(cfg.model, phi, n, cfg.trials)
        for p in pairs:
            row.disagree[p] = disagree[p] / cfg.trials
            row.ci[p] = wilson_halfwidth(disagree[p], cfg.trials)
        for r in cfg.rules:
            row.truetop[r] = hits[r] / cfg.trials if top is not None else math.nan
        rows.append(row)
    return rows


def _rate(x: float) -> str:
    return "nan" if math.isnan(x) else f"{x:.6f}"


def to_csv(rows: Sequence[ResultRow], rules: Sequence[str]) -> str:
    """CSV text with LF line endings and six fractional digits per rate."""
    pairs = rule_pairs(rules)
    header = ["model", "phi", "n", "trials"]
    for a, b in pairs:
        header += [f"{a}-{b}_disagree", f"{a}-{b}_ci"]
    header += [f"{r}_truetop" for r in rules]
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        cells = [row.model, f"{row.phi:g}", str(row.n), str(row.trials)]
        for p in pairs:
            cells += [_rate(row.disagree[p]), _rate(row.ci[p])]
        cells += [_rate(row.truetop[r]) for r in rules]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()
