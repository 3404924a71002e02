"""End-to-end acceptance checks, one test per numbered criterion.

Each test records a ``criterion N: PASS|FAIL ...`` line that is printed in
the pytest terminal summary (and immediately, under ``-s``). Tolerances and
trial counts are the pinned values, not tuned ones.
"""

import itertools
import time
from fractions import Fraction

import numpy as np
from scipy.stats import chisquare

from bayesvote import oracle
from bayesvote.axioms import check_axiom, closed_form_ratio, consistency_pair, p_star_profile
from bayesvote.core import LinearOrder, Profile, Tournament, kendall, n_pairs, union
from bayesvote.experiments import ExperimentConfig, run_experiment, to_csv
from bayesvote.models import RandomState, sample_condorcet, sample_mallows
from bayesvote.rules import fb1_log_scores, fb2_risks, rule_winners

from conftest import ACCEPTANCE_LINES

C, B = 0, 1


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def random_profiles(count, m_lo, m_hi, n_hi, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        m = int(rng.integers(m_lo, m_hi + 1))
        n = int(rng.integers(0, n_hi + 1))
        out.append(Profile.from_rankings([tuple(rng.permutation(m)) for _ in range(n)], m=m))
    return out


def test_criterion_1_closed_form_risk():
    t0 = time.perf_counter()
    phis = (Fraction(1, 10), Fraction(1, 2), Fraction(9, 10))
    exact_bad, float_bad, checked = 0, 0, 0
    for P in random_profiles(100, 2, 4, 7, seed=101):
        for q in phis:
            ref = oracle.exact_fb2_risk(P, q)
            exact_bad += list(fb2_risks(P, q, exact=True).values) != ref
            flt = np.array(fb2_risks(P, float(q)).values)
            float_bad += not np.allclose(flt, [float(x) for x in ref], rtol=1e-9, atol=0)
            checked += 1
    dt = time.perf_counter() - t0
    ok = exact_bad == 0 and float_bad == 0 and dt < 10
    report(1, ok, f"{checked} profile/phi cases, exact mismatches={exact_bad}, float mismatches={float_bad}, {dt:.1f}s")
    assert ok


def test_criterion_2_fb1_dp_vs_enumeration():
    t0 = time.perf_counter()
    worst = 0.0
    for P in random_profiles(100, 5, 5, 9, seed=202):
        dp = np.array(fb1_log_scores(P, 0.5).values)
        ref = oracle.fb1_log_scores_enumerate(P, 0.5)
        worst = max(worst, float(np.max(np.abs(dp - ref) / np.maximum(np.abs(ref), 1e-300))))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and dt < 10
    report(2, ok, f"max relative error {worst:.2e} over 100 profiles, {dt:.1f}s")
    assert ok


def test_criterion_3_ratio_formulas():
    t0 = time.perf_counter()
    phis = (0.3, 0.5, 0.8, 0.9)
    worst = 0.0
    cells = 0
    for m in range(3, 7):
        for k in range(1, 5):
            P = p_star_profile(m, k)
            for phi in phis:
                for space, kind in (("linear", "fb1_condorcet"), ("tournament", "fb2_condorcet")):
                    r = float(oracle.posterior_ratio(P, C, B, Fraction(repr(phi)), space))
                    f = closed_form_ratio(kind, m, k, phi)
                    worst = max(worst, abs(r - f) / abs(f))
                    cells += 1
    for k in (1, 2, 3):
        p1, _ = consistency_pair(k)
        for phi in phis:
            for space, kind in (("linear", "fb1_consistency"), ("tournament", "fb2_consistency")):
                r = float(oracle.posterior_ratio(p1, C, B, Fraction(repr(phi)), space))
                f = closed_form_ratio(kind, 4, k, phi)
                worst = max(worst, abs(r - f) / abs(f))
                cells += 1
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and dt < 30
    report(3, ok, f"{cells} ratio checks, max relative error {worst:.2e}, {dt:.1f}s")
    assert ok


def test_criterion_4_violations():
    fb1 = rule_winners("fb1", p_star_profile(4, 10), 0.9)
    fb2 = rule_winners("fb2", p_star_profile(11, 2), 0.5)
    p1, p2 = consistency_pair(1)
    cons = {
        rule: tuple(rule_winners(rule, P, 0.5) for P in (p1, p2, union(p1, p2)))
        for rule in ("fb1", "fb2")
    }
    want = ({C}, {C}, {C, B})
    ok = C not in fb1 and C not in fb2 and all(v == want for v in cons.values())
    report(
        4,
        ok,
        f"fb1(p_star_profile(4,10), 0.9)={sorted(fb1)}, fb2(p_star_profile(11,2), 0.5)={sorted(fb2)}, "
        f"consistency fb1={[sorted(w) for w in cons['fb1']]} fb2={[sorted(w) for w in cons['fb2']]}",
    )
    assert ok


def test_criterion_5_axiom_suites():
    t0 = time.perf_counter()
    counts = {}
    for rule in ("kemeny", "fb1", "fb2"):
        for axiom in ("anonymity", "neutrality", "monotonicity"):
            r = check_axiom(rule, axiom, 0.5, trials=1000, rng=RandomState(500))
            counts[(rule, axiom)] = len(r.violations)
    for axiom in ("condorcet", "majority"):
        r = check_axiom("kemeny", axiom, trials=1000, rng=RandomState(501))
        counts[("kemeny", axiom)] = len(r.violations)
    dt = time.perf_counter() - t0
    total = sum(counts.values())
    ok = total == 0 and dt < 120
    report(5, ok, f"{len(counts)} suites x 1000 trials, violations={total}, {dt:.1f}s")
    assert ok


def test_criterion_6_divergence_rates():
    t0 = time.perf_counter()
    cfg = ExperimentConfig(
        model="condorcet", ground_truth="w5rot", phi_list=[0.1, 0.5, 0.9], n_list=[1000],
        trials=500, rules=["kemeny", "g"], seed=6,
    )
    rows = {r.phi: r.disagreement("g", "kemeny") for r in run_experiment(cfg)}
    dt = time.perf_counter() - t0
    bands = {0.1: (0.15, 0.45), 0.5: (0.15, 0.45), 0.9: (0.03, 0.20)}
    ok = all(lo <= rows[p] <= hi for p, (lo, hi) in bands.items()) and dt < 300
    detail = ", ".join(f"phi={p}: {rows[p]:.3f} in [{lo}, {hi}]" for p, (lo, hi) in bands.items())
    report(6, ok, f"{detail} ({cfg.vote_kind} votes), {dt:.1f}s")
    assert ok


def test_criterion_7_mallows_agreement():
    t0 = time.perf_counter()
    small = ExperimentConfig(
        model="mallows", ground_truth="identity(5)", phi_list=[0.5], n_list=[100], trials=1000, rules=["kemeny", "g"], seed=7
    )
    d = run_experiment(small)[0].disagreement("g", "kemeny")
    large = ExperimentConfig(model="mallows", ground_truth="identity(5)", phi_list=[0.5], n_list=[1000], trials=500, seed=7)
    hits = run_experiment(large)[0].truetop
    dt = time.perf_counter() - t0
    ok = d <= 0.01 and all(v >= 0.99 for v in hits.values()) and dt < 120
    report(7, ok, f"n=100 g/kemeny disagreement {d:.4f}; n=1000 truetop {', '.join(f'{r}={v:.3f}' for r, v in hits.items())}; {dt:.1f}s")
    assert ok


def test_criterion_8_g_approximates_fb2():
    cfg = ExperimentConfig(
        model="condorcet", ground_truth="w5rot", phi_list=[0.5], n_list=[2000], trials=500, rules=["fb2", "g"], seed=8
    )
    d = run_experiment(cfg)[0].disagreement("fb2", "g")
    ok = d <= 0.05
    report(8, ok, f"fb2/g disagreement {d:.4f} at n=2000 ({cfg.vote_kind} votes)")
    assert ok


def _pvalue(P, probs, n):
    counts = dict(P.votes)
    keys = list(probs)
    obs = np.array([counts.get(k, 0) for k in keys], dtype=float)
    return chisquare(obs, np.array([probs[k] for k in keys]) * n).pvalue


def test_criterion_9_sampler_exactness():
    t0 = time.perf_counter()
    n = 100_000
    W = LinearOrder((0, 1, 2))
    orders = [LinearOrder(p) for p in itertools.permutations(range(3))]
    tours = [Tournament(3, b) for b in itertools.product((True, False), repeat=n_pairs(3))]
    pvals = {}
    for i, phi in enumerate((0.1, 0.5, 0.9)):
        lin = {V: phi ** kendall(V, W) for V in orders}
        zl = sum(lin.values())
        tor = {T: phi ** kendall(T, W) for T in tours}
        zt = sum(tor.values())
        pvals[("mallows", phi)] = _pvalue(sample_mallows(W, phi, n, RandomState(900 + i)), {k: v / zl for k, v in lin.items()}, n)
        pvals[("condorcet", phi)] = _pvalue(
            sample_condorcet(W, phi, n, "tournament", RandomState(910 + i)), {k: v / zt for k, v in tor.items()}, n
        )
        pvals[("condorcet-linear", phi)] = _pvalue(
            sample_condorcet(W, phi, n, "linear", RandomState(920 + i)), {k: v / zl for k, v in lin.items()}, n
        )
    dt = time.perf_counter() - t0
    low = min(pvals.values())
    ok = low > 0.001 and dt < 30
    report(9, ok, f"{len(pvals)} goodness-of-fit tests, min p-value {low:.4f} (alpha=0.001), {dt:.1f}s")
    assert ok


def test_criterion_10_determinism():
    base = dict(phi_list=[0.1, 0.9], n_list=[200, 50], trials=60, seed=10)
    texts = {}
    for workers in (1, 2, 4):
        cfg = ExperimentConfig(workers=workers, **base)
        texts[workers] = to_csv(run_experiment(cfg), cfg.rules)
    mallows = [
        to_csv(run_experiment(ExperimentConfig(model="mallows", ground_truth="identity(5)", workers=w, **base)), ("kemeny", "fb1", "fb2", "g"))
        for w in (1, 3)
    ]
    ok = len(set(texts.values())) == 1 and mallows[0] == mallows[1]
    report(10, ok, f"byte-identical CSV for workers 1/2/4 (condorcet) and 1/3 (mallows): {ok}")
    assert ok
