"""Command-line front end.

Exit codes: 0 success, 1 violations found under ``check --expect none``,
2 parse or validation errors, 3 size-limit violations.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import oracle
from .axioms import AXIOMS, check_axiom
from .core import SizeLimitError, VotingError, mcgarvey
from .experiments import ExperimentConfig, parse_ground_truth, run_experiment, to_csv
from .formats import format_profile, read_profile, read_wmg
from .models import RandomState, sample_condorcet, sample_mallows
from .rules import RULES, fb1_top_posteriors, kemeny_order, scores, winners


def parse_phi(text: str) -> Fraction:
    """Decimal (``0.5``) or rational (``1/2``) dispersion, kept exact."""
    try:
        q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise VotingError(f"cannot read phi {text!r}; use a decimal or p/q") from None
    if not 0 < q < 1:
        raise VotingError(f"phi must lie in (0, 1), got {text}")
    return q


def _load(args):
    if args.profile and args.wmg:
        raise VotingError("give either --profile or --wmg, not both")
    if args.profile:
        return read_profile(args.profile)
    if args.wmg:
        return read_wmg(args.wmg)
    raise VotingError("an input is required: --profile FILE or --wmg FILE")


def _labels(data) -> tuple[str, ...]:
    return data.alternatives.labels


def _need_phi(args) -> Fraction:
    if args.phi is None:
        raise VotingError(f"rule {args.rule!r} needs --phi")
    return parse_phi(args.phi)


def _table(args, data):
    """Score table for the requested rule, honouring --exact."""
    if args.rule in ("kemeny", "g"):
        return scores(args.rule, data)
    phi = _need_phi(args)
    if args.rule == "fb2":
        return scores("fb2", data, phi if args.exact else float(phi), exact=args.exact)
    if args.exact:
        if not hasattr(data, "votes"):
            raise VotingError("exact fb1 enumerates votes; pass --profile")
        return None
    return scores("fb1", data, float(phi))


def cmd_winners(args, out) -> int:
    data = _load(args)
    table = _table(args, data)
    if table is None:
        post = oracle.exact_top_posteriors(data, _need_phi(args), "linear")
        best = max(post)
        ws = [a for a, p in enumerate(post) if p == best]
    else:
        ws = list(winners(table))
    labels = _labels(data)
    out.write(" ".join(labels[a] for a in ws) + "\n")
    return 0


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def cmd_risks(args, out) -> int:
    data = _load(args)
    labels = _labels(data)
    if args.rule == "fb1":
        phi = _need_phi(args)
        if args.exact:
            if not hasattr(data, "votes"):
                raise VotingError("exact fb1 enumerates votes; pass --profile")
            values = oracle.exact_top_posteriors(data, phi, "linear")
        else:
            values = fb1_top_posteriors(data, float(phi))
    else:
        values = _table(args, data).values
    for a, v in enumerate(values):
        out.write(f"{labels[a]} {_fmt(v)}\n")
    return 0


def cmd_kemeny_order(args, out) -> int:
    data = _load(args)
    labels = _labels(data)
    order, dist, count = kemeny_order(data)
    out.write(">".join(labels[a] for a in order.ranking) + "\n")
    out.write(f"distance: {dist}\n")
    out.write(f"optimal orders: {count}\n")
    return 0


def cmd_sample(args, out) -> int:
    if args.phi is None or args.n is None:
        raise VotingError("sample needs --phi and --n")
    phi = float(parse_phi(args.phi))
    n = int(args.n)
    truth = parse_ground_truth(args.ground_truth)
    rng = RandomState(args.seed)
    if args.model == "mallows":
        if not hasattr(truth, "ranking"):
            raise VotingError("the Mallows ground truth must be a linear order")
        profile = sample_mallows(truth, phi, n, rng)
    else:
        profile = sample_condorcet(truth, phi, n, args.votes, rng)
    out.write(format_profile(profile))
    return 0


def cmd_mcgarvey(args, out) -> int:
    if not args.wmg:
        raise VotingError("mcgarvey needs --wmg FILE")
    out.write(format_profile(mcgarvey(read_wmg(args.wmg))))
    return 0


def cmd_check(args, out) -> int:
    phi = None if args.phi is None else float(parse_phi(args.phi))
    seeds = [read_profile(args.profile)] if args.profile else []
    if seeds and args.axiom == "consistency":
        raise VotingError("consistency checks need profile pairs; seed profiles are not supported here")
    report = check_axiom(args.rule, args.axiom, phi, args.trials, RandomState(args.seed), seed_profiles=seeds)
    out.write(report.to_text())
    if args.expect == "none" and report.violations:
        return 1
    return 0


def _split(text: Optional[str], cast):
    return None if text is None else [cast(x) for x in text.split(",") if x.strip()]


def cmd_experiment(args, out) -> int:
    if args.config:
        cfg = ExperimentConfig.from_file(args.config)
    else:
        kw = {"model": args.model, "ground_truth": args.ground_truth, "seed": args.seed, "workers": args.workers}
        if args.phi is not None:
            kw["phi_list"] = [float(parse_phi(x)) for x in args.phi.split(",")]
        if args.n is not None:
            kw["n_list"] = _split(args.n, int)
        if args.trials is not None:
            kw["trials"] = args.trials
        if args.votes is not None:
            kw["vote_kind"] = args.votes
        if args.rules is not None:
            kw["rules"] = _split(args.rules, str)
        cfg = ExperimentConfig(**kw)
    out.write(to_csv(run_experiment(cfg), cfg.rules))
    return 0


def cmd_oracle(args, out) -> int:
    if args.phi is None:
        raise VotingError("oracle needs --phi")
    phi = parse_phi(args.phi)
    if not args.profile:
        raise VotingError("oracle needs --profile FILE")
    profile = read_profile(args.profile)
    labels = profile.alternatives.labels
    post = oracle.exact_top_posteriors(profile, phi, args.space)
    out.write(f"alternative top_posterior risk  # space={args.space} phi={phi}\n")
    for a, p in enumerate(post):
        out.write(f"{labels[a]} {p} {1 - p}\n")
    if profile.kind == "linear" and profile.m <= oracle.MAX_LINEAR_M:
        dist, orders = oracle.kemeny_enumerate(profile)
        out.write(f"kemeny distance: {dist}\n")
        for o in orders:
            out.write(">".join(labels[a] for a in o.ranking) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bayesvote", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p):
        p.add_argument("--profile", help="profile file")
        p.add_argument("--wmg", help="weighted majority graph file")

    p = sub.add_parser("winners", help="print the co-winner set")
    p.add_argument("--rule", choices=RULES, required=True)
    p.add_argument("--phi")
    p.add_argument("--exact", action="store_true")
    inputs(p)
    p.set_defaults(func=cmd_winners)

    p = sub.add_parser("risks", help="per-alternative scores, risks or posteriors")
    p.add_argument("--rule", choices=RULES, required=True)
    p.add_argument("--phi")
    p.add_argument("--exact", action="store_true")
    inputs(p)
    p.set_defaults(func=cmd_risks)

    p = sub.add_parser("kemeny-order", help="one optimal Kemeny order and the number of optima")
    inputs(p)
    p.set_defaults(func=cmd_kemeny_order)

    p = sub.add_parser("sample", help="draw a profile from a ranking model")
    p.add_argument("--model", choices=("mallows", "condorcet"), required=True)
    p.add_argument("--ground-truth", required=True)
    p.add_argument("--phi")
    p.add_argument("--n")
    p.add_argument("--votes", choices=("tournament", "linear"), default="tournament")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("mcgarvey", help="realize an even-weight WMG as a profile")
    p.add_argument("--wmg")
    p.set_defaults(func=cmd_mcgarvey)

    p = sub.add_parser("check", help="randomized axiom falsification")
    p.add_argument("--rule", choices=RULES, required=True)
    p.add_argument("--axiom", choices=AXIOMS, required=True)
    p.add_argument("--phi")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--expect", choices=("none", "any"), default="any")
    p.add_argument("--profile", help="extra profile checked before the random trials")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("experiment", help="Monte-Carlo rule comparison, CSV on stdout")
    p.add_argument("--config", help="JSON file with ExperimentConfig fields")
    p.add_argument("--model", choices=("mallows", "condorcet"), default="condorcet")
    p.add_argument("--ground-truth", default="w5rot")
    p.add_argument("--phi", help="comma-separated dispersions")
    p.add_argument("--n", help="comma-separated electorate sizes")
    p.add_argument("--trials", type=int)
    p.add_argument("--votes", choices=("tournament", "linear"))
    p.add_argument("--rules", help="comma-separated subset of " + ",".join(RULES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("oracle", help="exact-rational posteriors by enumeration")
    p.add_argument("--profile")
    p.add_argument("--phi")
    p.add_argument("--space", choices=("linear", "tournament"), default="tournament")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (VotingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
