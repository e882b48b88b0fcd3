"""Command-line front end.

Exit codes: 0 = YES (or success), 1 = NO (or ``--verify`` found a
mismatch), 2 = error.  Reports go to stdout as ``key: value`` lines in a
fixed order; diagnostics go to stderr.  ``PWINNER_BUDGET`` sets the default
brute-force budget.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from fractions import Fraction

import numpy as np

from . import io
from .analysis import classify_rule
from .builders import MarginTarget, ScoreTarget, build_margin_profile, build_score_profile
from .errors import PWError
from .gadgets import (extract_solution, gadget_2110, gadget_bucklin, gadget_copeland_3dm, gadget_copeland_sat_high,
                      gadget_copeland_sat_low, gadget_maximin, gadget_scoring_101, gadget_scoring_11,
                      gadget_scoring_differentiating, witness_completion)
from .gadgets.sources import MulticoloredGraph, Sat3B2, ThreeDM, mis_solve, sat_solve, tdm_solve
from .orders import CandidateSet, PossibleWinnerInstance
from .rules import RuleSpec, margin_matrix, positional_scores
from .solvers import dispatch, poly_solver, solve_bruteforce, solve_exact, solve_search
from .solvers.common import default_budget

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _report(fields: list[tuple[str, object]], out=None):
    out = out or sys.stdout
    for k, v in fields:
        print(f"{k}: {v}", file=out)


def _witness_lines(inst: PossibleWinnerInstance, witness) -> list[str]:
    cs = inst.profile.candidates
    return [">".join(cs.label(x) for x in w.ranking) for w in witness]


# solve ------------------------------------------------------------------------------

def cmd_solve(args) -> int:
    inst = io.load(args.path)
    budget = args.budget if args.budget is not None else default_budget()
    t0 = time.perf_counter()
    if args.method == "auto":
        res = dispatch(inst, budget=budget, jobs=args.jobs)
    elif args.method == "brute":
        res = solve_bruteforce(inst, budget=budget, jobs=args.jobs)
    elif args.method == "search":
        res = solve_search(inst)
    else:
        solver = poly_solver(inst)
        if solver is None:
            raise PWError(f"no polynomial solver covers this instance (max pairs per vote "
                          f"{inst.profile.max_undetermined}, rule {io.format_rule(inst.rule)})")
        res = solver(inst)
    dt = time.perf_counter() - t0
    fields = [("answer", res.label), ("method", res.method), ("regime", res.regime or "-"),
              ("time", f"{dt:.4f}")]
    _report(fields)
    if args.witness and res.witness is not None:
        print("witness:")
        for line in _witness_lines(inst, res.witness):
            print(f"  {line}")
    return EXIT_YES if res.answer else EXIT_NO


# classify ---------------------------------------------------------------------------

def parse_rule_args(tokens: list[str]) -> RuleSpec:
    """``borda 5``, ``kapproval 2 6``, ``scoring 2 1 1 0``, ``copeland 1/4``, ``maximin``, ``bucklin``."""
    if not tokens:
        raise PWError("missing rule")
    head = tokens[0].lower()
    if head == "scoring":
        return io.parse_rule(" ".join(tokens), len(tokens) - 1)
    if head in ("copeland", "maximin", "bucklin"):
        return io.parse_rule(" ".join(tokens), 2)
    if len(tokens) < 2:
        raise PWError(f"{head} needs the number of candidates, e.g. '{head} 5'")
    try:
        m = int(tokens[-1])
    except ValueError as e:
        raise PWError(f"bad candidate count {tokens[-1]!r}") from e
    return io.parse_rule(" ".join(tokens[:-1]), m)


def cmd_classify(args) -> int:
    rule = parse_rule_args(args.rule)
    rc = classify_rule(rule)
    thr = rc.hard_threshold
    hard = "none" if thr == math.inf else str(int(thr))
    poly = "all t" if thr == math.inf else f"t <= {int(thr) - 1}"
    _report([("rule", io.format_rule(rule)), ("class", rc.label), ("threshold", hard),
             ("polynomial", poly), ("theorem", rc.theorem)])
    return EXIT_YES


# gadget -----------------------------------------------------------------------------

def rule_family(text: str | None):
    """Score-vector family m -> ScoreVector from the rule grammar (``scoring`` is fixed-length)."""
    if text is None:
        return None

    def fam(m):
        return io.parse_rule(text, m).scores
    return fam


REDUCTIONS = {
    # name: (source type, needs scoring rule, builder)
    "differentiating": (Sat3B2, True, lambda s, a: gadget_scoring_differentiating(s, a.family)),
    "scoring11": (ThreeDM, True, lambda s, a: gadget_scoring_11(s, a.family)),
    "scoring101": (ThreeDM, True, lambda s, a: gadget_scoring_101(s, a.family)),
    "2110": (Sat3B2, False, lambda s, a: gadget_2110(s)),
    "copeland3dm": (ThreeDM, False, lambda s, a: gadget_copeland_3dm(s, a.alpha or Fraction(1, 2))),
    "copeland-low": (Sat3B2, False, lambda s, a: gadget_copeland_sat_low(s, a.alpha or Fraction(1, 4))),
    "copeland-high": (Sat3B2, False, lambda s, a: gadget_copeland_sat_high(s, a.alpha or Fraction(3, 4))),
    "maximin": (MulticoloredGraph, False, lambda s, a: gadget_maximin(s)),
    "bucklin": (ThreeDM, False, lambda s, a: gadget_bucklin(s)),
}


def source_answer(src):
    if isinstance(src, Sat3B2):
        return sat_solve(src)
    if isinstance(src, ThreeDM):
        return tdm_solve(src)
    return mis_solve(src)


def cmd_gadget(args) -> int:
    src = io.load_source(args.source)
    kind, needs_rule, build = REDUCTIONS[args.reduction]
    if not isinstance(src, kind):
        raise PWError(f"reduction {args.reduction} needs a {kind.__name__} source instance")
    if needs_rule and not args.rule:
        raise PWError(f"reduction {args.reduction} needs --rule")
    args.family = rule_family(args.rule)
    args.alpha = Fraction(args.alpha) if args.alpha else None
    g = build(src, args)
    if args.output:
        inst_path, side = io.dump_gadget(g, args.output)
        print(f"wrote {inst_path} and {side}", file=sys.stderr)
    else:
        sys.stdout.write(io.dumps(g.instance))
    rep = sys.stdout if args.output else sys.stderr
    _report([("gadget", g.kind), ("candidates", g.candidates.m), ("votes", g.instance.profile.n),
             ("max_pairs", g.instance.profile.max_undetermined), ("bound", g.regime[1]),
             ("table", "ok")], rep)
    if not args.verify:
        return EXIT_YES
    budget = args.budget if args.budget is not None else default_budget()
    truth = source_answer(src)
    res = solve_exact(g.instance, budget=budget, jobs=args.jobs)
    fields = [("source_answer", "YES" if truth is not None else "NO"), ("pw_answer", res.label),
              ("pw_method", res.method)]
    ok = res.answer == (truth is not None)
    if truth is not None:
        comp = witness_completion(g, truth)
        back = extract_solution(g, comp)
        fields.append(("round_trip", "ok" if back is not None else "failed"))
    if res.answer:
        try:
            extract_solution(g, res.witness)
            fields.append(("extracted", "ok"))
        except PWError as e:
            fields.append(("extracted", f"failed ({e})"))
            ok = False
    fields.append(("equivalent", "yes" if ok else "no"))
    _report(fields, rep)
    return EXIT_YES if ok else EXIT_NO


# build ------------------------------------------------------------------------------

def _parse_assign(text: str, cs: CandidateSet) -> dict[int, int]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        lab, sep, val = item.partition("=")
        if not sep or lab.strip() not in cs:
            raise PWError(f"bad target item {item!r} (expected label=int)")
        out[cs.index(lab.strip())] = int(val)
    return out


def _parse_margins(text: str, cs: CandidateSet) -> dict[tuple[int, int], int]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        pair, sep, val = item.partition("=")
        a, gt, b = pair.partition(">")
        if not sep or not gt or a.strip() not in cs or b.strip() not in cs:
            raise PWError(f"bad margin item {item!r} (expected x>y=int)")
        out[(cs.index(a.strip()), cs.index(b.strip()))] = int(val)
    return out


def cmd_build(args) -> int:
    cs = CandidateSet(tuple(s.strip() for s in args.candidates.split(",")))
    target = cs.index(args.winner) if args.winner else 0
    if args.kind == "scores":
        rule = io.parse_rule(args.rule or "borda", cs.m)
        if rule.kind != "scoring":
            raise PWError("score targets need a scoring rule")
        named = _parse_assign(args.target, cs)
        dummies = tuple(i for i in range(cs.m) if i not in named)
        b = build_score_profile(rule.scores, ScoreTarget(tuple(named), tuple(named.values()), dummies), cs)
        prof = b.profile
        got = positional_scores(rule.scores, list(prof.votes))
        audit = [("lambda", b.lam)] + [(f"score {cs.label(x)}", f"{got[x]} (lambda{got[x] - b.lam:+d})")
                                       for x in range(cs.m)]
    else:
        rule = io.parse_rule(args.rule or "maximin", cs.m)
        mt = MarginTarget(cs.m, _parse_margins(args.target, cs))
        prof = build_margin_profile(cs, mt)
        D = margin_matrix(list(prof.votes), cs.m).D if prof.votes else np.zeros((cs.m, cs.m), dtype=np.int64)
        audit = [("votes", prof.n)] + [(f"margins {cs.label(x)}", " ".join(f"{int(v):d}" for v in D[x]))
                                       for x in range(cs.m)]
    inst = PossibleWinnerInstance(prof, target, rule)
    if args.output:
        io.dump(inst, args.output)
        _report(audit)
    else:
        sys.stdout.write(io.dumps(inst))
        _report(audit, sys.stderr)
    return EXIT_YES


# entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pwinner", description="Possible Winner solver and reduction toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="decide a Possible Winner instance file")
    s.add_argument("path")
    s.add_argument("--method", choices=("auto", "brute", "flow", "search"), default="auto")
    s.add_argument("--budget", type=int, default=None, help="brute-force budget (default: $PWINNER_BUDGET)")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--witness", action="store_true", help="print the completion for YES answers")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("classify", help="hardness threshold of a rule")
    c.add_argument("rule", nargs="+", help="e.g. 'borda 5', 'kapproval 2 6', 'copeland 1/4', 'maximin'")
    c.set_defaults(func=cmd_classify)

    g = sub.add_parser("gadget", help="reduce a source instance to Possible Winner")
    g.add_argument("source", help="JSON source instance or DIMACS CNF")
    g.add_argument("--reduction", required=True, choices=sorted(REDUCTIONS))
    g.add_argument("--rule", help="scoring rule for the scoring reductions, e.g. 'borda'")
    g.add_argument("--alpha", help="Copeland alpha as p/q")
    g.add_argument("-o", "--output", help="instance path; a .roles.json sidecar is written next to it")
    g.add_argument("--verify", action="store_true", help="solve exactly and compare with the source answer")
    g.add_argument("--budget", type=int, default=None)
    g.add_argument("--jobs", type=int, default=1)
    g.set_defaults(func=cmd_gadget)

    b = sub.add_parser("build", help="complete profile with prescribed scores or margins")
    b.add_argument("kind", choices=("scores", "margins"))
    b.add_argument("--candidates", required=True, help="comma-separated labels")
    b.add_argument("--target", required=True, help="scores: 'a=2,b=0,c=-1' (others are dummies); "
                                                    "margins: 'a>b=2,b>c=0'")
    b.add_argument("--rule", help="rule written to the file (scores: default borda; margins: default maximin)")
    b.add_argument("--winner", help="target candidate written to the file (default: first)")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PWError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
