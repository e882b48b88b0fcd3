"""Reduction equivalence sweep: source answer vs possible-winner answer for every gadget generator.

    python3 scripts/gadget_sweep.py --count 10 --seed 1
    python3 scripts/gadget_sweep.py --only maximin bucklin
"""

import argparse
import random
import time
from fractions import Fraction as F

from pwinner.gadgets import (extract_solution, gadget_2110, gadget_bucklin, gadget_copeland_3dm,
                             gadget_copeland_sat_high, gadget_copeland_sat_low, gadget_maximin, gadget_scoring_101,
                             gadget_scoring_11, gadget_scoring_differentiating, mis_solve, random_3dm, random_3dm_no,
                             random_multicolored, random_regular_3dm_yes, random_sat3b2, random_unsat_sat3b2,
                             sat_solve, tdm_solve, witness_completion)
from pwinner.rules import borda, normalize
from pwinner.solvers import solve_exact


def diff_rule(m):
    return normalize([3 * m] + [m - i for i in range(1, m)])


def rule_101(m):
    return normalize([2] * (m - 4) + [1, 1, 0, 0])


def sat_yes(r):
    return random_sat3b2(3, r, planted=tuple(r.random() < 0.5 for _ in range(3)))


def sat_no(r):
    return random_unsat_sat3b2(3, r)


def tdm_yes(r):
    return random_3dm(2, r.randint(2, 4), r)


def tdm_no(r):
    return random_3dm_no(2, r.randint(2, 4), r)


GENERATORS = {
    "differentiating": (lambda s: gadget_scoring_differentiating(s, diff_rule), sat_yes, sat_no, sat_solve),
    "scoring11": (lambda s: gadget_scoring_11(s, borda), tdm_yes, tdm_no, tdm_solve),
    "scoring101": (lambda s: gadget_scoring_101(s, rule_101), tdm_yes, tdm_no, tdm_solve),
    "2110": (gadget_2110, sat_yes, sat_no, sat_solve),
    "copeland3dm": (gadget_copeland_3dm, tdm_yes, tdm_no, tdm_solve),
    "copeland-low-1/4": (lambda s: gadget_copeland_sat_low(s, F(1, 4)), sat_yes, sat_no, sat_solve),
    "copeland-low-1/2": (lambda s: gadget_copeland_sat_low(s, F(1, 2)), sat_yes, sat_no, sat_solve),
    "copeland-high-1/2": (lambda s: gadget_copeland_sat_high(s, F(1, 2)), sat_yes, sat_no, sat_solve),
    "copeland-high-3/4": (lambda s: gadget_copeland_sat_high(s, F(3, 4)), sat_yes, sat_no, sat_solve),
    "maximin": (gadget_maximin, lambda r: random_multicolored(4, 2, 2, r, planted=True),
                lambda r: random_multicolored(4, 2, 2, r, planted=False), mis_solve),
    "bucklin": (gadget_bucklin, lambda r: random_regular_3dm_yes(3, r),
                lambda r: random_3dm_no(3, 0, r, regular=True), tdm_solve),
}


def sweep(name, count, rng):
    build, yes, no, solve_src = GENERATORS[name]
    stats = {"yes_ok": 0, "yes_bad": 0, "no_ok": 0, "no_bad": 0, "roundtrip_bad": 0}
    for side, make in (("yes", yes), ("no", no)):
        for _ in range(count):
            src = make(rng)
            truth = solve_src(src)
            g = build(src)
            ans = solve_exact(g.instance).answer
            stats[f"{side}_{'ok' if ans == (truth is not None) else 'bad'}"] += 1
            if truth is not None:
                try:
                    src.check(extract_solution(g, witness_completion(g, truth)))
                except Exception:
                    stats["roundtrip_bad"] += 1
    return stats


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=5, help="sources per side and generator")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", nargs="*", choices=sorted(GENERATORS))
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'generator':<20}{'YES ok/bad':>12}{'NO ok/bad':>12}{'roundtrip':>11}{'time':>8}")
    for name in args.only or GENERATORS:
        t0 = time.perf_counter()
        s = sweep(name, args.count, rng)
        print(f"{name:<20}{s['yes_ok']:>8}/{s['yes_bad']:<3}{s['no_ok']:>8}/{s['no_bad']:<3}"
              f"{'ok' if not s['roundtrip_bad'] else s['roundtrip_bad']:>11}{time.perf_counter() - t0:>7.1f}s")


if __name__ == "__main__":
    main()
