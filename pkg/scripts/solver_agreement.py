"""Random agreement check between the polynomial solvers and brute force.

    python3 scripts/solver_agreement.py --trials 500 --seed 3
"""

import argparse
import random
import time

from pwinner.generate import random_instance
from pwinner.rules import RuleSpec, borda, k_approval, plurality, two_one_zero, veto
from pwinner.solvers import (solve_bruteforce, solve_bucklin_t1, solve_bucklin_t1_sketch, solve_copeland_t1,
                             solve_maximin_t1, solve_rule_2110, solve_scoring_t1, solve_scoring_t2,
                             solve_scoring_t3)

CASES = {
    "scoring-t1 borda": (solve_scoring_t1, lambda m: RuleSpec.scoring(borda(m)), lambda m: 1),
    "scoring-t2 k-approval": (solve_scoring_t2, lambda m: RuleSpec.scoring(k_approval(m, max(1, m // 2))),
                              lambda m: 2),
    "scoring-t3 plurality": (solve_scoring_t3, lambda m: RuleSpec.scoring(plurality(m)), lambda m: 3),
    "scoring-t3 veto": (solve_scoring_t3, lambda m: RuleSpec.scoring(veto(m)), lambda m: 3),
    "2110 t<=m-2": (solve_rule_2110, lambda m: RuleSpec.scoring(two_one_zero(m)), lambda m: m - 2),
    "copeland^1 t1": (solve_copeland_t1, lambda m: RuleSpec.copeland(1), lambda m: 1),
    "copeland^0 t1": (solve_copeland_t1, lambda m: RuleSpec.copeland(0), lambda m: 1),
    "maximin t1": (solve_maximin_t1, lambda m: RuleSpec.maximin(), lambda m: 1),
    "bucklin t1": (solve_bucklin_t1, lambda m: RuleSpec.bucklin(), lambda m: 1),
    "bucklin t1 (k-approval sketch)": (solve_bucklin_t1_sketch, lambda m: RuleSpec.bucklin(), lambda m: 1),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for name, (solver, rule, t) in CASES.items():
        rng = random.Random(args.seed)
        bad = yes = 0
        t0 = time.perf_counter()
        for _ in range(args.trials):
            m = rng.randint(3, 6)
            inst = random_instance(rule(m), m, rng.randint(1, 8), t(m), rng)
            truth = solve_bruteforce(inst).answer
            yes += truth
            bad += solver(inst).answer != truth
        print(f"{name:<32} {args.trials} instances, {yes} YES, {bad} disagreements, "
              f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
