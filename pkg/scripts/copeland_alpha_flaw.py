"""Show the half-flip completion that lets the target co-win a Copeland^alpha SAT gadget built from an
unsatisfiable formula.

For each alpha the script builds the gadget, solves it exactly and lists, per variable, which of the
(literal, d_i) votes the witness reverses.  A literal with exactly one of its two votes reversed loses
1 - alpha against d_i while d_i gains at most 2 alpha, which is enough for the target whenever
alpha <= 1/2.

    python3 scripts/copeland_alpha_flaw.py --seed 5
"""

import argparse
import random
from fractions import Fraction as F

from pwinner.errors import PWError
from pwinner.gadgets import (extract_solution, gadget_copeland_sat_high, gadget_copeland_sat_low,
                             random_unsat_sat3b2, sat_solve)
from pwinner.solvers import solve_exact, witness_ok


def flips(g, comp):
    out = {}
    for name, info in g.role_map["variables"].items():
        d = g.idx(info["d"])
        out[name] = {lab: sum(comp[v].prefers(d, g.idx(info[lab])) for v in info[key])
                     for key, lab in (("pos_votes", "pos"), ("neg_votes", "neg"))}
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=5)
    ap.add_argument("--n", type=int, default=3, help="variables (a multiple of 3)")
    args = ap.parse_args()
    f = random_unsat_sat3b2(args.n, random.Random(args.seed))
    assert sat_solve(f) is None
    print("formula:", " & ".join("(" + " | ".join(map(str, c)) + ")" for c in f.clauses))
    for alpha, high in ((F(1, 4), False), (F(1, 2), False), (F(1, 2), True), (F(3, 4), True)):
        g = (gadget_copeland_sat_high if high else gadget_copeland_sat_low)(f, alpha)
        r = solve_exact(g.instance)
        tag = f"{'high' if high else 'low'} alpha={alpha}"
        if not r.answer:
            print(f"{tag:<18} NO (sound on this formula)")
            continue
        assert witness_ok(g.instance, r.witness)
        try:
            extract_solution(g, r.witness)
            verdict = "extracted"
        except PWError as e:
            verdict = f"extraction fails: {e}"
        half = [f"{v}.{lab}" for v, fl in flips(g, r.witness).items() for lab, k in fl.items() if k == 1]
        print(f"{tag:<18} YES on an unsatisfiable formula; half-flipped literals {half}; {verdict}")


if __name__ == "__main__":
    main()
