"""Difference vectors, pattern containment, smoothness and the hardness classifier."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SmoothnessViolation
from .rules import RuleSpec, ScoreVector, normalize

INF = math.inf

# The three patterns the dichotomy is phrased in.
P11 = (1, 1)
P101 = (1, 0, 1)
P010 = (0, 1, 0)


@dataclass(frozen=True)
class DifferenceVector:
    """Consecutive differences, top first: ``(a_m - a_{m-1}, ..., a_2 - a_1)``."""

    diffs: tuple[int, ...]

    def from_bottom(self, i: int) -> int:
        """``a_{i+1} - a_i`` for 1-based bottom position ``i``."""
        return self.diffs[len(self.diffs) - i]

    def __len__(self):
        return len(self.diffs)

    def __iter__(self):
        return iter(self.diffs)


@dataclass(frozen=True)
class RuleClass:
    label: str
    hard_threshold: float  # an int, or math.inf when no hardness is known
    theorem: str = ""


def difference_vector(sv: ScoreVector) -> DifferenceVector:
    s = sv.scores
    return DifferenceVector(tuple(a - b for a, b in zip(s, s[1:])))


def delta_min(sv: ScoreVector) -> int:
    return min(d for d in difference_vector(sv) if d > 0)


def delta_max(sv: ScoreVector) -> int:
    return max(difference_vector(sv))


def is_differentiating_at(sv: ScoreVector) -> bool:
    return delta_max(sv) != delta_min(sv)


def contains_pattern(dv, pattern: Sequence[int]) -> bool:
    d = tuple(dv)
    t = tuple(pattern)
    if len(t) > len(d):
        raise ValueError("pattern longer than the difference vector")
    return any(d[i:i + len(t)] == t for i in range(len(d) - len(t) + 1))


def _inserted(prev: Sequence[int], nxt: Sequence[int]) -> bool:
    prev, nxt = list(prev), list(nxt)
    if len(nxt) != len(prev) + 1:
        return False
    for k in range(len(nxt)):
        if nxt[:k] + nxt[k + 1:] != prev:
            continue
        if k == 0 or k == len(prev) or prev[k - 1] == prev[k]:
            return True
    return False


def smooth_step_check(prev, nxt) -> bool:
    """Does ``nxt`` arise from ``prev`` by one insertion at an admissible slot?

    Raw vectors are compared first; if that fails the normalized forms are tried,
    since normalization may rescale a family member.
    """
    p = tuple(prev.scores if isinstance(prev, ScoreVector) else prev)
    q = tuple(nxt.scores if isinstance(nxt, ScoreVector) else nxt)
    if len(q) != len(p) + 1:
        raise ValueError("vectors must differ in length by one")
    if _inserted(p, q):
        return True
    return _inserted(normalize(p).scores, normalize(q).scores)


def classify(sv: ScoreVector) -> RuleClass:
    if not sv.is_normalized:
        sv = normalize(sv.scores)
    m = sv.m
    d = tuple(difference_vector(sv))
    if delta_max(sv) != delta_min(sv):
        return RuleClass("Differentiating", 1, "Thm 1")
    if len(d) >= 2 and contains_pattern(d, P11):
        return RuleClass("OneOneContaminated", 2, "Thm 2")
    if len(d) >= 3 and contains_pattern(d, P101):
        return RuleClass("OneZeroOneContaminated", 3, "Thm 3")
    if len(d) >= 3 and contains_pattern(d, P010):
        return RuleClass("ZeroOneZeroContaminated", 4, "Thm 4")
    ones = [i for i, x in enumerate(d) if x == 1]
    if ones == [0, len(d) - 1] and len(d) >= 3:
        return RuleClass("TwoOneOneZero", m - 1, "Thm 4")
    if ones == [0]:
        return RuleClass("PluralityLike", INF, "Thm 4")
    if ones == [len(d) - 1]:
        return RuleClass("VetoLike", INF, "Thm 4")
    raise AssertionError(f"unclassified difference vector {d}")  # unreachable


def classify_rule(rule: RuleSpec) -> RuleClass:
    """Classifier extended to the pairwise rules and Bucklin."""
    if rule.kind == "scoring":
        return classify(rule.scores)
    if rule.kind == "copeland":
        if rule.alpha in (Fraction(0), Fraction(1)):
            return RuleClass("CopelandIntegral", 2, "Thm 5")
        return RuleClass("CopelandFractional", 1, "Thm 6")
    if rule.kind == "maximin":
        return RuleClass("Maximin", 2, "Thm 7")
    return RuleClass("Bucklin", 2, "Thm 9")


_PROPERTIES = {
    "differentiating": is_differentiating_at,
    "11": lambda sv: sv.m >= 3 and not is_differentiating_at(sv) and contains_pattern(difference_vector(sv), P11),
    "010": lambda sv: sv.m >= 4 and not is_differentiating_at(sv) and contains_pattern(difference_vector(sv), P010),
}


def monotone_pattern_check(family: Sequence[ScoreVector], prop: str) -> tuple[int | None, bool]:
    """First ``m`` in the family with ``prop``, and whether it holds for every later member.

    ``prop`` is one of ``"differentiating"``, ``"11"`` or ``"010"``.
    """
    check = _PROPERTIES[prop]
    for a, b in zip(family, family[1:]):
        if not smooth_step_check(a, b):
            raise SmoothnessViolation(f"{a.scores} -> {b.scores} is not a smooth step")
    first = None
    for sv in family:
        holds = check(normalize(sv.scores))
        if first is None and holds:
            first = sv.m
        elif first is not None and not holds:
            return first, False
    return first, first is not None
