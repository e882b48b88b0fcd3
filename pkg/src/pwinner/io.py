"""Text format for Possible Winner instances, plus source-instance files.

Instance files are UTF-8 and line oriented::

    # comment
    candidates: a, b, c
    rule: borda
    target: c
    vote: a>b, b>c
    vote: c>a

Each ``vote:`` line lists strict pairs; the transitive closure is taken on
load, and a vote that closes into a total order is stored as a ranking.
An empty ``vote:`` line is a vote with nothing known.

Rule grammar: ``scoring <ints...>`` (top position first) | ``plurality`` |
``veto`` | ``kapproval <k>`` | ``kveto <k>`` | ``borda`` |
``copeland <p>/<q>`` | ``maximin`` | ``bucklin``.

Source instances (for ``pwinner gadget``) are JSON objects with a ``type``
of ``sat3b2``, ``3dm`` or ``mcis`` and 1-based element numbers; (3,B2)
formulas may also be given in DIMACS CNF.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import CycleError, ParseError
from .orders import CandidateSet, LinearOrder, PossibleWinnerInstance, Profile, close_and_validate
from .rules import RuleSpec, normalize

_LABEL = re.compile(r"^[^\s,>#:]+$")
_NAMED = ("plurality", "veto", "borda")
_NAMED_K = ("kapproval", "kveto")


# rules ----------------------------------------------------------------------------

def parse_rule(text: str, m: int, line: int | None = None) -> RuleSpec:
    tok = text.split()
    if not tok:
        raise ParseError("empty rule", line)
    head, args = tok[0].lower(), tok[1:]
    try:
        if head == "scoring":
            if len(args) != m:
                raise ParseError(f"scoring vector has {len(args)} entries, expected {m}", line)
            vals = [int(a) for a in args]
            if any(a < b for a, b in zip(vals, vals[1:])):
                raise ParseError("scores must be non-increasing from the top", line)
            return RuleSpec.scoring(normalize(vals))
        if head in _NAMED and not args:
            return RuleSpec.named(head, m)
        if head in _NAMED_K and len(args) == 1:
            return RuleSpec.named(head, m, int(args[0]))
        if head == "copeland" and len(args) == 1:
            return RuleSpec.copeland(Fraction(args[0]))
        if head in ("maximin", "bucklin") and not args:
            return RuleSpec.maximin() if head == "maximin" else RuleSpec.bucklin()
    except ParseError:
        raise
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rule {text!r}: {e}", line) from e
    raise ParseError(f"unknown rule {text!r}", line)


def format_rule(rule: RuleSpec) -> str:
    if rule.kind == "scoring":
        if rule.name:
            tok = rule.name.split()
            if tok[0] in _NAMED + _NAMED_K:
                try:
                    if parse_rule(rule.name, rule.scores.m).scores == rule.scores:
                        return rule.name
                except ParseError:
                    pass
        return "scoring " + " ".join(str(s) for s in rule.scores.scores)
    return rule.describe()


# instances ------------------------------------------------------------------------

def _split_header(raw: str, n: int):
    key, sep, val = raw.partition(":")
    if not sep:
        raise ParseError(f"expected 'key: value', got {raw!r}", n)
    return key.strip().lower(), val.strip()


def loads(text: str) -> PossibleWinnerInstance:
    cands = rule_text = target = None
    rule_line = 0
    votes_raw: list[tuple[int, str]] = []
    for n, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        key, val = _split_header(s, n)
        if key == "candidates":
            if cands is not None:
                raise ParseError("duplicate candidates line", n)
            labs = [x.strip() for x in val.split(",")]
            for lab in labs:
                if not _LABEL.match(lab):
                    raise ParseError(f"bad candidate label {lab!r}", n)
            if len(set(labs)) != len(labs):
                raise ParseError("duplicate candidate label", n)
            cands = CandidateSet(tuple(labs))
        elif key == "rule":
            rule_text, rule_line = val, n
        elif key == "target":
            target = (val, n)
        elif key == "vote":
            votes_raw.append((n, val))
        else:
            raise ParseError(f"unknown key {key!r}", n)
    if cands is None:
        raise ParseError("missing candidates line")
    if rule_text is None:
        raise ParseError("missing rule line")
    if target is None:
        raise ParseError("missing target line")
    rule = parse_rule(rule_text, cands.m, rule_line)
    if target[0] not in cands:
        raise ParseError(f"target {target[0]!r} is not a candidate", target[1])
    votes = [_parse_vote(val, cands, n) for n, val in votes_raw]
    return PossibleWinnerInstance(Profile(cands, tuple(votes)), cands.index(target[0]), rule)


def _parse_vote(val: str, cands: CandidateSet, n: int):
    pairs = []
    for item in filter(None, (x.strip() for x in val.split(","))):
        parts = [p.strip() for p in item.split(">")]
        if len(parts) != 2 or not all(parts):
            raise ParseError(f"expected 'x>y', got {item!r}", n)
        for p in parts:
            if p not in cands:
                raise ParseError(f"unknown candidate {p!r}", n)
        x, y = (cands.index(p) for p in parts)
        if x == y:
            raise ParseError(f"reflexive pair {item!r}", n)
        pairs.append((x, y))
    try:
        po = close_and_validate(pairs, cands.m)
    except CycleError as e:
        raise ParseError(f"CycleError: vote is not antisymmetric ({e})", n) from e
    return po.to_linear() if po.is_complete else po


def load(path) -> PossibleWinnerInstance:
    return loads(Path(path).read_text(encoding="utf-8"))


def _vote_pairs(v) -> list[tuple[int, int]]:
    if isinstance(v, LinearOrder):
        r = v.ranking
        return list(zip(r, r[1:]))
    return v.cover_pairs()


def dumps(inst: PossibleWinnerInstance) -> str:
    cs = inst.profile.candidates
    lines = [f"candidates: {', '.join(cs.labels)}", f"rule: {format_rule(inst.rule)}",
             f"target: {cs.label(inst.target)}"]
    for v in inst.profile.votes:
        body = ", ".join(f"{cs.label(x)}>{cs.label(y)}" for x, y in _vote_pairs(v))
        lines.append(f"vote: {body}".rstrip())
    return "\n".join(lines) + "\n"


def dump(inst: PossibleWinnerInstance, path):
    Path(path).write_text(dumps(inst), encoding="utf-8")


def same_instance(a: PossibleWinnerInstance, b: PossibleWinnerInstance) -> bool:
    """Equal candidates, target, rule and vote relations (representation aside)."""
    if a.profile.candidates != b.profile.candidates or a.target != b.target:
        return False
    ra, rb = a.rule, b.rule
    if (ra.kind, ra.scores, ra.alpha) != (rb.kind, rb.scores, rb.alpha):
        return False
    if a.profile.n != b.profile.n:
        return False
    return all(tuple(x.below) == tuple(y.below) for x, y in zip(a.profile.votes, b.profile.votes))


# gadgets ----------------------------------------------------------------------------

def roles_path(path) -> Path:
    return Path(str(path) + ".roles.json")


def dump_gadget(g, path) -> tuple[Path, Path]:
    """Instance file plus a ``.roles.json`` sidecar with the role map."""
    dump(g.instance, path)
    side = roles_path(path)
    doc = {"kind": g.kind, "regime": {"rule": g.regime[0], "max_pairs": g.regime[1]},
           "source": source_to_json(g.source), "roles": g.role_map,
           "table": [r.describe() for r in g.table]}
    side.write_text(json.dumps(doc, indent=2, default=str) + "\n", encoding="utf-8")
    return Path(path), side


# source instances ---------------------------------------------------------------------

def source_to_json(src) -> dict:
    from .gadgets.sources import MulticoloredGraph, Sat3B2, ThreeDM
    if isinstance(src, Sat3B2):
        return {"type": "sat3b2", "n": src.n, "clauses": [list(c) for c in src.clauses]}
    if isinstance(src, ThreeDM):
        return {"type": "3dm", "m": src.m, "triples": [[a + 1 for a in s] for s in src.triples]}
    if isinstance(src, MulticoloredGraph):
        return {"type": "mcis", "parts": [[u + 1 for u in p] for p in src.parts],
                "edges": [[u + 1, v + 1] for u, v in src.edges]}
    raise TypeError(f"unknown source instance {type(src).__name__}")


def source_from_json(doc: dict):
    from .gadgets.sources import MulticoloredGraph, Sat3B2, ThreeDM
    kind = doc.get("type")
    if kind == "sat3b2":
        return Sat3B2(int(doc["n"]), tuple(tuple(c) for c in doc["clauses"]))
    if kind == "3dm":
        return ThreeDM(int(doc["m"]), tuple(tuple(a - 1 for a in s) for s in doc["triples"]))
    if kind == "mcis":
        return MulticoloredGraph(tuple(tuple(u - 1 for u in p) for p in doc["parts"]),
                                 tuple((u - 1, v - 1) for u, v in doc["edges"]))
    raise ParseError(f"unknown source type {kind!r}")


def parse_dimacs(text: str):
    from .gadgets.sources import Sat3B2
    n = None
    lits: list[int] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s[0] in "c%":
            continue
        if s.startswith("p"):
            tok = s.split()
            if len(tok) != 4 or tok[1] != "cnf":
                raise ParseError("expected 'p cnf <vars> <clauses>'", ln)
            n = int(tok[2])
            continue
        try:
            lits += [int(x) for x in s.split()]
        except ValueError as e:
            raise ParseError(f"bad literal: {e}", ln) from e
    if n is None:
        raise ParseError("missing 'p cnf' header")
    clauses, cur = [], []
    for x in lits:
        if x == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(x)
    if cur:
        raise ParseError("last clause is not terminated by 0")
    return Sat3B2(n, tuple(clauses))


def load_source(path):
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        try:
            return source_from_json(json.loads(text))
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"bad source instance: {e}") from e
    return parse_dimacs(text)
