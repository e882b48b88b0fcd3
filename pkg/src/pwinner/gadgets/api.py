"""Forward and reverse maps of every gadget, dispatched on ``Gadget.kind``."""

from __future__ import annotations

from ..orders import Profile
from .base import REGISTRY, Gadget


def witness_completion(g: Gadget, sol) -> Profile:
    """Complete profile built from a source solution; raises InvalidSolution for a bad ``sol``."""
    return REGISTRY[g.kind][0](g, sol)


def extract_solution(g: Gadget, completion: Profile):
    """Source solution read off a completion in which the target co-wins."""
    if not isinstance(completion, Profile):
        completion = Profile(g.candidates, tuple(completion))
    return REGISTRY[g.kind][1](g, completion)
