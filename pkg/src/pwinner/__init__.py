"""Possible Winner with partial votes: rules, exact and polynomial solvers, hardness gadgets."""

from .errors import PWError
from .orders import CandidateSet, LinearOrder, PartialOrder, PossibleWinnerInstance, Profile
from .rules import RuleSpec, ScoreVector, normalize, winners

__version__ = "0.1.0"

__all__ = ["PWError", "CandidateSet", "LinearOrder", "PartialOrder", "PossibleWinnerInstance", "Profile",
           "RuleSpec", "ScoreVector", "normalize", "winners", "__version__"]
