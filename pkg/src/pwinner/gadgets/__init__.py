"""Hardness reductions as instance generators."""

from .api import extract_solution, witness_completion
from .base import Gadget, TableRow, audit_table, stat_values
from .bucklin import gadget_bucklin
from .copeland import gadget_copeland_3dm, gadget_copeland_sat_high, gadget_copeland_sat_low
from .maximin import gadget_maximin
from .scoring import gadget_2110, gadget_scoring_101, gadget_scoring_11, gadget_scoring_differentiating
from .sources import (MulticoloredGraph, Sat3B2, ThreeDM, mis_solve, random_3dm, random_3dm_no,
                      random_multicolored, random_regular_3dm, random_regular_3dm_yes, random_sat3b2,
                      random_unsat_sat3b2, sat_solve, tdm_solve)

__all__ = [
    "Gadget", "TableRow", "audit_table", "stat_values", "witness_completion", "extract_solution",
    "gadget_scoring_differentiating", "gadget_scoring_11", "gadget_scoring_101", "gadget_2110",
    "gadget_copeland_3dm", "gadget_copeland_sat_low", "gadget_copeland_sat_high",
    "gadget_maximin", "gadget_bucklin",
    "Sat3B2", "ThreeDM", "MulticoloredGraph", "sat_solve", "tdm_solve", "mis_solve",
    "random_sat3b2", "random_unsat_sat3b2", "random_3dm", "random_3dm_no", "random_regular_3dm",
    "random_regular_3dm_yes", "random_multicolored",
]
