"""Exact (co)limit computations for diagrams of finitely generated abelian groups over finite posets."""

from .abgrp import QQ, ZZ, FgAbGroup, Hom, Subgroup, Zmod, direct_sum
from .derived import higher_colim, higher_lim, is_acyclic
from .diagram import CONTRAVARIANT, COVARIANT, Diagram
from .poset import FinPoset

__version__ = "0.1.0"

__all__ = [
    "CONTRAVARIANT", "COVARIANT", "Diagram", "FgAbGroup", "FinPoset", "Hom", "QQ", "Subgroup", "ZZ", "Zmod",
    "direct_sum", "higher_colim", "higher_lim", "is_acyclic",
]
