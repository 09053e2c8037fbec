"""Exact computations with the truncated current Witt algebra W_l = W (x) k[t]/(t^(l+1)).

Modules: ``gf`` (finite fields), ``witt`` (the algebra and p-characters),
``verma`` (induced modules by PBW straightening), ``modtools`` (spinning,
irreducibility, hom spaces), ``classify`` (the classification driver) and
``cli``.
"""

from .gf import Field, FieldElement, NonPrime, NotSplit, artin_schreier_roots
from .witt import BasisIndex, LieElement, PChar, WittShape, bracket, height, p_map, scenario_chi
from .verma import InducedModule, build_height_r, build_verma, lambda_set, strade_elements
from .modtools import hom_space, intertwiner_candidate, is_irreducible, quotient, socle_and_maximal, spin
from .classify import Report, classify, expectation_for, reduce_by_truncation

__version__ = "0.1.0"
