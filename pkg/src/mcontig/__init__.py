"""Exact contiguity and discrete homotopy invariants of finite simplicial complexes."""

__version__ = "0.1.0"

from .complex import (
    Complex,
    SubcomplexRef,
    barycentric_subdivision,
    boundary,
    build_complex,
    categorical_product,
    cone,
    cycle,
    generate,
    point,
    simplex,
    skeleton,
    strong_core,
)
from .contiguity import (
    ContiguityVerdict,
    SearchBudget,
    Status,
    connected,
    contiguity_class,
    enumerate_hom,
    same_contiguity_class,
)
from .cover import INFINITY, CoverSolution, brute_force_cover, minimum_good_cover
from .errors import BudgetExceeded, MalformedInputError, ParseError
from .invariants import INF, InvariantResult, hsecat_m, scat_m, scat_m_of_map, sd_m, secat_m, tc_m
from .io import format_document, load_document, parse_document
from .maps import SimplicialMap, canonical, compose, constant, identity, is_contiguous, restrict, sd_map
from .moore import MoorePath, normalize, paths_form_simplex, product, reverse, tighten
