"""Ribbon graph polynomials, the link invariants they determine, and exact checks of the identities between them."""

from .laurent import LaurentPoly, RationalPoint
from .ribbon import (
    RibbonGraph,
    State,
    boundary_walks,
    dual,
    from_rotation,
    isomorphic,
    metrics,
    states,
    tensor_cycle,
)
from .invariants import (
    CyclicWord,
    LabeledPoly,
    bollobas_riordan,
    bollobas_riordan_rearranged,
    boundary_label,
    genus_from_br,
    homfly_formula,
    homfly_full,
    homfly_resolution,
    homfly_traldi,
    jones_cp,
    jones_from_homfly,
    jones_via_bracket,
    kauffman_bracket,
    tutte,
    weighted_B,
)

__all__ = [
    "CyclicWord", "LabeledPoly", "LaurentPoly", "RationalPoint", "RibbonGraph", "State",
    "bollobas_riordan", "bollobas_riordan_rearranged", "boundary_label", "boundary_walks",
    "dual", "from_rotation", "genus_from_br", "homfly_formula", "homfly_full",
    "homfly_resolution", "homfly_traldi", "isomorphic", "jones_cp", "jones_from_homfly",
    "jones_via_bracket", "kauffman_bracket", "metrics", "states", "tensor_cycle", "tutte",
    "weighted_B",
]
__version__ = "0.1.0"
