"""Exact arithmetic in groups of one-variable diffeomorphism germs.

Truncated germs over the rationals, fixed-precision p-adics or rational
function fields; Koenigs linearization and flows; surface-group presentations
with Dehn twists; representations with relator certificates; the p-adic group
G_p; and an orbit-separation search.
"""
from .errors import GermError
from .rings import QQ, PAdicRing, RationalFunctionField, parse_ring
from .series import Germ, commutator, compose, identity, invert, jet
from .words import FreeWord, parse_word
from .group import in_filtration, radius_estimate, word_eval
from .koenigs import Flow, express_as_commutator, flow, linearize, solve_twisted_conjugacy
from .surface import dehn_twist, get_presentation, projection_p, twist_injectivity_scan
from .representations import Representation, certify_nontrivial, explicit_free_pair
from .padic import gp_membership, jet_kernel_membership
from .orbit import RationalMap, orbit_separation_search

__version__ = "0.1.0"

__all__ = [
    "GermError",
    "QQ",
    "PAdicRing",
    "RationalFunctionField",
    "parse_ring",
    "Germ",
    "commutator",
    "compose",
    "identity",
    "invert",
    "jet",
    "FreeWord",
    "parse_word",
    "in_filtration",
    "radius_estimate",
    "word_eval",
    "Flow",
    "express_as_commutator",
    "flow",
    "linearize",
    "solve_twisted_conjugacy",
    "dehn_twist",
    "get_presentation",
    "projection_p",
    "twist_injectivity_scan",
    "Representation",
    "certify_nontrivial",
    "explicit_free_pair",
    "gp_membership",
    "jet_kernel_membership",
    "RationalMap",
    "orbit_separation_search",
]
