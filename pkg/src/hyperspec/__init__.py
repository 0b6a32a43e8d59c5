"""Spectral radii of uniform hypergraphs, extremal families and ordering checks."""

from .canon import canonical_form, enumerate_connected, fingerprint
from .certificates import WeightedIncidenceMatrix, build_certificate, check
from .errors import (
    BudgetError,
    ContractError,
    HyperspecError,
    IdentityMoveWarning,
    MultiEdgeError,
    ParseError,
    ValidationError,
)
from .families import FamilySpec, candidate_pool, classify, generate, parse_spec
from .hypergraph import UniformHypergraph, analyze, count_cycles, read_hg, write_hg
from .moves import EdgeMove, move_edges, ne_move, pm_merge
from .multigraph import Multigraph, char_poly, kth_power, read_mg, write_mg
from .polynomial import IntPolynomial, largest_root
from .tensor import SpectralEstimate, spectral_radius

__version__ = "0.1.0"
