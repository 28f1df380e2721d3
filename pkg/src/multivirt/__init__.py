"""Exact combinatorics of oriented virtual link diagrams.

Diagrams are Gauss codes with signed virtual letters.  The package computes
crossing indices, writhe tables, linking numbers and lambda, builds r-fold
multiplexed links and r-fold coverings, counts Fox / virtual / constrained
colorings exactly via Smith normal form, rewrites diagrams by generalized
Reidemeister moves, and mechanically verifies the identities tying all of
these together.
"""

from .catalog import CATALOG, CatalogEntry
from .colorings import (
    Coloring,
    ColoringMode,
    ColoringSystem,
    SNF,
    build_system,
    count_colorings,
    enumerate_colorings,
    psi,
    smith_normal_form,
)
from .constructions import Provenance, covering, extract_component, multiplex
from .errors import MultivirtError
from .invariants import (
    IndexPair,
    InvariantReport,
    WritheTable,
    crossing_indices,
    invariant_report,
    ith_n_writhes,
    linking_and_lambda,
    n_writhes,
    specified_path,
    writhe,
)
from .model import (
    CrossingRecord,
    Diagram,
    Granularity,
    Passage,
    Role,
    Segments,
    canonical_form,
    parse_vgc,
    rotate,
    segments,
    serialize_vgc,
)
from .moves import MOVE_KINDS, MoveSite, apply_move, find_moves, random_walk
from .planar import faces, genus, realize
from .verify import verify_theorems

__all__ = [
    "CATALOG",
    "CatalogEntry",
    "Coloring",
    "ColoringMode",
    "ColoringSystem",
    "CrossingRecord",
    "Diagram",
    "Granularity",
    "IndexPair",
    "InvariantReport",
    "MOVE_KINDS",
    "MoveSite",
    "MultivirtError",
    "Passage",
    "Provenance",
    "Role",
    "SNF",
    "Segments",
    "WritheTable",
    "apply_move",
    "build_system",
    "canonical_form",
    "count_colorings",
    "covering",
    "crossing_indices",
    "enumerate_colorings",
    "extract_component",
    "faces",
    "find_moves",
    "genus",
    "invariant_report",
    "ith_n_writhes",
    "linking_and_lambda",
    "multiplex",
    "n_writhes",
    "parse_vgc",
    "psi",
    "random_walk",
    "realize",
    "rotate",
    "segments",
    "serialize_vgc",
    "smith_normal_form",
    "specified_path",
    "verify_theorems",
    "writhe",
]

__version__ = "0.1.0"
